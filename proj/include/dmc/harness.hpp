// Experiment harness: game records, named search configurations, the node
// count benchmark, self-play matches and move-table dumps.

#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dmc/chess.hpp"
#include "dmc/search.hpp"

namespace dmc {

// ---------------------------------------------------------------- records

/// One game: a start position and the moves played from it. Text form:
///
///   # comment
///   [White "dmc"]            optional tag lines
///   startpos                 or: fen <FEN>
///   e2e4 e7e5 g1f3 ...       long algebraic moves, any line breaks
class GameRecordError : public std::runtime_error {
 public:
  GameRecordError(const std::string& message, std::optional<std::size_t> ply = std::nullopt)
      : std::runtime_error(message), ply_(ply) {}
  std::optional<std::size_t> ply() const { return ply_; }

 private:
  std::optional<std::size_t> ply_;
};

struct GameRecord {
  Position initial = Position::initial();
  std::vector<Move> moves;
  std::map<std::string, std::string> tags;

  /// The position before each move, in order (size == moves.size()).
  std::vector<Position> positions() const;
  Position final_position() const;
};

GameRecord parse_game(std::string_view text);
GameRecord load_game(const std::filesystem::path& path);
std::string format_game(const GameRecord& record);

/// One opening per non-empty, non-comment line: long algebraic moves from the
/// initial position.
std::vector<std::vector<Move>> parse_openings(std::string_view text);
std::vector<std::vector<Move>> load_openings(const std::filesystem::path& path);

// ---------------------------------------------------------------- configs

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct NamedConfig {
  std::string name;
  SearchConfig cfg;
  bool depth_given = false;  // spec carried an explicit depth=
};

/// "chains=on,tables=on,beam=4,window=50", optionally starting with a preset:
///   standard, standard+tt, chains, chains+tables, chains+beamN
/// Keys: chains tables tt persist-chains aspiration (on/off), beam window
/// threshold range depth (integers), rank (eval/weight), chains-on
/// (window/cutoff), table-mode (replay/search), name.
NamedConfig parse_config_spec(std::string_view spec);
/// Several specs separated by ';'. Within a spec, each bare preset word after
/// the first also starts a new config: "standard,chains,chains+beam2,beam=1"
/// gives standard, chains and chains+beam2 with beam 1.
std::vector<NamedConfig> parse_config_list(std::string_view specs);
/// Canonical key=value form of a config (without name).
std::string describe_config(const SearchConfig& cfg);

// ---------------------------------------------------------------- bench

struct BenchRow {
  std::size_t position_index = 0;
  std::string config;
  SearchStats stats;
  Move best_move;
  Score value = 0;
};

struct BenchAggregate {
  std::string config;
  std::size_t positions = 0;
  double mean_negamax_nodes = 0;
  double mean_quiescence_nodes = 0;
  double mean_replay_nodes = 0;
  std::uint64_t chain_hits = 0;
  std::uint64_t chain_failures = 0;
  std::uint64_t table_paths_tried = 0;
  std::uint64_t table_paths_rejected = 0;
  double table_usage_fraction = 0;
  double times_less = 0;  // reference mean / this mean
  double seconds = 0;     // wall time, not part of the CSV
};

struct BenchReport {
  std::string reference;
  std::vector<BenchRow> rows;
  std::vector<BenchAggregate> aggregates;

  const BenchAggregate* aggregate(std::string_view config) const;
  std::string rows_csv() const;
  std::string aggregates_csv() const;
};

struct BenchOptions {
  int depth = 5;
  bool reset_per_position = false;
  std::string reference = "standard";
  std::size_t max_positions = 0;  // 0: all
  std::function<void(const BenchRow&)> on_row;
};

/// Searches every position of the record with each config in turn. Each
/// config starts with fresh chains and tables, which then carry across the
/// positions. The reference config (standard alpha-beta unless named
/// otherwise) is added in front when missing.
BenchReport bench(const GameRecord& record, std::vector<NamedConfig> configs, const BenchOptions& options);

/// Recomputes aggregates from rows; bench() uses this too.
std::vector<BenchAggregate> aggregate_rows(const std::vector<BenchRow>& rows, const std::string& reference);

// ---------------------------------------------------------------- match

struct GameResult {
  std::size_t index = 0;
  std::string white;
  std::string black;
  Position start = Position::initial();
  std::size_t opening_plies = 0;
  std::vector<Move> moves;  // opening moves included
  std::string result;       // "1-0", "0-1", "1/2-1/2"
  std::string termination;
  bool illegal_move = false;
};

struct MatchReport {
  std::string name_a;
  std::string name_b;
  double score_a = 0;
  double score_b = 0;
  int wins_a = 0;
  int wins_b = 0;
  int draws = 0;
  std::vector<GameResult> games;

  std::string table() const;
  std::string pgn() const;
};

struct MatchOptions {
  int games = 10;
  int time_per_game_ms = 60000;
  int moves_to_go = 30;  // per-move budget = remaining / moves_to_go
  int max_plies = 300;   // adjudicated as a draw beyond this
  int max_depth = 64;    // unless the config spec set depth=
  std::vector<std::vector<Move>> openings;
  std::function<void(const GameResult&)> on_game;
};

/// Game i: A has White when i is even. Openings are used in pairs so both
/// engines play each opening once with each colour.
MatchReport run_match(const NamedConfig& a, const NamedConfig& b, const MatchOptions& options);

std::string format_pgn(const GameResult& game, std::string_view event = "dmc match");

/// Deterministic self-play game from an opening, skipping moves that would
/// repeat an earlier position (the best non-repeating reply is chosen by a
/// depth-3 search instead).
GameRecord generate_selfplay(const NamedConfig& white, const NamedConfig& black, std::span<const Move> opening,
                             int plies);

// ---------------------------------------------------------------- dumps

/// Writes, for every colour and piece:
///   tables/<stem>.csv, importance/<stem>.csv, importance/<stem>.txt
/// plus best_squares.txt and paths.csv. Returns the files written.
std::vector<std::filesystem::path> dump_tables(const MoveTableSet& tables, const std::filesystem::path& dir);

/// "white_pawn", "black_queen", ...
std::string table_file_stem(Color color, PieceType piece);

}  // namespace dmc
