// Negamax alpha-beta with iterative deepening and quiescence, extended with
// the two forward-pruning memories:
//
//   1. table paths (long-term) are fetched first, up to beam_x of them, and
//      each is replayed then settled by quiescence;
//   2. every remaining move is looked up in the chain store (short-term); a
//      stored chain is replayed instead of searching the move.
//
// A replayed value is trusted only while it stays within reliability_window
// of the stored evaluation. Otherwise the path is penalized (or the chain
// dropped) and the move is searched normally.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dmc/chess.hpp"
#include "dmc/evaluation.hpp"
#include "dmc/move_chains.hpp"
#include "dmc/move_tables.hpp"
#include "dmc/transposition.hpp"

namespace dmc {

inline constexpr Score kInfinity = 32000;
inline constexpr Score kMate = 30000;
inline constexpr int kQuiescencePlyCap = 8;

constexpr bool is_mate_score(Score s) { return s > kMate - 1000 || s < -kMate + 1000; }

enum class ChainsOn { Window, Cutoff };

/// How a table path is tried: replayed then settled by quiescence (default),
/// or, as an ablation, by a full search of its first move.
enum class TablePathMode { Replay, Search };

enum class EventType { Cutoff, ChainHit, ChainFail, ChainStore, PathTry, PathReject, Research };

std::string_view event_name(EventType type);

struct SearchEvent {
  EventType type = EventType::Cutoff;
  int ply = 0;
  int depth = 0;  // remaining depth at the node
  Move move;
  double stored = 0;      // stored evaluation (chain eval or path average)
  Score replayed = 0;     // value obtained by replay or search
  bool legal = true;      // false when a replay hit an illegal move
  bool cutoff = false;    // ChainStore: recorded at a beta cut-off
  std::vector<Move> line;
};

/// "PATH_REJECT ply=2 depth=3 move=WNg1-f3 stored=12.00 replayed=80 line=..."
std::string format_event(const SearchEvent& event);

struct SearchConfig {
  int max_depth = 5;
  int beam_x = 4;
  Score reliability_window = 50;
  bool use_chains = false;
  bool use_tables = false;
  bool use_transposition_table = false;
  int threshold = 0;
  int move_range = 10;
  RankBy rank = RankBy::Eval;
  ChainsOn chains_on = ChainsOn::Window;
  TablePathMode table_path_mode = TablePathMode::Replay;
  /// Keep chains from one root search to the next instead of clearing them.
  bool persist_chains = false;
  bool aspiration = true;
  Score aspiration_half_width = 25;
  std::optional<int> time_limit_ms;
  std::function<void(const SearchEvent&)> on_event;
};

struct SearchStats {
  std::uint64_t negamax_nodes = 0;
  std::uint64_t quiescence_nodes = 0;
  std::uint64_t replay_nodes = 0;
  std::uint64_t chain_hits = 0;
  std::uint64_t chain_failures = 0;
  std::uint64_t table_paths_tried = 0;
  std::uint64_t table_paths_rejected = 0;
  std::uint64_t table_nodes_queried = 0;
  std::uint64_t table_nodes_with_paths = 0;
  std::uint64_t tt_hits = 0;
  int depth_reached = 0;
  double elapsed_ms = 0;

  /// Share of table-querying nodes where at least one path was available.
  double table_usage_fraction() const {
    return table_nodes_queried ? static_cast<double>(table_nodes_with_paths) / table_nodes_queried : 0.0;
  }
  SearchStats& operator+=(const SearchStats& other);
};

struct SearchResult {
  Move best_move;
  Score value = 0;
  std::vector<Move> principal_path;
  SearchStats stats;
};

class NoLegalMovesError : public ChessError {
 public:
  explicit NoLegalMovesError(bool checkmate)
      : ChessError(checkmate ? "no legal moves: checkmate" : "no legal moves: stalemate"),
        checkmate_(checkmate) {}
  bool checkmate() const { return checkmate_; }

 private:
  bool checkmate_;
};

/// Iterative deepening from depth 1 to cfg.max_depth. Depth 1 always
/// completes; later iterations stop when the time limit runs out. `tt` is
/// used only when cfg.use_transposition_table is set; pass nullptr to let the
/// search allocate a private table.
SearchResult search_root(const Position& position, ChainStore& chains, MoveTableSet& tables,
                         const SearchConfig& cfg, TranspositionTable* tt = nullptr);

/// One fixed-depth negamax call with the given window, no iterative
/// deepening, no clearing or tidying of the stores.
Score negamax(Position& position, int depth, Score alpha, Score beta, ChainStore& chains,
              MoveTableSet& tables, const SearchConfig& cfg, SearchStats& stats,
              std::vector<Move>* principal_path = nullptr, TranspositionTable* tt = nullptr);

/// Stand-pat quiescence over quiescence_moves(), capped at kQuiescencePlyCap plies.
Score quiescence(Position& position, Score alpha, Score beta, SearchStats& stats);

/// Replays up to max_plies moves of `path`, then runs full-window quiescence.
/// Returns the value from the point of view of the side to move in
/// `position`, or nullopt if a move is illegal on the way. `ply` offsets mate
/// scores.
std::optional<Score> path_then_quiescence(Position& position, std::span<const Move> path, int max_plies,
                                          SearchStats& stats, int ply = 0);

/// A game-long engine: one config with its own chains, tables and TT.
class Engine {
 public:
  explicit Engine(SearchConfig cfg = {});

  SearchResult think(const Position& position);
  /// Forget everything learned (new game).
  void reset();

  SearchConfig& config() { return cfg_; }
  const SearchConfig& config() const { return cfg_; }
  ChainStore& chains() { return chains_; }
  MoveTableSet& tables() { return tables_; }
  const MoveTableSet& tables() const { return tables_; }

 private:
  SearchConfig cfg_;
  ChainStore chains_;
  MoveTableSet tables_;
  TranspositionTable tt_;
};

}  // namespace dmc
