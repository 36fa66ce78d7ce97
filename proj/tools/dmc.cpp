// dmc: command-line front end for the engine and the experiment harness.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dmc/harness.hpp"
#include "dmc/uci.hpp"

using namespace dmc;

namespace {

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::vector<NamedConfig> collect_configs(const std::vector<std::string>& specs) {
  std::vector<NamedConfig> out;
  for (const std::string& s : specs) {
    for (NamedConfig& c : parse_config_list(s)) out.push_back(std::move(c));
  }
  return out;
}

const char* kDefaultOpenings =
    "e2e4 e7e5 g1f3 b8c6\n"
    "e2e4 c7c5 g1f3 d7d6\n"
    "d2d4 d7d5 c2c4 e7e6\n"
    "d2d4 g8f6 c2c4 g7g6\n"
    "c2c4 e7e5 b1c3 g8f6\n";

void print_aggregates(const BenchReport& report) {
  std::cout << std::left << std::setw(28) << "config" << std::right << std::setw(12) << "av nodes" << std::setw(12)
            << "times less" << std::setw(10) << "hits" << std::setw(10) << "fails" << std::setw(10) << "tried"
            << std::setw(10) << "rejected" << std::setw(10) << "usage" << std::setw(10) << "seconds" << "\n";
  for (const BenchAggregate& a : report.aggregates) {
    std::cout << std::left << std::setw(28) << a.config << std::right << std::fixed << std::setprecision(1)
              << std::setw(12) << a.mean_negamax_nodes << std::setprecision(2) << std::setw(12) << a.times_less
              << std::setw(10) << a.chain_hits << std::setw(10) << a.chain_failures << std::setw(10)
              << a.table_paths_tried << std::setw(10) << a.table_paths_rejected << std::setw(10)
              << a.table_usage_fraction << std::setprecision(1) << std::setw(10) << a.seconds << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dmc: alpha-beta chess search with dynamic move chains and move tables"};
  app.require_subcommand(1);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Node-count benchmark over every position of a recorded game");
  std::string bench_game = std::string(DMC_DATA_DIR) + "/bench_game.txt";
  int bench_depth = 5;
  std::vector<std::string> bench_specs;
  std::string bench_csv;
  std::string bench_agg_csv;
  bool bench_reset = false;
  std::size_t bench_max_positions = 0;
  std::string bench_reference = "standard";
  bool bench_quiet = false;
  bench_cmd->add_option("--game", bench_game, "Game record file")->capture_default_str();
  bench_cmd->add_option("--depth", bench_depth, "Search depth in plies")->capture_default_str()->check(CLI::Range(1, 64));
  bench_cmd->add_option("--configs", bench_specs,
                        "Config specs; ';' or a bare preset word starts the next one (repeatable)");
  bench_cmd->add_option("--csv-out", bench_csv, "Write per-position rows here");
  bench_cmd->add_option("--aggregates-out", bench_agg_csv, "Write per-config aggregates here");
  bench_cmd->add_flag("--reset-per-position", bench_reset, "Fresh chains and tables for every position");
  bench_cmd->add_option("--max-positions", bench_max_positions, "Only the first N positions (0: all)");
  bench_cmd->add_option("--reference", bench_reference, "Config name used for 'times less'")->capture_default_str();
  bench_cmd->add_flag("--quiet", bench_quiet, "No per-position progress on stderr");

  // match
  auto* match_cmd = app.add_subcommand("match", "Self-play match between two configs");
  std::string white_spec = "chains+beam4";
  std::string black_spec = "standard+tt";
  int games = 10;
  int tc_ms = 60000;
  int max_plies = 300;
  std::string openings_file;
  std::string pgn_out;
  match_cmd->add_option("--white", white_spec, "Config A (White in the first game)")->capture_default_str();
  match_cmd->add_option("--black", black_spec, "Config B")->capture_default_str();
  match_cmd->add_option("--games", games, "Number of games")->capture_default_str()->check(CLI::PositiveNumber);
  match_cmd->add_option("--tc", tc_ms, "Time per game and side, ms")->capture_default_str()->check(CLI::PositiveNumber);
  match_cmd->add_option("--max-plies", max_plies, "Adjudicate a draw after this many plies")->capture_default_str();
  match_cmd->add_option("--openings", openings_file, "One opening per line, long algebraic");
  match_cmd->add_option("--pgn-out", pgn_out, "Write all games here");

  // dump-tables
  auto* dump_cmd = app.add_subcommand("dump-tables", "Play through a game and write the learned move tables");
  std::string dump_out;
  std::string dump_game;
  std::string dump_spec = "chains+tables";
  int dump_depth = 4;
  std::size_t dump_plies = 0;
  dump_cmd->add_option("--out", dump_out, "Output directory")->required();
  dump_cmd->add_option("--game", dump_game, "Game record to search through (none: empty tables)");
  dump_cmd->add_option("--config", dump_spec, "Config spec")->capture_default_str();
  dump_cmd->add_option("--depth", dump_depth, "Search depth")->capture_default_str()->check(CLI::Range(1, 64));
  dump_cmd->add_option("--plies", dump_plies, "Stop after this many positions (0: whole game)");

  // selfplay
  auto* selfplay_cmd = app.add_subcommand("selfplay", "Generate a deterministic game record by self-play");
  std::string sp_white = "standard+tt,depth=4";
  std::string sp_black = "standard+tt,depth=4";
  std::string sp_opening = "e2e4 e7e5 g1f3 b8c6 f1b5 a7a6";
  int sp_plies = 100;
  std::string sp_out;
  selfplay_cmd->add_option("--white", sp_white)->capture_default_str();
  selfplay_cmd->add_option("--black", sp_black)->capture_default_str();
  selfplay_cmd->add_option("--opening", sp_opening, "Moves played before the engines take over")->capture_default_str();
  selfplay_cmd->add_option("--plies", sp_plies, "Game length")->capture_default_str()->check(CLI::PositiveNumber);
  selfplay_cmd->add_option("--out", sp_out, "Write the record here instead of stdout");

  // search
  auto* search_cmd = app.add_subcommand("search", "Search one position, optionally tracing chain and table events");
  std::string search_fen;
  std::string search_spec = "chains+tables";
  int search_depth = 5;
  bool search_trace = false;
  search_cmd->add_option("--fen", search_fen, "Position (default: initial)");
  search_cmd->add_option("--config", search_spec, "Config spec")->capture_default_str();
  search_cmd->add_option("--depth", search_depth)->capture_default_str()->check(CLI::Range(1, 64));
  search_cmd->add_flag("--trace", search_trace, "Print every search event");

  // uci
  auto* uci_cmd = app.add_subcommand("uci", "Minimal UCI-style protocol on stdin/stdout");
  std::string uci_spec = "chains+tables";
  uci_cmd->add_option("--config", uci_spec, "Initial config spec")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bench_cmd) {
      const GameRecord record = load_game(bench_game);
      auto configs = collect_configs(bench_specs.empty() ? std::vector<std::string>{"chains;chains+beam1;chains+beam2;chains+beam4"}
                                                         : bench_specs);
      BenchOptions opt;
      opt.depth = bench_depth;
      opt.reset_per_position = bench_reset;
      opt.reference = bench_reference;
      opt.max_positions = bench_max_positions;
      if (!bench_quiet) {
        opt.on_row = [](const BenchRow& r) {
          std::cerr << r.config << " #" << r.position_index << " nodes=" << r.stats.negamax_nodes
                    << " best=" << r.best_move.uci() << "\n";
        };
      }
      const BenchReport report = bench(record, std::move(configs), opt);
      print_aggregates(report);
      if (!bench_csv.empty()) write_text(bench_csv, report.rows_csv());
      if (!bench_agg_csv.empty()) write_text(bench_agg_csv, report.aggregates_csv());
      return 0;
    }

    if (*match_cmd) {
      MatchOptions opt;
      opt.games = games;
      opt.time_per_game_ms = tc_ms;
      opt.max_plies = max_plies;
      opt.openings = openings_file.empty() ? parse_openings(kDefaultOpenings) : load_openings(openings_file);
      opt.on_game = [](const GameResult& g) {
        std::cerr << "game " << g.index + 1 << ": " << g.white << " vs " << g.black << " " << g.result << " ("
                  << g.termination << ", " << g.moves.size() << " plies)\n";
      };
      const MatchReport report = run_match(parse_config_spec(white_spec), parse_config_spec(black_spec), opt);
      std::cout << report.table();
      if (!pgn_out.empty()) write_text(pgn_out, report.pgn());
      for (const GameResult& g : report.games) {
        if (g.illegal_move) return 3;
      }
      return 0;
    }

    if (*dump_cmd) {
      SearchConfig cfg = parse_config_spec(dump_spec).cfg;
      cfg.max_depth = dump_depth;
      Engine engine(cfg);
      if (!dump_game.empty()) {
        const GameRecord record = load_game(dump_game);
        auto positions = record.positions();
        if (dump_plies && positions.size() > dump_plies) positions.resize(dump_plies);
        for (const Position& p : positions) engine.think(p);
      }
      const auto files = dump_tables(engine.tables(), dump_out);
      std::cout << "wrote " << files.size() << " files to " << dump_out << " (" << engine.tables().path_count()
                << " stored paths)\n";
      return 0;
    }

    if (*selfplay_cmd) {
      const auto opening = parse_openings(sp_opening);
      const GameRecord record = generate_selfplay(parse_config_spec(sp_white), parse_config_spec(sp_black),
                                                  opening.empty() ? std::vector<Move>{} : opening.front(), sp_plies);
      const std::string text = format_game(record);
      if (sp_out.empty()) std::cout << text;
      else write_text(sp_out, text);
      return 0;
    }

    if (*search_cmd) {
      const Position p = search_fen.empty() ? Position::initial() : Position::from_fen(search_fen);
      SearchConfig cfg = parse_config_spec(search_spec).cfg;
      cfg.max_depth = search_depth;
      if (search_trace) cfg.on_event = [](const SearchEvent& e) { std::cout << format_event(e) << "\n"; };
      ChainStore chains;
      MoveTableSet tables;
      const SearchResult r = search_root(p, chains, tables, cfg);
      std::cout << "bestmove " << r.best_move.uci() << " value " << r.value << " depth " << r.stats.depth_reached
                << " negamax_nodes " << r.stats.negamax_nodes << " quiescence_nodes " << r.stats.quiescence_nodes
                << " chain_hits " << r.stats.chain_hits << " chain_failures " << r.stats.chain_failures
                << " table_paths_tried " << r.stats.table_paths_tried << " table_paths_rejected "
                << r.stats.table_paths_rejected << "\npv";
      for (const Move& m : r.principal_path) std::cout << ' ' << m.uci();
      std::cout << "\n";
      return 0;
    }

    if (*uci_cmd) {
      UciSession session(parse_config_spec(uci_spec).cfg);
      session.run(std::cin, std::cout, std::cerr);
      return 0;
    }
  } catch (const GameRecordError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
