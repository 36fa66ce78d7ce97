#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "dmc/harness.hpp"

using namespace dmc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dmc_harness_test_" + name);
  fs::remove_all(dir);
  return dir;
}

const char* kShortGame =
    "# a short game\n"
    "[White \"a\"]\n"
    "[Black \"b\"]\n"
    "startpos\n"
    "e2e4 e7e5 g1f3\n"
    "b8c6 f1b5 a7a6\n";

}  // namespace

TEST(GameRecord, ParsesTagsCommentsAndMoves) {
  const GameRecord g = parse_game(kShortGame);
  EXPECT_EQ(g.tags.at("White"), "a");
  EXPECT_EQ(g.tags.at("Black"), "b");
  ASSERT_EQ(g.moves.size(), 6u);
  EXPECT_EQ(g.moves[4].uci(), "f1b5");
  const auto positions = g.positions();
  ASSERT_EQ(positions.size(), 6u);
  EXPECT_EQ(positions[0], Position::initial());
  EXPECT_EQ(positions[5].side_to_move(), Color::Black);
  EXPECT_EQ(g.final_position().side_to_move(), Color::White);
}

TEST(GameRecord, FormatRoundTrips) {
  const GameRecord g = parse_game(kShortGame);
  const GameRecord again = parse_game(format_game(g));
  EXPECT_EQ(again.moves, g.moves);
  EXPECT_EQ(again.tags, g.tags);
  EXPECT_EQ(again.initial, g.initial);

  GameRecord from_fen;
  from_fen.initial = Position::from_fen("6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1");
  from_fen.moves = {parse_uci_move(from_fen.initial, "a1a8")};
  const GameRecord back = parse_game(format_game(from_fen));
  EXPECT_EQ(back.initial, from_fen.initial);
  EXPECT_EQ(back.moves, from_fen.moves);
}

TEST(GameRecord, IllegalMoveReportsPly) {
  try {
    parse_game("startpos\ne2e4 e7e5 e4e5 d7d5\n");
    FAIL() << "expected GameRecordError";
  } catch (const GameRecordError& e) {
    ASSERT_TRUE(e.ply().has_value());
    EXPECT_EQ(*e.ply(), 2u);
    EXPECT_NE(std::string(e.what()).find("e4e5"), std::string::npos);
  }
}

TEST(GameRecord, RejectsMalformedInput) {
  EXPECT_THROW(parse_game(""), GameRecordError);
  EXPECT_THROW(parse_game("# only a comment\n"), GameRecordError);
  EXPECT_THROW(parse_game("e2e4 e7e5\n"), GameRecordError);
  EXPECT_THROW(parse_game("fen not a fen\n"), GameRecordError);
  EXPECT_THROW(parse_game("[White \"x\"\nstartpos\n"), GameRecordError);
  EXPECT_THROW(parse_game("startpos\ne2e5\n"), GameRecordError);
  EXPECT_THROW(load_game("/nonexistent/game.txt"), std::runtime_error);
}

TEST(GameRecord, Openings) {
  const auto openings = parse_openings("# two lines\ne2e4 e7e5\n\nd2d4 d7d5 c2c4\n");
  ASSERT_EQ(openings.size(), 2u);
  EXPECT_EQ(openings[0].size(), 2u);
  EXPECT_EQ(openings[1][2].uci(), "c2c4");
  EXPECT_THROW(parse_openings("e2e4 e2e4\n"), GameRecordError);
}

TEST(Config, Presets) {
  const NamedConfig s = parse_config_spec("standard");
  EXPECT_FALSE(s.cfg.use_chains);
  EXPECT_FALSE(s.cfg.use_tables);
  EXPECT_FALSE(s.cfg.use_transposition_table);
  EXPECT_EQ(s.name, "standard");

  EXPECT_TRUE(parse_config_spec("standard+tt").cfg.use_transposition_table);

  const NamedConfig c = parse_config_spec("chains");
  EXPECT_TRUE(c.cfg.use_chains);
  EXPECT_FALSE(c.cfg.use_tables);

  const NamedConfig ct = parse_config_spec("chains+tables");
  EXPECT_TRUE(ct.cfg.use_chains);
  EXPECT_TRUE(ct.cfg.use_tables);

  const NamedConfig b2 = parse_config_spec("chains+beam2");
  EXPECT_TRUE(b2.cfg.use_chains);
  EXPECT_TRUE(b2.cfg.use_tables);
  EXPECT_EQ(b2.cfg.beam_x, 2);
}

TEST(Config, KeysOverridePreset) {
  const NamedConfig n = parse_config_spec(
      "chains+tables, beam=3, window=80, threshold=-2, range=6, depth=4, rank=weight, chains-on=cutoff, "
      "table-mode=search, tt=on, persist-chains=on, aspiration=off, name=mine");
  EXPECT_EQ(n.name, "mine");
  EXPECT_EQ(n.cfg.beam_x, 3);
  EXPECT_EQ(n.cfg.reliability_window, 80);
  EXPECT_EQ(n.cfg.threshold, -2);
  EXPECT_EQ(n.cfg.move_range, 6);
  EXPECT_EQ(n.cfg.max_depth, 4);
  EXPECT_TRUE(n.depth_given);
  EXPECT_EQ(n.cfg.rank, RankBy::Weight);
  EXPECT_EQ(n.cfg.chains_on, ChainsOn::Cutoff);
  EXPECT_EQ(n.cfg.table_path_mode, TablePathMode::Search);
  EXPECT_TRUE(n.cfg.use_transposition_table);
  EXPECT_TRUE(n.cfg.persist_chains);
  EXPECT_FALSE(n.cfg.aspiration);
  EXPECT_FALSE(parse_config_spec("chains").depth_given);

  const NamedConfig plain = parse_config_spec("chains=on,tables=on");
  EXPECT_TRUE(plain.cfg.use_chains);
  EXPECT_TRUE(plain.cfg.use_tables);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config_spec(""), ConfigError);
  EXPECT_THROW(parse_config_spec("turbo"), ConfigError);
  EXPECT_THROW(parse_config_spec("chains,standard"), ConfigError);
  EXPECT_THROW(parse_config_spec("beam=-1"), ConfigError);
  EXPECT_THROW(parse_config_spec("beam=x"), ConfigError);
  EXPECT_THROW(parse_config_spec("chains=maybe"), ConfigError);
  EXPECT_THROW(parse_config_spec("colour=blue"), ConfigError);
  EXPECT_THROW(parse_config_spec("depth=0"), ConfigError);
  EXPECT_THROW(parse_config_spec("standard,,beam=2"), ConfigError);
  EXPECT_THROW(parse_config_list(" ; "), ConfigError);
}

TEST(Config, ListAndDescribe) {
  const auto list = parse_config_list("standard; chains ;chains+beam4");
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[1].name, "chains");
  const std::string d = describe_config(list[2].cfg);
  EXPECT_NE(d.find("chains=on"), std::string::npos);
  EXPECT_NE(d.find("beam=4"), std::string::npos);
  const auto commas = parse_config_list("standard,chains,chains+beam2,beam=1,window=70;chains=on,tables=on");
  ASSERT_EQ(commas.size(), 4u);
  EXPECT_EQ(commas[2].name, "chains+beam2,beam=1,window=70");
  EXPECT_EQ(commas[2].cfg.beam_x, 1);
  EXPECT_EQ(commas[2].cfg.reliability_window, 70);
  EXPECT_TRUE(commas[3].cfg.use_tables);
  EXPECT_THROW(parse_config_list("standard,turbo"), ConfigError);
  // The description is itself a valid spec describing the same config.
  EXPECT_EQ(describe_config(parse_config_spec(d).cfg), d);
}

TEST(Bench, AddsReferenceAndIsDeterministic) {
  const GameRecord g = parse_game(kShortGame);
  BenchOptions opt;
  opt.depth = 3;
  const auto configs = parse_config_list("chains;chains+beam2");
  const BenchReport a = bench(g, configs, opt);
  const BenchReport b = bench(g, configs, opt);
  EXPECT_EQ(a.rows_csv(), b.rows_csv());
  EXPECT_EQ(a.aggregates_csv(), b.aggregates_csv());
  ASSERT_EQ(a.aggregates.size(), 3u);
  EXPECT_EQ(a.aggregates[0].config, "standard");
  EXPECT_DOUBLE_EQ(a.aggregates[0].times_less, 1.0);
  EXPECT_EQ(a.rows.size(), 18u);
  EXPECT_EQ(count_lines(a.rows_csv()), 19u);
  EXPECT_EQ(count_lines(a.aggregates_csv()), 4u);
  EXPECT_EQ(a.rows_csv().substr(0, a.rows_csv().find('\n')),
            "position_index,config,negamax_nodes,quiescence_nodes,replay_nodes,chain_hits,chain_failures,"
            "table_paths_tried,table_paths_rejected,table_usage_fraction,depth_reached,best_move,value");
  EXPECT_EQ(a.aggregates_csv().substr(0, a.aggregates_csv().find('\n')),
            "config,positions,mean_negamax_nodes,mean_quiescence_nodes,mean_replay_nodes,chain_hits,"
            "chain_failures,table_paths_tried,table_paths_rejected,table_usage_fraction,times_less");
  for (const BenchRow& r : a.rows) {
    const Position p = g.positions()[r.position_index];
    EXPECT_TRUE(p.is_legal(r.best_move)) << r.config << " " << r.position_index;
    EXPECT_EQ(r.stats.depth_reached, 3);
  }
}

TEST(Bench, SinglePositionAggregateEqualsRow) {
  const GameRecord g = parse_game(kShortGame);
  BenchOptions opt;
  opt.depth = 3;
  opt.max_positions = 1;
  const BenchReport r = bench(g, parse_config_list("chains+tables"), opt);
  ASSERT_EQ(r.rows.size(), 2u);
  for (const BenchRow& row : r.rows) {
    const BenchAggregate* agg = r.aggregate(row.config);
    ASSERT_NE(agg, nullptr);
    EXPECT_EQ(agg->positions, 1u);
    EXPECT_DOUBLE_EQ(agg->mean_negamax_nodes, static_cast<double>(row.stats.negamax_nodes));
    EXPECT_DOUBLE_EQ(agg->mean_quiescence_nodes, static_cast<double>(row.stats.quiescence_nodes));
    EXPECT_EQ(agg->chain_hits, row.stats.chain_hits);
    EXPECT_EQ(agg->table_paths_tried, row.stats.table_paths_tried);
  }
  EXPECT_EQ(r.aggregate("nonexistent"), nullptr);
}

TEST(Bench, AggregatesRecomputeFromRows) {
  const GameRecord g = parse_game(kShortGame);
  BenchOptions opt;
  opt.depth = 2;
  std::size_t streamed = 0;
  opt.on_row = [&](const BenchRow&) { ++streamed; };
  const BenchReport r = bench(g, parse_config_list("standard;chains"), opt);
  EXPECT_EQ(streamed, r.rows.size());
  const auto again = aggregate_rows(r.rows, r.reference);
  ASSERT_EQ(again.size(), r.aggregates.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    EXPECT_EQ(again[i].config, r.aggregates[i].config);
    EXPECT_DOUBLE_EQ(again[i].mean_negamax_nodes, r.aggregates[i].mean_negamax_nodes);
    EXPECT_DOUBLE_EQ(again[i].times_less, r.aggregates[i].times_less);
  }
  double sum = 0;
  for (const BenchRow& row : r.rows)
    if (row.config == "chains") sum += static_cast<double>(row.stats.negamax_nodes);
  EXPECT_DOUBLE_EQ(r.aggregate("chains")->mean_negamax_nodes, sum / 6.0);
  EXPECT_DOUBLE_EQ(r.aggregate("chains")->times_less,
                   r.aggregate("standard")->mean_negamax_nodes / r.aggregate("chains")->mean_negamax_nodes);
}

TEST(Bench, ResetPerPositionMatchesFreshSearch) {
  const GameRecord g = parse_game(kShortGame);
  BenchOptions opt;
  opt.depth = 3;
  opt.reset_per_position = true;
  const BenchReport r = bench(g, parse_config_list("standard;chains+tables"), opt);
  const auto positions = g.positions();
  for (const BenchRow& row : r.rows) {
    if (row.config != "chains+tables") continue;
    ChainStore chains;
    MoveTableSet tables;
    SearchConfig cfg = parse_config_spec("chains+tables").cfg;
    cfg.max_depth = 3;
    const SearchResult fresh = search_root(positions[row.position_index], chains, tables, cfg);
    EXPECT_EQ(fresh.stats.negamax_nodes, row.stats.negamax_nodes);
    EXPECT_EQ(fresh.value, row.value);
  }
}

TEST(Match, SelfMatchScoresSumToGames) {
  MatchOptions opt;
  opt.games = 2;
  opt.time_per_game_ms = 60000;
  opt.max_plies = 24;
  opt.openings = parse_openings("e2e4 e7e5\n");
  const NamedConfig a = parse_config_spec("standard,depth=1");
  std::size_t seen = 0;
  opt.on_game = [&](const GameResult&) { ++seen; };
  const MatchReport m = run_match(a, a, opt);
  EXPECT_EQ(seen, 2u);
  ASSERT_EQ(m.games.size(), 2u);
  EXPECT_DOUBLE_EQ(m.score_a + m.score_b, 2.0);
  EXPECT_EQ(m.wins_a + m.wins_b + m.draws, 2);
  EXPECT_NE(m.name_a, m.name_b);
  EXPECT_EQ(m.games[0].white, m.name_a);
  EXPECT_EQ(m.games[1].white, m.name_b);
  for (const GameResult& g : m.games) {
    EXPECT_FALSE(g.illegal_move);
    EXPECT_EQ(g.opening_plies, 2u);
    EXPECT_LE(g.moves.size(), 24u);
    Position p = g.start;
    for (const Move& mv : g.moves) {
      ASSERT_TRUE(p.is_legal(mv)) << mv.uci();
      p.make(mv);
    }
    const std::string pgn = format_pgn(g);
    EXPECT_NE(pgn.find("[Result \"" + g.result + "\"]"), std::string::npos);
  }
  EXPECT_NE(m.table().find(m.name_a), std::string::npos);
  EXPECT_FALSE(m.pgn().empty());
}

TEST(Match, RejectsBadOptions) {
  MatchOptions opt;
  opt.games = 0;
  opt.openings = parse_openings("e2e4\n");
  const NamedConfig a = parse_config_spec("standard");
  EXPECT_THROW(run_match(a, a, opt), ConfigError);
  opt.games = 2;
  opt.openings.clear();
  EXPECT_THROW(run_match(a, a, opt), ConfigError);
}

TEST(Selfplay, AvoidsRepetitionAndIsDeterministic) {
  const NamedConfig e = parse_config_spec("standard,depth=2");
  const auto opening = parse_openings("e2e4 e7e5\n").front();
  const GameRecord a = generate_selfplay(e, e, opening, 30);
  const GameRecord b = generate_selfplay(e, e, opening, 30);
  EXPECT_EQ(a.moves, b.moves);
  EXPECT_LE(a.moves.size(), 30u);
  EXPECT_GE(a.moves.size(), 20u);
  std::set<std::uint64_t> hashes;
  Position p = a.initial;
  hashes.insert(p.hash());
  for (const Move& m : a.moves) {
    p.make(m);
    EXPECT_TRUE(hashes.insert(p.hash()).second) << "repeated after " << m.uci();
  }
  EXPECT_EQ(parse_game(format_game(a)).moves, a.moves);
}

TEST(Dump, FreshTablesAreEmpty) {
  const fs::path dir = fresh_dir("fresh");
  const auto files = dump_tables(MoveTableSet(), dir);
  EXPECT_EQ(files.size(), 12u * 3u + 2u);
  const std::string pawn = slurp(dir / "tables" / "white_pawn.csv");
  EXPECT_EQ(count_lines(pawn), 65u);
  EXPECT_EQ(pawn.find(",1"), std::string::npos);
  EXPECT_EQ(count_lines(slurp(dir / "importance" / "black_queen.csv")), 65u);
  const std::string best = slurp(dir / "best_squares.txt");
  EXPECT_EQ(count_lines(best), 13u);
  EXPECT_NE(best.find("white_king,\n"), std::string::npos);
  EXPECT_EQ(slurp(dir / "paths.csv"), "moves,weight,avg_eval,last_update_move\n");
  fs::remove_all(dir);
}

TEST(Dump, LearnedTablesShowUp) {
  const GameRecord g = parse_game(kShortGame);
  Engine engine(parse_config_spec("chains+tables,depth=3").cfg);
  for (const Position& p : g.positions()) engine.think(p);
  ASSERT_GT(engine.tables().path_count(), 0u);
  const fs::path dir = fresh_dir("learned");
  dump_tables(engine.tables(), dir);
  std::size_t nonempty = 0;
  for (Color c : {Color::White, Color::Black}) {
    for (int t = 0; t < kPieceTypeCount; ++t) {
      const auto piece = static_cast<PieceType>(t);
      if (!engine.tables().best_squares(c, piece).empty()) ++nonempty;
      const ImportanceMap map = engine.tables().importance_map(c, piece);
      const std::string text = slurp(dir / "importance" / (table_file_stem(c, piece) + ".txt"));
      EXPECT_EQ(text, map.to_text());
    }
  }
  EXPECT_GT(nonempty, 0u);
  EXPECT_EQ(count_lines(slurp(dir / "paths.csv")), engine.tables().path_count() + 1);
  fs::remove_all(dir);
}

TEST(Dump, FileStems) {
  EXPECT_EQ(table_file_stem(Color::White, PieceType::Pawn), "white_pawn");
  EXPECT_EQ(table_file_stem(Color::Black, PieceType::Queen), "black_queen");
}
