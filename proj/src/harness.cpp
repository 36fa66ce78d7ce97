#include "dmc/harness.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace dmc {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::vector<Move> parse_moves(const Position& start, const std::vector<std::string>& words, std::size_t first_ply) {
  std::vector<Move> moves;
  Position p = start;
  for (std::size_t i = 0; i < words.size(); ++i) {
    Move m;
    try {
      m = parse_uci_move(p, words[i]);
    } catch (const ChessError& e) {
      throw GameRecordError("illegal move '" + words[i] + "' at ply " + std::to_string(first_ply + i) + ": " +
                                e.what(),
                            first_ply + i);
    }
    moves.push_back(m);
    p.make(m);
  }
  return moves;
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------- records

std::vector<Position> GameRecord::positions() const {
  std::vector<Position> out;
  out.reserve(moves.size());
  Position p = initial;
  for (const Move& m : moves) {
    out.push_back(p);
    p.make(m);
  }
  return out;
}

Position GameRecord::final_position() const {
  Position p = initial;
  for (const Move& m : moves) p.make(m);
  return p;
}

GameRecord parse_game(std::string_view text) {
  GameRecord record;
  bool have_start = false;
  std::vector<std::string> words;
  for (std::string_view raw : split(text, '\n')) {
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      const auto space = line.find(' ');
      const auto q1 = line.find('"');
      const auto q2 = line.rfind('"');
      if (space == std::string_view::npos || q1 == q2 || line.back() != ']') {
        throw GameRecordError("malformed tag line: " + std::string(line));
      }
      record.tags[std::string(line.substr(1, space - 1))] = std::string(line.substr(q1 + 1, q2 - q1 - 1));
      continue;
    }
    if (!have_start) {
      have_start = true;
      if (line == "startpos") continue;
      if (line.substr(0, 4) == "fen ") {
        try {
          record.initial = Position::from_fen(trim(line.substr(4)));
        } catch (const FenError& e) {
          throw GameRecordError(std::string("bad start position: ") + e.what());
        }
        continue;
      }
      throw GameRecordError("expected 'startpos' or 'fen <FEN>' before the moves");
    }
    for (auto& w : tokens(line)) words.push_back(std::move(w));
  }
  if (!have_start) throw GameRecordError("empty game record");
  record.moves = parse_moves(record.initial, words, 0);
  return record;
}

GameRecord load_game(const std::filesystem::path& path) { return parse_game(read_file(path)); }

std::string format_game(const GameRecord& record) {
  std::string out;
  for (const auto& [key, value] : record.tags) out += "[" + key + " \"" + value + "\"]\n";
  out += record.initial == Position::initial() ? std::string("startpos\n") : "fen " + record.initial.fen() + "\n";
  for (std::size_t i = 0; i < record.moves.size(); ++i) {
    out += record.moves[i].uci();
    out += (i + 1) % 16 == 0 || i + 1 == record.moves.size() ? '\n' : ' ';
  }
  return out;
}

std::vector<std::vector<Move>> parse_openings(std::string_view text) {
  std::vector<std::vector<Move>> out;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    try {
      out.push_back(parse_moves(Position::initial(), tokens(line), 0));
    } catch (const GameRecordError& e) {
      throw GameRecordError("openings line " + std::to_string(line_no) + ": " + e.what(), e.ply());
    }
  }
  return out;
}

std::vector<std::vector<Move>> load_openings(const std::filesystem::path& path) {
  return parse_openings(read_file(path));
}

// ---------------------------------------------------------------- configs

namespace {

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("expected on/off for '" + std::string(key) + "', got '" + std::string(v) + "'");
}

int parse_int(std::string_view key, std::string_view v, int min_value) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("expected an integer for '" + std::string(key) + "', got '" + std::string(v) + "'");
  }
  if (out < min_value) {
    throw ConfigError("'" + std::string(key) + "' must be at least " + std::to_string(min_value));
  }
  return out;
}

bool apply_preset(std::string_view preset, SearchConfig& cfg) {
  if (preset == "standard") return true;
  if (preset == "standard+tt") {
    cfg.use_transposition_table = true;
    return true;
  }
  if (preset == "chains") {
    cfg.use_chains = true;
    return true;
  }
  if (preset == "chains+tables") {
    cfg.use_chains = true;
    cfg.use_tables = true;
    return true;
  }
  if (preset.substr(0, 11) == "chains+beam" && preset.size() > 11) {
    cfg.use_chains = true;
    cfg.use_tables = true;
    cfg.beam_x = parse_int("beam", preset.substr(11), 0);
    return true;
  }
  return false;
}

}  // namespace

NamedConfig parse_config_spec(std::string_view spec) {
  NamedConfig out;
  spec = trim(spec);
  if (spec.empty()) throw ConfigError("empty config spec");
  out.name = std::string(spec);
  bool first = true;
  for (std::string_view item : split(spec, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty item in config spec '" + std::string(spec) + "'");
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      if (!first || !apply_preset(item, out.cfg)) throw ConfigError("unknown preset '" + std::string(item) + "'");
      first = false;
      continue;
    }
    first = false;
    const std::string_view key = trim(item.substr(0, eq));
    const std::string_view value = trim(item.substr(eq + 1));
    SearchConfig& c = out.cfg;
    if (key == "chains") {
      c.use_chains = parse_bool(key, value);
    } else if (key == "tables") {
      c.use_tables = parse_bool(key, value);
    } else if (key == "tt") {
      c.use_transposition_table = parse_bool(key, value);
    } else if (key == "persist-chains") {
      c.persist_chains = parse_bool(key, value);
    } else if (key == "aspiration") {
      c.aspiration = parse_bool(key, value);
    } else if (key == "beam") {
      c.beam_x = parse_int(key, value, 0);
    } else if (key == "window") {
      c.reliability_window = parse_int(key, value, 0);
    } else if (key == "threshold") {
      c.threshold = parse_int(key, value, -1000000);
    } else if (key == "range") {
      c.move_range = parse_int(key, value, 0);
    } else if (key == "depth") {
      c.max_depth = parse_int(key, value, 1);
      out.depth_given = true;
    } else if (key == "rank") {
      if (value == "eval") c.rank = RankBy::Eval;
      else if (value == "weight") c.rank = RankBy::Weight;
      else throw ConfigError("rank must be eval or weight");
    } else if (key == "chains-on") {
      if (value == "window") c.chains_on = ChainsOn::Window;
      else if (value == "cutoff") c.chains_on = ChainsOn::Cutoff;
      else throw ConfigError("chains-on must be window or cutoff");
    } else if (key == "table-mode") {
      if (value == "replay") c.table_path_mode = TablePathMode::Replay;
      else if (value == "search") c.table_path_mode = TablePathMode::Search;
      else throw ConfigError("table-mode must be replay or search");
    } else if (key == "name") {
      if (value.empty()) throw ConfigError("empty name");
      out.name = std::string(value);
    } else {
      throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
  }
  return out;
}

std::vector<NamedConfig> parse_config_list(std::string_view specs) {
  std::vector<NamedConfig> out;
  for (std::string_view s : split(specs, ';')) {
    if (trim(s).empty()) continue;
    // A bare preset word starts a new config; key=value items attach to the
    // config before them, so "standard,chains,chains+beam4" is three configs.
    std::string current;
    for (std::string_view item : split(s, ',')) {
      const bool starts_new = !current.empty() && item.find('=') == std::string_view::npos;
      if (starts_new) {
        out.push_back(parse_config_spec(current));
        current.clear();
      }
      if (!current.empty()) current += ',';
      current += trim(item);
    }
    out.push_back(parse_config_spec(current));
  }
  if (out.empty()) throw ConfigError("no configs given");
  return out;
}

std::string describe_config(const SearchConfig& c) {
  auto onoff = [](bool b) { return b ? "on" : "off"; };
  std::string out = std::string("chains=") + onoff(c.use_chains) + ",tables=" + onoff(c.use_tables) +
                    ",tt=" + onoff(c.use_transposition_table) + ",beam=" + std::to_string(c.beam_x) +
                    ",window=" + std::to_string(c.reliability_window) + ",threshold=" + std::to_string(c.threshold) +
                    ",range=" + std::to_string(c.move_range) + ",rank=" + (c.rank == RankBy::Eval ? "eval" : "weight") +
                    ",chains-on=" + (c.chains_on == ChainsOn::Window ? "window" : "cutoff") +
                    ",table-mode=" + (c.table_path_mode == TablePathMode::Replay ? "replay" : "search") +
                    ",persist-chains=" + onoff(c.persist_chains) + ",aspiration=" + onoff(c.aspiration) +
                    ",depth=" + std::to_string(c.max_depth);
  return out;
}

// ---------------------------------------------------------------- bench

const BenchAggregate* BenchReport::aggregate(std::string_view config) const {
  for (const auto& a : aggregates) {
    if (a.config == config) return &a;
  }
  return nullptr;
}

std::string BenchReport::rows_csv() const {
  std::string out =
      "position_index,config,negamax_nodes,quiescence_nodes,replay_nodes,chain_hits,chain_failures,"
      "table_paths_tried,table_paths_rejected,table_usage_fraction,depth_reached,best_move,value\n";
  for (const BenchRow& r : rows) {
    const SearchStats& s = r.stats;
    out += std::to_string(r.position_index) + ',' + r.config + ',' + std::to_string(s.negamax_nodes) + ',' +
           std::to_string(s.quiescence_nodes) + ',' + std::to_string(s.replay_nodes) + ',' +
           std::to_string(s.chain_hits) + ',' + std::to_string(s.chain_failures) + ',' +
           std::to_string(s.table_paths_tried) + ',' + std::to_string(s.table_paths_rejected) + ',' +
           fmt("%.4f", s.table_usage_fraction()) + ',' + std::to_string(s.depth_reached) + ',' +
           r.best_move.uci() + ',' + std::to_string(r.value) + '\n';
  }
  return out;
}

std::string BenchReport::aggregates_csv() const {
  std::string out =
      "config,positions,mean_negamax_nodes,mean_quiescence_nodes,mean_replay_nodes,chain_hits,chain_failures,"
      "table_paths_tried,table_paths_rejected,table_usage_fraction,times_less\n";
  for (const BenchAggregate& a : aggregates) {
    out += a.config + ',' + std::to_string(a.positions) + ',' + fmt("%.2f", a.mean_negamax_nodes) + ',' +
           fmt("%.2f", a.mean_quiescence_nodes) + ',' + fmt("%.2f", a.mean_replay_nodes) + ',' +
           std::to_string(a.chain_hits) + ',' + std::to_string(a.chain_failures) + ',' +
           std::to_string(a.table_paths_tried) + ',' + std::to_string(a.table_paths_rejected) + ',' +
           fmt("%.4f", a.table_usage_fraction) + ',' + fmt("%.3f", a.times_less) + '\n';
  }
  return out;
}

std::vector<BenchAggregate> aggregate_rows(const std::vector<BenchRow>& rows, const std::string& reference) {
  std::vector<BenchAggregate> out;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::uint64_t> negamax;
  std::vector<std::uint64_t> quiescence;
  std::vector<std::uint64_t> replay;
  std::vector<std::uint64_t> queried;
  std::vector<std::uint64_t> with_paths;
  for (const BenchRow& r : rows) {
    auto [it, added] = index.try_emplace(r.config, out.size());
    if (added) {
      out.emplace_back();
      out.back().config = r.config;
      negamax.push_back(0);
      quiescence.push_back(0);
      replay.push_back(0);
      queried.push_back(0);
      with_paths.push_back(0);
    }
    const std::size_t i = it->second;
    BenchAggregate& a = out[i];
    ++a.positions;
    negamax[i] += r.stats.negamax_nodes;
    quiescence[i] += r.stats.quiescence_nodes;
    replay[i] += r.stats.replay_nodes;
    queried[i] += r.stats.table_nodes_queried;
    with_paths[i] += r.stats.table_nodes_with_paths;
    a.chain_hits += r.stats.chain_hits;
    a.chain_failures += r.stats.chain_failures;
    a.table_paths_tried += r.stats.table_paths_tried;
    a.table_paths_rejected += r.stats.table_paths_rejected;
    a.seconds += r.stats.elapsed_ms / 1000.0;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    BenchAggregate& a = out[i];
    const double n = static_cast<double>(a.positions);
    a.mean_negamax_nodes = static_cast<double>(negamax[i]) / n;
    a.mean_quiescence_nodes = static_cast<double>(quiescence[i]) / n;
    a.mean_replay_nodes = static_cast<double>(replay[i]) / n;
    a.table_usage_fraction = queried[i] ? static_cast<double>(with_paths[i]) / static_cast<double>(queried[i]) : 0.0;
  }
  const auto ref = index.find(reference);
  for (BenchAggregate& a : out) {
    a.times_less = ref != index.end() && a.mean_negamax_nodes > 0
                       ? out[ref->second].mean_negamax_nodes / a.mean_negamax_nodes
                       : 0.0;
  }
  return out;
}

BenchReport bench(const GameRecord& record, std::vector<NamedConfig> configs, const BenchOptions& options) {
  if (options.depth < 1) throw ConfigError("bench depth must be at least 1");
  const bool has_reference = std::any_of(configs.begin(), configs.end(),
                                         [&](const NamedConfig& c) { return c.name == options.reference; });
  if (!has_reference) {
    NamedConfig ref = parse_config_spec("standard");
    ref.name = options.reference;
    configs.insert(configs.begin(), ref);
  }
  std::vector<Position> positions = record.positions();
  if (options.max_positions && positions.size() > options.max_positions) positions.resize(options.max_positions);

  BenchReport report;
  report.reference = options.reference;
  std::map<std::string, double> seconds;
  for (const NamedConfig& nc : configs) {
    const auto start = std::chrono::steady_clock::now();
    SearchConfig cfg = nc.cfg;
    cfg.max_depth = options.depth;
    cfg.time_limit_ms.reset();
    ChainStore chains;
    MoveTableSet tables;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (options.reset_per_position) {
        chains.clear();
        tables = MoveTableSet();
      }
      const SearchResult r = search_root(positions[i], chains, tables, cfg);
      BenchRow row{i, nc.name, r.stats, r.best_move, r.value};
      if (options.on_row) options.on_row(row);
      report.rows.push_back(std::move(row));
    }
    seconds[nc.name] += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  report.aggregates = aggregate_rows(report.rows, report.reference);
  for (BenchAggregate& a : report.aggregates) a.seconds = seconds[a.config];
  return report;
}

// ---------------------------------------------------------------- match

namespace {

bool insufficient_material(const Position& p) {
  int minors = 0;
  for (int sq = 0; sq < 64; ++sq) {
    const auto piece = p.piece_at(Square(sq));
    if (!piece || piece->type == PieceType::King) continue;
    if (piece->type != PieceType::Knight && piece->type != PieceType::Bishop) return false;
    ++minors;
  }
  return minors <= 1;
}

struct Outcome {
  std::string result;
  std::string termination;
};

std::optional<Outcome> game_over(const Position& p, const std::unordered_map<std::uint64_t, int>& seen) {
  if (p.legal_moves().empty()) {
    if (!p.in_check()) return Outcome{"1/2-1/2", "stalemate"};
    return Outcome{p.side_to_move() == Color::White ? "0-1" : "1-0", "checkmate"};
  }
  if (const auto it = seen.find(p.hash()); it != seen.end() && it->second >= 3) {
    return Outcome{"1/2-1/2", "threefold repetition"};
  }
  if (p.halfmove_clock() >= 100) return Outcome{"1/2-1/2", "fifty-move rule"};
  if (insufficient_material(p)) return Outcome{"1/2-1/2", "insufficient material"};
  return std::nullopt;
}

}  // namespace

std::string format_pgn(const GameResult& g, std::string_view event) {
  std::string out;
  out += "[Event \"" + std::string(event) + "\"]\n";
  out += "[Round \"" + std::to_string(g.index + 1) + "\"]\n";
  out += "[White \"" + g.white + "\"]\n";
  out += "[Black \"" + g.black + "\"]\n";
  out += "[Result \"" + g.result + "\"]\n";
  out += "[Termination \"" + g.termination + "\"]\n";
  out += "[OpeningPlies \"" + std::to_string(g.opening_plies) + "\"]\n";
  if (!(g.start == Position::initial())) out += "[FEN \"" + g.start.fen() + "\"]\n";
  out += '\n';
  std::string line;
  Position p = g.start;
  for (const Move& m : g.moves) {
    std::string token;
    if (p.side_to_move() == Color::White) token = std::to_string(p.fullmove_number()) + ". ";
    else if (&m == &g.moves.front()) token = std::to_string(p.fullmove_number()) + "... ";
    token += m.uci();
    if (line.size() + token.size() + 1 > 79) {
      out += line + '\n';
      line.clear();
    }
    line += (line.empty() ? "" : " ") + token;
    p.make(m);
  }
  if (line.size() + g.result.size() + 1 > 79) {
    out += line + '\n';
    line.clear();
  }
  out += line + (line.empty() ? "" : " ") + g.result + "\n";
  return out;
}

std::string MatchReport::table() const {
  std::string out = "game,white,black,result,termination,plies\n";
  for (const GameResult& g : games) {
    out += std::to_string(g.index + 1) + ',' + g.white + ',' + g.black + ',' + g.result + ',' + g.termination +
           ',' + std::to_string(g.moves.size()) + '\n';
  }
  out += "score," + name_a + ',' + fmt("%.1f", score_a) + ',' + name_b + ',' + fmt("%.1f", score_b) + '\n';
  return out;
}

std::string MatchReport::pgn() const {
  std::string out;
  for (const GameResult& g : games) out += format_pgn(g) + '\n';
  return out;
}

MatchReport run_match(const NamedConfig& a, const NamedConfig& b, const MatchOptions& options) {
  if (options.games < 1) throw ConfigError("games must be at least 1");
  if (options.openings.empty()) throw ConfigError("at least one opening is required");
  MatchReport report;
  report.name_a = a.name;
  report.name_b = b.name == a.name ? b.name + "'" : b.name;

  auto prepare = [&](const NamedConfig& nc) {
    SearchConfig cfg = nc.cfg;
    if (!nc.depth_given) cfg.max_depth = options.max_depth;
    cfg.on_event = nullptr;
    return cfg;
  };
  Engine engine_a(prepare(a));
  Engine engine_b(prepare(b));

  using Clock = std::chrono::steady_clock;
  for (int i = 0; i < options.games; ++i) {
    const bool a_white = i % 2 == 0;
    engine_a.reset();
    engine_b.reset();
    Engine& white = a_white ? engine_a : engine_b;
    Engine& black = a_white ? engine_b : engine_a;

    GameResult g;
    g.index = static_cast<std::size_t>(i);
    g.white = a_white ? report.name_a : report.name_b;
    g.black = a_white ? report.name_b : report.name_a;
    const auto& opening = options.openings[(static_cast<std::size_t>(i) / 2) % options.openings.size()];

    Position p = g.start;
    std::unordered_map<std::uint64_t, int> seen;
    ++seen[p.hash()];
    for (const Move& m : opening) {
      p.make(m);
      ++seen[p.hash()];
      g.moves.push_back(m);
    }
    g.opening_plies = opening.size();

    std::array<double, 2> remaining = {static_cast<double>(options.time_per_game_ms),
                                       static_cast<double>(options.time_per_game_ms)};
    while (true) {
      if (auto over = game_over(p, seen)) {
        g.result = over->result;
        g.termination = over->termination;
        break;
      }
      if (static_cast<int>(g.moves.size()) >= options.max_plies) {
        g.result = "1/2-1/2";
        g.termination = "max plies";
        break;
      }
      const int side = index_of(p.side_to_move());
      Engine& mover = p.side_to_move() == Color::White ? white : black;
      mover.config().time_limit_ms = std::max(1, static_cast<int>(remaining[side] / options.moves_to_go));
      const auto start = Clock::now();
      const SearchResult r = mover.think(p);
      remaining[side] -= std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      if (!p.is_legal(r.best_move)) {
        g.illegal_move = true;
        g.result = p.side_to_move() == Color::White ? "0-1" : "1-0";
        g.termination = "illegal move " + r.best_move.uci();
        break;
      }
      p.make(r.best_move);
      ++seen[p.hash()];
      g.moves.push_back(r.best_move);
      if (remaining[side] < 0) {
        g.result = side == 0 ? "0-1" : "1-0";
        g.termination = "time forfeit";
        break;
      }
    }

    const double white_score = g.result == "1-0" ? 1.0 : g.result == "0-1" ? 0.0 : 0.5;
    const double a_score = a_white ? white_score : 1.0 - white_score;
    report.score_a += a_score;
    report.score_b += 1.0 - a_score;
    if (a_score == 1.0) ++report.wins_a;
    else if (a_score == 0.0) ++report.wins_b;
    else ++report.draws;
    if (options.on_game) options.on_game(g);
    report.games.push_back(std::move(g));
  }
  return report;
}

GameRecord generate_selfplay(const NamedConfig& white, const NamedConfig& black, std::span<const Move> opening,
                             int plies) {
  GameRecord record;
  record.tags["White"] = white.name;
  record.tags["Black"] = black.name;
  Engine engines[2] = {Engine(white.cfg), Engine(black.cfg)};
  for (Engine& e : engines) e.config().time_limit_ms.reset();

  Position p = Position::initial();
  std::set<std::uint64_t> seen{p.hash()};
  for (const Move& m : opening) {
    if (!p.is_legal(m)) throw GameRecordError("illegal opening move " + m.uci(), record.moves.size());
    p.make(m);
    seen.insert(p.hash());
    record.moves.push_back(m);
  }
  while (static_cast<int>(record.moves.size()) < plies) {
    const auto legal = p.legal_moves();
    if (legal.empty()) break;
    Move chosen = engines[index_of(p.side_to_move())].think(p).best_move;
    if (seen.count(apply_move(p, chosen).hash())) {
      std::optional<Score> best;
      bool found = false;
      for (const Move& m : legal) {
        const Position child = apply_move(p, m);
        if (seen.count(child.hash()) || child.legal_moves().empty()) continue;
        SearchConfig probe;
        probe.max_depth = 3;
        ChainStore chains;
        MoveTableSet tables;
        const Score v = -search_root(child, chains, tables, probe).value;
        if (!best || v > *best) {
          best = v;
          chosen = m;
          found = true;
        }
      }
      if (!found) break;
    }
    p.make(chosen);
    seen.insert(p.hash());
    record.moves.push_back(chosen);
  }
  return record;
}

// ---------------------------------------------------------------- dumps

std::string table_file_stem(Color color, PieceType piece) {
  static constexpr std::array<const char*, kPieceTypeCount> names = {"pawn", "knight", "bishop",
                                                                     "rook", "queen",  "king"};
  return std::string(color == Color::White ? "white_" : "black_") + names[index_of(piece)];
}

std::vector<std::filesystem::path> dump_tables(const MoveTableSet& tables, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "tables");
  fs::create_directories(dir / "importance");
  std::vector<fs::path> written;
  auto write = [&](const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    written.push_back(path);
  };
  std::string best = "table,best_squares\n";
  for (Color c : {Color::White, Color::Black}) {
    for (int t = 0; t < kPieceTypeCount; ++t) {
      const auto piece = static_cast<PieceType>(t);
      const std::string stem = table_file_stem(c, piece);
      write(dir / "tables" / (stem + ".csv"), tables.table_csv(c, piece));
      write(dir / "importance" / (stem + ".csv"), tables.importance_csv(c, piece));
      write(dir / "importance" / (stem + ".txt"), tables.importance_map(c, piece).to_text());
      std::string squares;
      for (Square sq : tables.best_squares(c, piece)) squares += (squares.empty() ? "" : " ") + sq.name();
      best += stem + ',' + squares + '\n';
    }
  }
  write(dir / "best_squares.txt", best);
  write(dir / "paths.csv", tables.paths_csv());
  return written;
}

}  // namespace dmc
