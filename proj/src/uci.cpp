#include "dmc/uci.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace dmc {

namespace {

struct CommandError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

int to_int(const std::string& s, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw CommandError(std::string("bad ") + what + ": " + s);
  return v;
}

bool to_bool(const std::string& s) {
  if (s == "true" || s == "on" || s == "1") return true;
  if (s == "false" || s == "off" || s == "0") return false;
  throw CommandError("bad boolean: " + s);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string score_text(Score v) {
  if (is_mate_score(v)) {
    const int plies = kMate - std::abs(v);
    const int moves = (plies + 1) / 2;
    return "mate " + std::to_string(v > 0 ? moves : -moves);
  }
  return "cp " + std::to_string(v);
}

}  // namespace

UciSession::UciSession(SearchConfig cfg) : engine_(cfg), position_(Position::initial()), default_depth_(cfg.max_depth) {}

bool UciSession::handle(std::string_view line, std::ostream& out, std::ostream& log) {
  const auto w = words(line);
  if (w.empty()) return true;
  const std::string& cmd = w.front();
  const std::string_view args = [&] {
    const auto pos = line.find(cmd);
    return line.substr(pos + cmd.size());
  }();
  try {
    if (cmd == "uci") {
      out << "id name dmc\n"
          << "id author dmc developers\n"
          << "option name Chains type check default " << (engine_.config().use_chains ? "true" : "false") << "\n"
          << "option name Tables type check default " << (engine_.config().use_tables ? "true" : "false") << "\n"
          << "option name TT type check default "
          << (engine_.config().use_transposition_table ? "true" : "false") << "\n"
          << "option name Beam type spin default " << engine_.config().beam_x << " min 0 max 64\n"
          << "option name Window type spin default " << engine_.config().reliability_window
          << " min 0 max 10000\n"
          << "option name Threshold type spin default " << engine_.config().threshold << " min -1000 max 1000\n"
          << "option name Range type spin default " << engine_.config().move_range << " min 0 max 1000\n"
          << "option name Rank type combo default eval var eval var weight\n"
          << "option name ChainsOn type combo default window var window var cutoff\n"
          << "option name PersistChains type check default false\n"
          << "option name Depth type spin default " << default_depth_ << " min 1 max 64\n"
          << "uciok\n";
    } else if (cmd == "isready") {
      out << "readyok\n";
    } else if (cmd == "ucinewgame") {
      engine_.reset();
      position_ = Position::initial();
    } else if (cmd == "position") {
      cmd_position(args, out);
    } else if (cmd == "go") {
      cmd_go(args, out);
    } else if (cmd == "setoption") {
      cmd_setoption(args, out);
    } else if (cmd == "stop" || cmd == "ponderhit") {
      // Searches run synchronously, so there is nothing to stop.
    } else if (cmd == "quit") {
      out.flush();
      return false;
    } else {
      log << "warning: unknown command '" << cmd << "' ignored\n";
    }
  } catch (const CommandError& e) {
    out << "info string error: " << e.what() << "\n";
  }
  out.flush();
  return true;
}

void UciSession::run(std::istream& in, std::ostream& out, std::ostream& log) {
  std::string line;
  while (std::getline(in, line)) {
    if (!handle(line, out, log)) return;
  }
}

void UciSession::cmd_position(std::string_view args, std::ostream&) {
  const auto w = words(args);
  if (w.empty()) throw CommandError("position needs startpos or fen");
  std::size_t i = 0;
  Position next;
  if (w[0] == "startpos") {
    next = Position::initial();
    i = 1;
  } else if (w[0] == "fen") {
    std::string fen;
    for (i = 1; i < w.size() && w[i] != "moves"; ++i) fen += (fen.empty() ? "" : " ") + w[i];
    try {
      next = Position::from_fen(fen);
    } catch (const FenError& e) {
      throw CommandError(std::string("invalid fen: ") + e.what());
    }
  } else {
    throw CommandError("position needs startpos or fen, got '" + w[0] + "'");
  }
  if (i < w.size()) {
    if (w[i] != "moves") throw CommandError("unexpected '" + w[i] + "' in position");
    for (++i; i < w.size(); ++i) {
      try {
        next.make(parse_uci_move(next, w[i]));
      } catch (const ChessError& e) {
        throw CommandError("illegal move " + w[i] + ": " + e.what());
      }
    }
  }
  position_ = next;
}

void UciSession::cmd_go(std::string_view args, std::ostream& out) {
  const auto w = words(args);
  std::optional<int> depth;
  std::optional<int> movetime;
  std::optional<int> wtime, btime;
  int winc = 0, binc = 0, movestogo = 30;
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto value = [&](const char* what) {
      if (i + 1 >= w.size()) throw CommandError(std::string("missing value for ") + what);
      return to_int(w[++i], what);
    };
    if (w[i] == "depth") depth = value("depth");
    else if (w[i] == "movetime") movetime = value("movetime");
    else if (w[i] == "wtime") wtime = value("wtime");
    else if (w[i] == "btime") btime = value("btime");
    else if (w[i] == "winc") winc = value("winc");
    else if (w[i] == "binc") binc = value("binc");
    else if (w[i] == "movestogo") movestogo = std::max(1, value("movestogo"));
    else if (w[i] == "infinite") depth = 64;
    else throw CommandError("unknown go parameter '" + w[i] + "'");
  }

  if (position_.legal_moves().empty()) {
    out << "info string no legal moves\nbestmove 0000\n";
    return;
  }
  SearchConfig& cfg = engine_.config();
  cfg.max_depth = depth.value_or(default_depth_);
  cfg.time_limit_ms.reset();
  const bool white = position_.side_to_move() == Color::White;
  if (movetime) {
    cfg.time_limit_ms = std::max(1, *movetime);
    if (!depth) cfg.max_depth = 64;
  } else if (const auto clock = white ? wtime : btime) {
    cfg.time_limit_ms = std::max(1, *clock / movestogo + (white ? winc : binc) / 2);
    if (!depth) cfg.max_depth = 64;
  }
  const SearchResult r = engine_.think(position_);
  out << "info depth " << r.stats.depth_reached << " score " << score_text(r.value) << " nodes "
      << r.stats.negamax_nodes + r.stats.quiescence_nodes << " time "
      << static_cast<long long>(r.stats.elapsed_ms) << " pv";
  for (const Move& m : r.principal_path) out << ' ' << m.uci();
  out << "\nbestmove " << r.best_move.uci() << "\n";
}

void UciSession::cmd_setoption(std::string_view args, std::ostream&) {
  const auto w = words(args);
  std::string name;
  std::string value;
  std::size_t i = 0;
  if (i < w.size() && w[i] == "name") ++i;
  for (; i < w.size() && w[i] != "value"; ++i) name += w[i];
  if (i < w.size()) ++i;
  for (; i < w.size(); ++i) value += (value.empty() ? "" : " ") + w[i];
  name = lower(name);
  value = lower(value);
  if (name.empty()) throw CommandError("setoption needs a name");

  SearchConfig& c = engine_.config();
  if (name == "chains") c.use_chains = to_bool(value);
  else if (name == "tables") c.use_tables = to_bool(value);
  else if (name == "tt") c.use_transposition_table = to_bool(value);
  else if (name == "persistchains") c.persist_chains = to_bool(value);
  else if (name == "beam") c.beam_x = std::max(0, to_int(value, "beam"));
  else if (name == "window") c.reliability_window = std::max(0, to_int(value, "window"));
  else if (name == "threshold") c.threshold = to_int(value, "threshold");
  else if (name == "range") c.move_range = std::max(0, to_int(value, "range"));
  else if (name == "depth") default_depth_ = std::max(1, to_int(value, "depth"));
  else if (name == "rank") {
    if (value == "eval") c.rank = RankBy::Eval;
    else if (value == "weight") c.rank = RankBy::Weight;
    else throw CommandError("rank must be eval or weight");
  } else if (name == "chainson") {
    if (value == "window") c.chains_on = ChainsOn::Window;
    else if (value == "cutoff") c.chains_on = ChainsOn::Cutoff;
    else throw CommandError("chainson must be window or cutoff");
  } else {
    throw CommandError("unknown option '" + name + "'");
  }
}

}  // namespace dmc
