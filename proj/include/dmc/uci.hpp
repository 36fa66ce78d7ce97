// Minimal UCI-style text protocol over arbitrary streams.
//
//   uci | isready | ucinewgame | quit
//   position startpos|fen <FEN> [moves m1 m2 ...]
//   go [depth N] [movetime MS] [wtime MS btime MS [winc MS binc MS] [movestogo N]] [infinite]
//   setoption name <Chains|Tables|TT|Beam|Window|Threshold|Range|Rank|ChainsOn|PersistChains|Depth> value <v>
//
// Errors in a command produce "info string error: ..." on the output and
// leave the session unchanged. Unknown commands are ignored with a warning
// on the log stream.

#pragma once

#include <iosfwd>
#include <string_view>

#include "dmc/chess.hpp"
#include "dmc/search.hpp"

namespace dmc {

class UciSession {
 public:
  explicit UciSession(SearchConfig cfg = {});

  /// Handles one line. Returns false once "quit" has been received.
  bool handle(std::string_view line, std::ostream& out, std::ostream& log);
  /// Reads lines until quit or end of input.
  void run(std::istream& in, std::ostream& out, std::ostream& log);

  const Position& position() const { return position_; }
  Engine& engine() { return engine_; }

 private:
  void cmd_position(std::string_view args, std::ostream& out);
  void cmd_go(std::string_view args, std::ostream& out);
  void cmd_setoption(std::string_view args, std::ostream& out);

  Engine engine_;
  Position position_;
  int default_depth_;
};

}  // namespace dmc
