// Writes the recorded oracle values used by acceptance criterion 2.
//   make_minimax_fixture OUT_FILE

#include <cstdio>
#include <fstream>
#include <iostream>

#include "acceptance/minimax_fixture.hpp"
#include "oracle/minimax.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_minimax_fixture OUT_FILE\n";
    return 2;
  }
  std::ofstream out(argv[1]);
  out << "# full-width minimax at depth " << fixture::kDepth << ", leaves settled by full-window quiescence\n"
      << "# positions: oracle::random_positions(" << fixture::kCount << ", " << fixture::kSeed << ")\n"
      << "# fen;value;oracle_quiescence_nodes\n";
  int i = 0;
  for (const dmc::Position& p : fixture::positions()) {
    dmc::Position q = p;
    std::uint64_t nodes = 0;
    const dmc::Score v = oracle::minimax(q, fixture::kDepth, 0, &nodes);
    out << p.fen() << ';' << v << ';' << nodes << '\n';
    std::cerr << ++i << "/" << fixture::kCount << " " << v << " " << nodes << "\n";
  }
  return 0;
}
