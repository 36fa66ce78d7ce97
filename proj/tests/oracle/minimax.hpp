// Full-width minimax without pruning. Leaves are settled by the engine's own
// quiescence with a full window, so the comparison isolates the alpha-beta
// layer (quiescence is checked separately against qsearch_minimax).

#pragma once

#include <algorithm>
#include <cstdint>

#include "dmc/evaluation.hpp"
#include "dmc/search.hpp"

namespace oracle {

inline dmc::Score minimax(dmc::Position& p, int depth, int ply = 0, std::uint64_t* quiescence_nodes = nullptr) {
  if (depth == 0) {
    dmc::SearchStats stats;
    const dmc::Score v = dmc::quiescence(p, -dmc::kInfinity, dmc::kInfinity, stats);
    if (quiescence_nodes) *quiescence_nodes += stats.quiescence_nodes;
    return v;
  }
  const auto moves = p.legal_moves();
  if (moves.empty()) return p.in_check() ? -dmc::kMate + ply : 0;
  dmc::Score best = -dmc::kInfinity;
  for (const auto& m : moves) {
    dmc::Position child = dmc::apply_move(p, m);
    best = std::max(best, -minimax(child, depth - 1, ply + 1, quiescence_nodes));
  }
  return best;
}

// Plain max over stand-pat and every quiescence move, no window at all.
// The tree is exponential, so `budget` counts down visited nodes and the
// result is meaningless once it goes negative.
inline dmc::Score qsearch_minimax(const dmc::Position& p, long& budget, int qply = 0) {
  dmc::Score best = dmc::evaluate(p);
  if (--budget < 0 || qply >= dmc::kQuiescencePlyCap) return best;
  for (const auto& m : dmc::quiescence_moves(p)) {
    best = std::max(best, -qsearch_minimax(dmc::apply_move(p, m), budget, qply + 1));
    if (budget < 0) return best;
  }
  return best;
}

}  // namespace oracle
