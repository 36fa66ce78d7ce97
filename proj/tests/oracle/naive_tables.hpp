// Naive replay model of the move-table update rules, used as a test oracle.
//
// Paths live in a flat vector and every rule is applied by linear scan, so
// nothing here shares structure with MoveTableSet's indexed store.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "dmc/chess.hpp"

namespace oracle {

struct NaivePath {
  std::vector<dmc::Move> moves;
  int weight = 0;
  long long eval_sum = 0;
  int eval_count = 0;
  int last_update = 0;
};

class NaiveTables {
 public:
  explicit NaiveTables(int floor = 0) : floor_(floor) {}

  void reinforce(const std::vector<dmc::Move>& path, int eval, int move_no) {
    for (const auto& m : path) add(m, +1);
    const auto& first = path.front();
    for (auto& p : paths_) {
      if (same(p.moves, path)) continue;
      const auto& f = p.moves.front();
      if (f.color != first.color || f.piece != first.piece || f.from != first.from) continue;
      p.weight -= 1;
      std::size_t i = 0;
      while (i < p.moves.size() && i < path.size() && p.moves[i].key() == path[i].key()) ++i;
      for (; i < p.moves.size(); ++i) add(p.moves[i], -1);
    }
    for (auto& p : paths_) {
      if (same(p.moves, path)) {
        p.weight += 1;
        p.eval_sum += eval;
        p.eval_count += 1;
        p.last_update = move_no;
        return;
      }
    }
    paths_.push_back({path, 1, eval, 1, move_no});
  }

  void penalize(const std::vector<dmc::Move>& path) {
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      if (!same(paths_[i].moves, path)) continue;
      paths_[i].weight -= 1;
      for (const auto& m : paths_[i].moves) add(m, -1);
      if (paths_[i].weight <= floor_) paths_.erase(paths_.begin() + static_cast<long>(i));
      return;
    }
  }

  void tidy(int current, int range) {
    std::vector<NaivePath> kept;
    for (auto& p : paths_) {
      if (p.last_update < current - range) {
        if (p.weight > 0) {
          for (const auto& m : p.moves) add(m, -p.weight);
        }
      } else {
        kept.push_back(p);
      }
    }
    paths_ = kept;
  }

  int cell(dmc::Color c, dmc::PieceType t, int sq) const {
    return cells_[dmc::index_of(c) * 6 + dmc::index_of(t)][sq];
  }
  const std::vector<NaivePath>& paths() const { return paths_; }

 private:
  static bool same(const std::vector<dmc::Move>& a, const std::vector<dmc::Move>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].key() != b[i].key()) return false;
    }
    return true;
  }
  void add(const dmc::Move& m, int delta) {
    auto& t = cells_[dmc::index_of(m.color) * 6 + dmc::index_of(m.piece)];
    t[m.from.index()] += delta;
    t[m.to.index()] += delta;
  }

  int floor_;
  std::array<std::array<int, 64>, 12> cells_{};
  std::vector<NaivePath> paths_;
};

}  // namespace oracle
