// Short-term memory: the most recent cut-off line for each first move.
//
// A chain is recorded whenever the search refutes a position or improves its
// window, keyed by the line's first move. Retrieval gives no legality
// guarantee; the caller replays the chain and drops it if it no longer holds.

#pragma once

#include <cstddef>
#include <cstdint>
#include <list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dmc/chess.hpp"
#include "dmc/evaluation.hpp"

namespace dmc {

struct MoveChain {
  std::vector<Move> moves;  // non-empty, alternating colours
  Score eval = 0;           // from the point of view of moves.front().color
  int depth_created = 0;

  const Move& first() const { return moves.front(); }
};

class ChainStore {
 public:
  static constexpr std::size_t kDefaultCapacity = 4096;
  static constexpr std::size_t kDefaultMaxLength = 8;

  explicit ChainStore(std::size_t capacity = kDefaultCapacity,
                      std::size_t max_length = kDefaultMaxLength);

  /// Latest-wins store keyed by path.front(). Paths longer than max_length are
  /// truncated. Returns false (and leaves the store untouched) for an empty or
  /// non-alternating path. Over capacity, the least recently written key goes.
  bool record_cutoff(std::span<const Move> path, Score eval, int depth_created = 0);

  const MoveChain* get(const Move& first) const;
  void invalidate(const Move& first);
  void clear();

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::size_t max_length() const { return max_length_; }

  /// Chains in write order, oldest first.
  std::vector<const MoveChain*> chains() const;

  /// One line per entry: "WNg1-f3: WNg1-f3 BNg8-f6 eval=12".
  std::string dump() const;

 private:
  struct Entry {
    MoveChain chain;
    std::list<std::uint32_t>::iterator order;
  };

  std::size_t capacity_;
  std::size_t max_length_;
  std::unordered_map<std::uint32_t, Entry> entries_;
  std::list<std::uint32_t> write_order_;  // oldest first
};

}  // namespace dmc
