// Position-indexed cache for the baseline engine. Depth-preferred
// replacement with a generation counter so entries from earlier root
// searches give way first.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dmc/evaluation.hpp"

namespace dmc {

enum class Bound : std::uint8_t { Exact, Lower, Upper };

struct TTEntry {
  std::uint64_t key = 0;
  Score value = 0;
  std::uint32_t move_key = 0;  // 0 when no best move is known
  std::int16_t depth = -1;
  Bound bound = Bound::Exact;
  std::uint8_t generation = 0;
};

class TranspositionTable {
 public:
  static constexpr std::size_t kDefaultEntries = std::size_t{1} << 18;

  /// Entry count is rounded up to a power of two.
  explicit TranspositionTable(std::size_t entries = kDefaultEntries);

  /// Entry for exactly this key (full 64-bit match), if present.
  std::optional<TTEntry> probe(std::uint64_t key) const;
  /// As probe(), but misses when the stored depth is below min_depth.
  std::optional<TTEntry> lookup(std::uint64_t key, int min_depth) const;
  void store(std::uint64_t key, int depth, Score value, Bound bound, std::uint32_t move_key);

  void new_search() { ++generation_; }
  void clear();
  std::size_t size() const { return slots_.size(); }

 private:
  std::vector<TTEntry> slots_;
  std::uint8_t generation_ = 0;
};

}  // namespace dmc
