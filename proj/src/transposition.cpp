#include "dmc/transposition.hpp"

#include <bit>

namespace dmc {

TranspositionTable::TranspositionTable(std::size_t entries)
    : slots_(std::bit_ceil(entries == 0 ? std::size_t{1} : entries)) {}

std::optional<TTEntry> TranspositionTable::probe(std::uint64_t key) const {
  const TTEntry& e = slots_[key & (slots_.size() - 1)];
  if (e.depth < 0 || e.key != key) return std::nullopt;
  return e;
}

std::optional<TTEntry> TranspositionTable::lookup(std::uint64_t key, int min_depth) const {
  auto e = probe(key);
  if (e && e->depth < min_depth) return std::nullopt;
  return e;
}

void TranspositionTable::store(std::uint64_t key, int depth, Score value, Bound bound,
                               std::uint32_t move_key) {
  TTEntry& e = slots_[key & (slots_.size() - 1)];
  const bool replace = e.depth < 0 || e.key == key || e.generation != generation_ || depth >= e.depth;
  if (!replace) return;
  if (e.key == key && move_key == 0) move_key = e.move_key;
  e = TTEntry{key, value, move_key, static_cast<std::int16_t>(depth), bound, generation_};
}

void TranspositionTable::clear() {
  for (TTEntry& e : slots_) e = TTEntry{};
}

}  // namespace dmc
