#include "dmc/move_chains.hpp"

#include <algorithm>

namespace dmc {

ChainStore::ChainStore(std::size_t capacity, std::size_t max_length)
    : capacity_(std::max<std::size_t>(capacity, 1)), max_length_(std::max<std::size_t>(max_length, 1)) {}

bool ChainStore::record_cutoff(std::span<const Move> path, Score eval, int depth_created) {
  if (path.empty() || !alternates_colors(path)) return false;
  const std::uint32_t key = path.front().key();
  const auto kept = path.first(std::min(path.size(), max_length_));

  if (auto it = entries_.find(key); it != entries_.end()) {
    write_order_.erase(it->second.order);
    entries_.erase(it);
  } else if (entries_.size() >= capacity_) {
    entries_.erase(write_order_.front());
    write_order_.pop_front();
  }
  write_order_.push_back(key);
  Entry entry{MoveChain{std::vector<Move>(kept.begin(), kept.end()), eval, depth_created},
              std::prev(write_order_.end())};
  entries_.emplace(key, std::move(entry));
  return true;
}

const MoveChain* ChainStore::get(const Move& first) const {
  const auto it = entries_.find(first.key());
  return it == entries_.end() ? nullptr : &it->second.chain;
}

void ChainStore::invalidate(const Move& first) {
  const auto it = entries_.find(first.key());
  if (it == entries_.end()) return;
  write_order_.erase(it->second.order);
  entries_.erase(it);
}

void ChainStore::clear() {
  entries_.clear();
  write_order_.clear();
}

std::vector<const MoveChain*> ChainStore::chains() const {
  std::vector<const MoveChain*> out;
  out.reserve(entries_.size());
  for (std::uint32_t key : write_order_) out.push_back(&entries_.at(key).chain);
  return out;
}

std::string ChainStore::dump() const {
  std::string out;
  for (const MoveChain* chain : chains()) {
    out += chain->first().display() + ": " + format_line(chain->moves) +
           " eval=" + std::to_string(chain->eval) + '\n';
  }
  return out;
}

}  // namespace dmc
