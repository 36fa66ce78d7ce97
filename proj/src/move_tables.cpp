#include "dmc/move_tables.hpp"

#include <algorithm>
#include <cstdio>

namespace dmc {

namespace {

std::vector<std::uint32_t> keys_of(std::span<const Move> moves) {
  std::vector<std::uint32_t> keys;
  keys.reserve(moves.size());
  for (const Move& m : moves) keys.push_back(m.key());
  return keys;
}

void erase_id(std::vector<PathId>& ids, PathId id) {
  ids.erase(std::remove(ids.begin(), ids.end(), id), ids.end());
}

}  // namespace

std::string_view bucket_name(ImportanceBucket bucket) {
  switch (bucket) {
    case ImportanceBucket::Red: return "red";
    case ImportanceBucket::Orange: return "orange";
    case ImportanceBucket::Yellow: return "yellow";
    case ImportanceBucket::Green: return "green";
    case ImportanceBucket::LightBlue: return "light-blue";
    case ImportanceBucket::DarkBlue: return "dark-blue";
    case ImportanceBucket::NotConsidered: return "not-considered";
  }
  return "?";
}

std::string ImportanceMap::to_text() const {
  static constexpr std::array<char, 7> initials = {'R', 'O', 'Y', 'G', 'L', 'D', '.'};
  std::string out;
  for (int rank = 7; rank >= 0; --rank) {
    for (int file = 0; file < 8; ++file) {
      out += initials[static_cast<int>(bucket[rank * 8 + file])];
      if (file < 7) out += ' ';
    }
    out += '\n';
  }
  return out;
}

void MoveTableSet::bump_cells(const Move& m, int delta) {
  PieceTable& t = tables_[table_index(m.color, m.piece)];
  t.weights[m.from.index()] += delta;
  t.weights[m.to.index()] += delta;
}

std::optional<PathId> MoveTableSet::reinforce_path(std::span<const Move> path, Score eval, int move_no) {
  if (path.empty() || !alternates_colors(path)) return std::nullopt;

  for (const Move& m : path) bump_cells(m, +1);

  const auto keys = keys_of(path);
  const auto existing = by_moves_.find(keys);
  const PathId self = existing == by_moves_.end() ? 0 : existing->second;

  if (const auto it = by_origin_.find(origin_key(path.front())); it != by_origin_.end()) {
    for (PathId id : it->second) {
      if (id == self) continue;
      TablePath& sibling = paths_.at(id);
      sibling.weight -= 1;
      std::size_t diverge = 0;
      while (diverge < sibling.moves.size() && diverge < path.size() &&
             sibling.moves[diverge].key() == path[diverge].key()) {
        ++diverge;
      }
      for (std::size_t i = diverge; i < sibling.moves.size(); ++i) bump_cells(sibling.moves[i], -1);
    }
  }

  if (self != 0) {
    TablePath& p = paths_.at(self);
    p.weight += 1;
    p.eval_sum += eval;
    p.eval_count += 1;
    p.last_update_move = move_no;
    return self;
  }

  const PathId id = next_id_++;
  TablePath p;
  p.id = id;
  p.moves.assign(path.begin(), path.end());
  p.weight = 1;
  p.eval_sum = eval;
  p.eval_count = 1;
  p.last_update_move = move_no;
  paths_.emplace(id, std::move(p));
  by_moves_.emplace(keys, id);
  by_first_[path.front().key()].push_back(id);
  by_origin_[origin_key(path.front())].push_back(id);
  return id;
}

void MoveTableSet::erase_path(PathId id) {
  const auto it = paths_.find(id);
  if (it == paths_.end()) return;
  const TablePath& p = it->second;
  by_moves_.erase(keys_of(p.moves));
  if (auto f = by_first_.find(p.moves.front().key()); f != by_first_.end()) {
    erase_id(f->second, id);
    if (f->second.empty()) by_first_.erase(f);
  }
  if (auto o = by_origin_.find(origin_key(p.moves.front())); o != by_origin_.end()) {
    erase_id(o->second, id);
    if (o->second.empty()) by_origin_.erase(o);
  }
  paths_.erase(it);
}

void MoveTableSet::penalize_path(PathId id) {
  const auto it = paths_.find(id);
  if (it == paths_.end()) return;
  TablePath& p = it->second;
  p.weight -= 1;
  for (const Move& m : p.moves) bump_cells(m, -1);
  if (p.weight <= removal_floor_) erase_path(id);
}

std::vector<const TablePath*> MoveTableSet::get_paths(const Position& position, int beam_x,
                                                      int threshold, RankBy rank) const {
  std::vector<const TablePath*> out;
  if (beam_x <= 0 || paths_.empty()) return out;

  std::vector<const TablePath*> candidates;
  for (const Move& m : position.legal_moves()) {
    const auto it = by_first_.find(m.key());
    if (it == by_first_.end()) continue;
    for (PathId id : it->second) {
      const TablePath& p = paths_.at(id);
      if (p.weight > threshold) candidates.push_back(&p);
    }
  }
  auto encoding_less = [](const TablePath* a, const TablePath* b) {
    return std::lexicographical_compare(a->moves.begin(), a->moves.end(), b->moves.begin(), b->moves.end(),
                                        [](const Move& x, const Move& y) { return x.key() < y.key(); });
  };
  std::sort(candidates.begin(), candidates.end(), [&](const TablePath* a, const TablePath* b) {
    // Cross-multiplied means keep the comparison exact.
    const std::int64_t lhs = a->eval_sum * b->eval_count;
    const std::int64_t rhs = b->eval_sum * a->eval_count;
    if (rank == RankBy::Eval) {
      if (lhs != rhs) return lhs > rhs;
      if (a->weight != b->weight) return a->weight > b->weight;
    } else {
      if (a->weight != b->weight) return a->weight > b->weight;
      if (lhs != rhs) return lhs > rhs;
    }
    return encoding_less(a, b);
  });
  for (const TablePath* p : candidates) {
    if (static_cast<int>(out.size()) >= beam_x) break;
    if (play_sequence(position, p->moves).ok()) out.push_back(p);
  }
  return out;
}

std::vector<Square> MoveTableSet::best_squares(Color color, PieceType piece) const {
  const PieceTable& t = table(color, piece);
  const int best = *std::max_element(t.weights.begin(), t.weights.end());
  std::vector<Square> out;
  if (best <= 0) return out;
  for (int sq = 0; sq < 64; ++sq) {
    if (t.weights[sq] == best) out.emplace_back(sq);
  }
  return out;
}

ImportanceMap MoveTableSet::importance_map(Color color, PieceType piece) const {
  const PieceTable& t = table(color, piece);
  ImportanceMap map;
  int max_abs = 0;
  for (int sq = 0; sq < 64; ++sq) {
    map.abs_weight[sq] = std::abs(t.weights[sq]);
    max_abs = std::max(max_abs, map.abs_weight[sq]);
  }
  // Six equal-width bands over [1, max_abs]; the top band is red.
  static constexpr std::array<ImportanceBucket, 6> by_band = {
      ImportanceBucket::DarkBlue, ImportanceBucket::LightBlue, ImportanceBucket::Green,
      ImportanceBucket::Yellow,   ImportanceBucket::Orange,    ImportanceBucket::Red};
  for (int sq = 0; sq < 64; ++sq) {
    const int a = map.abs_weight[sq];
    if (a == 0) {
      map.bucket[sq] = ImportanceBucket::NotConsidered;
    } else if (max_abs == 1) {
      map.bucket[sq] = ImportanceBucket::Red;
    } else {
      map.bucket[sq] = by_band[std::min(5, (a - 1) * 6 / (max_abs - 1))];
    }
  }
  return map;
}

void MoveTableSet::tidy(int current_move_no, int move_range) {
  std::vector<PathId> stale;
  for (const auto& [id, p] : paths_) {
    if (p.last_update_move < current_move_no - move_range) stale.push_back(id);
  }
  for (PathId id : stale) {
    const TablePath& p = paths_.at(id);
    if (p.weight > 0) {
      for (const Move& m : p.moves) bump_cells(m, -p.weight);
    }
    erase_path(id);
  }
}

const TablePath* MoveTableSet::find(PathId id) const {
  const auto it = paths_.find(id);
  return it == paths_.end() ? nullptr : &it->second;
}

const TablePath* MoveTableSet::find(std::span<const Move> moves) const {
  const auto it = by_moves_.find(keys_of(moves));
  return it == by_moves_.end() ? nullptr : find(it->second);
}

std::vector<const TablePath*> MoveTableSet::paths() const {
  std::vector<const TablePath*> out;
  out.reserve(paths_.size());
  for (const auto& [id, p] : paths_) out.push_back(&p);
  return out;
}

std::string MoveTableSet::table_csv(Color color, PieceType piece) const {
  const PieceTable& t = table(color, piece);
  std::string out = "square,weight\n";
  for (int sq = 0; sq < 64; ++sq) out += Square(sq).name() + ',' + std::to_string(t.weights[sq]) + '\n';
  return out;
}

std::string MoveTableSet::importance_csv(Color color, PieceType piece) const {
  const ImportanceMap map = importance_map(color, piece);
  std::string out = "square,abs_weight,bucket\n";
  for (int sq = 0; sq < 64; ++sq) {
    out += Square(sq).name() + ',' + std::to_string(map.abs_weight[sq]) + ',' +
           std::string(bucket_name(map.bucket[sq])) + '\n';
  }
  return out;
}

std::string MoveTableSet::paths_csv() const {
  std::string out = "moves,weight,avg_eval,last_update_move\n";
  char avg[32];
  for (const auto& [id, p] : paths_) {
    std::snprintf(avg, sizeof avg, "%.2f", p.avg_eval());
    out += format_line(p.moves) + ',' + std::to_string(p.weight) + ',' + avg + ',' +
           std::to_string(p.last_update_move) + '\n';
  }
  return out;
}

}  // namespace dmc
