// Long-term memory: twelve 64-cell weight grids (one per colour and piece
// type) and the store of move paths whose hops run through those grids.
//
// Each path is a chain of (table, square) hops: the move WPe2-e4 lives in the
// white pawn table at e2 and e4, the reply BPe7-e5 in the black pawn table,
// and so on. The tables are never reset between moves of a game; stale paths
// are removed by tidy() once they fall outside the configured move range.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dmc/chess.hpp"
#include "dmc/evaluation.hpp"

namespace dmc {

using PathId = std::uint64_t;

struct PieceTable {
  std::array<int, 64> weights{};

  int at(Square sq) const { return weights[sq.index()]; }
  friend bool operator==(const PieceTable&, const PieceTable&) = default;
};

struct TablePath {
  PathId id = 0;
  std::vector<Move> moves;  // non-empty, alternating colours
  int weight = 0;
  std::int64_t eval_sum = 0;  // evaluations from the point of view of moves.front().color
  int eval_count = 0;
  int last_update_move = 0;  // fullmove number

  double avg_eval() const { return eval_count ? static_cast<double>(eval_sum) / eval_count : 0.0; }
};

enum class ImportanceBucket { Red, Orange, Yellow, Green, LightBlue, DarkBlue, NotConsidered };

std::string_view bucket_name(ImportanceBucket bucket);

struct ImportanceMap {
  std::array<int, 64> abs_weight{};
  std::array<ImportanceBucket, 64> bucket{};

  /// 8x8 grid of bucket initials (R O Y G L D, '.' for not considered), rank 8 first.
  std::string to_text() const;
};

enum class RankBy { Eval, Weight };

class MoveTableSet {
 public:
  static constexpr int kDefaultRemovalFloor = 0;

  explicit MoveTableSet(int removal_floor = kDefaultRemovalFloor) : removal_floor_(removal_floor) {}

  /// Strengthens a path that improved alpha: +1 on the from and to cells of
  /// every move, -1 on the weight of every other stored path leaving the same
  /// origin (colour, piece, from-square of the first move) and -1 on the
  /// cells of that path's moves from the point where it diverges. The path
  /// itself is created with weight 1 or gains +1, and the evaluation joins its
  /// running average. Returns nullopt for an empty or non-alternating path.
  std::optional<PathId> reinforce_path(std::span<const Move> path, Score eval, int move_no);

  /// Unreliable path: weight -1 and -1 on its cells; removed once the weight
  /// reaches the removal floor. Unknown ids are ignored.
  void penalize_path(PathId id);

  /// Paths with weight above `threshold` that are fully legal from `position`,
  /// best first, at most `beam_x` of them.
  std::vector<const TablePath*> get_paths(const Position& position, int beam_x, int threshold,
                                          RankBy rank = RankBy::Eval) const;

  /// Squares holding the table's maximum positive weight.
  std::vector<Square> best_squares(Color color, PieceType piece) const;

  ImportanceMap importance_map(Color color, PieceType piece) const;

  /// Drops paths last updated before current_move_no - move_range, taking
  /// their remaining positive weight back out of the cells.
  void tidy(int current_move_no, int move_range);

  const PieceTable& table(Color color, PieceType piece) const {
    return tables_[table_index(color, piece)];
  }
  const TablePath* find(PathId id) const;
  const TablePath* find(std::span<const Move> moves) const;
  /// All stored paths, ordered by id (creation order).
  std::vector<const TablePath*> paths() const;
  std::size_t path_count() const { return paths_.size(); }
  int removal_floor() const { return removal_floor_; }

  /// "square,weight" header plus 64 rows in square-index order.
  std::string table_csv(Color color, PieceType piece) const;
  /// "square,abs_weight,bucket" header plus 64 rows.
  std::string importance_csv(Color color, PieceType piece) const;
  /// "moves,weight,avg_eval,last_update_move" header plus one row per path.
  std::string paths_csv() const;

 private:
  static int table_index(Color color, PieceType piece) {
    return index_of(color) * kPieceTypeCount + index_of(piece);
  }
  // (colour, piece, from) of a move, i.e. its key without destination and promotion.
  static std::uint32_t origin_key(const Move& m) { return (m.key() >> 6) & 0x3FF; }

  void bump_cells(const Move& m, int delta);
  void erase_path(PathId id);

  int removal_floor_;
  std::array<PieceTable, 12> tables_{};
  PathId next_id_ = 1;
  std::map<PathId, TablePath> paths_;
  std::map<std::vector<std::uint32_t>, PathId> by_moves_;
  std::unordered_map<std::uint32_t, std::vector<PathId>> by_first_;
  std::unordered_map<std::uint32_t, std::vector<PathId>> by_origin_;
};

}  // namespace dmc
