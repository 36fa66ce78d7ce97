// Static evaluation built on square control, plus the move classification
// (ordering and quiescence candidates) that square control drives.
//
// Control formula: every piece adds its control weight to each square it
// attacks (pawn diagonals, knight/king steps, slider rays up to and including
// the first occupied square). Weights favour cheap attackers:
//
//   pawn 5, knight 3, bishop 3, rook 2, queen 1, king 1
//
// and the net control of a square is white total minus black total. Defending
// an own piece counts the same as attacking an empty or enemy square.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dmc/chess.hpp"

namespace dmc {

/// Centipawns, from the point of view of the side to move.
using Score = int;

inline constexpr std::array<int, kPieceTypeCount> kPieceValues = {100, 320, 330, 500, 900, 0};
inline constexpr std::array<int, kPieceTypeCount> kControlWeights = {5, 3, 3, 2, 1, 1};
inline constexpr int kControlBonusCap = 150;

constexpr int piece_value(PieceType t) { return kPieceValues[index_of(t)]; }

struct ControlMap {
  std::array<int, 64> net{};  // > 0: White controls, < 0: Black controls

  int at(Square sq) const { return net[sq.index()]; }
  int total() const;
  /// 8x8 grid, rank 8 first, one signed integer per square.
  std::string to_text() const;

  friend bool operator==(const ControlMap&, const ControlMap&) = default;
};

/// Attackers of every square, per colour, plus the derived control map.
class AttackMap {
 public:
  explicit AttackMap(const Position& position);

  int count(Square sq, Color by) const { return lists_[sq.index()][index_of(by)].count; }
  /// Lowest piece value among attackers, or -1 if none.
  int cheapest(Square sq, Color by) const;
  /// Attacker values sorted ascending (king counted as a very large value).
  std::vector<int> values(Square sq, Color by) const;
  const ControlMap& control() const { return control_; }

 private:
  struct List {
    std::array<std::uint8_t, 16> types{};
    std::uint8_t count = 0;
  };
  std::array<std::array<List, 2>, 64> lists_{};
  ControlMap control_;
};

ControlMap square_control(const Position& position);

/// Material plus min(max(total control, -cap), cap), side-to-move perspective.
Score evaluate(const Position& position);
/// Same, reusing an attack map already built for `position`.
Score evaluate(const Position& position, const AttackMap& attacks);

/// Static exchange estimate of a capture on its target square, in centipawns,
/// from the capturer's view. Ignores x-rays and pins.
int static_exchange(const Position& position, const AttackMap& attacks, const Move& capture);

/// Safe captures first (best exchange first), then moves to squares the mover
/// controls (strongest control first), then everything else. Ties broken by
/// move key. Always a permutation of the input.
std::vector<Move> order_moves(const Position& position, std::span<const Move> moves);
std::vector<Move> order_moves(const Position& position, std::span<const Move> moves, const AttackMap& attacks);

/// Safe captures, safe retreats of pieces in danger, and checking moves.
std::vector<Move> quiescence_moves(const Position& position);
std::vector<Move> quiescence_moves(const Position& position, const AttackMap& attacks);

/// Individual quiescence classifiers, exposed for tests.
bool is_safe_capture(const Position& position, const AttackMap& attacks, const Move& move);
bool is_safe_forced(const Position& position, const AttackMap& attacks, const Move& move);
bool gives_check(const Position& position, const Move& move);

}  // namespace dmc
