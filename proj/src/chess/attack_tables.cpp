#include "chess/attack_tables.hpp"

namespace dmc::detail {
namespace {

bool on_board(int file, int rank) { return file >= 0 && file < 8 && rank >= 0 && rank < 8; }

void add_step(StepList& list, int file, int rank) {
  if (on_board(file, rank)) {
    list.squares[list.count++] = static_cast<std::uint8_t>(rank * 8 + file);
  }
}

AttackTables build() {
  AttackTables t{};
  constexpr std::array<std::array<int, 2>, 8> knight_offsets = {
      {{1, 2}, {2, 1}, {2, -1}, {1, -2}, {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}}};
  for (int sq = 0; sq < 64; ++sq) {
    const int f = sq & 7;
    const int r = sq >> 3;
    for (auto [df, dr] : knight_offsets) add_step(t.knight[sq], f + df, r + dr);
    for (int d = 0; d < 8; ++d) {
      add_step(t.king[sq], f + kDirFile[d], r + kDirRank[d]);
      Ray& ray = t.rays[sq][d];
      for (int nf = f + kDirFile[d], nr = r + kDirRank[d]; on_board(nf, nr);
           nf += kDirFile[d], nr += kDirRank[d]) {
        ray.squares[ray.count++] = static_cast<std::uint8_t>(nr * 8 + nf);
      }
    }
    add_step(t.pawn_attacks[0][sq], f - 1, r + 1);
    add_step(t.pawn_attacks[0][sq], f + 1, r + 1);
    add_step(t.pawn_attacks[1][sq], f - 1, r - 1);
    add_step(t.pawn_attacks[1][sq], f + 1, r - 1);
  }
  return t;
}

}  // namespace

const AttackTables& attack_tables() {
  static const AttackTables tables = build();
  return tables;
}

}  // namespace dmc::detail
