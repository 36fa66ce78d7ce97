// Precomputed step and ray tables shared by move generation and evaluation.

#pragma once

#include <array>
#include <cstdint>

namespace dmc::detail {

struct StepList {
  std::array<std::uint8_t, 8> squares{};
  std::uint8_t count = 0;
};

struct Ray {
  std::array<std::uint8_t, 7> squares{};
  std::uint8_t count = 0;
};

// Direction order: N, S, E, W, NE, NW, SE, SW. The first four are orthogonal.
inline constexpr std::array<int, 8> kDirFile = {0, 0, 1, -1, 1, -1, 1, -1};
inline constexpr std::array<int, 8> kDirRank = {1, -1, 0, 0, 1, 1, -1, -1};
inline constexpr int kFirstDiagonal = 4;

struct AttackTables {
  std::array<StepList, 64> knight;
  std::array<StepList, 64> king;
  std::array<std::array<Ray, 8>, 64> rays;
  // pawn_attacks[color][sq]: squares a pawn of that colour on sq attacks.
  std::array<std::array<StepList, 64>, 2> pawn_attacks;
};

const AttackTables& attack_tables();

// Board square codes: 0 = empty, otherwise 1 + type + 6 * color.
constexpr std::uint8_t piece_code(int color, int type) {
  return static_cast<std::uint8_t>(1 + type + 6 * color);
}
constexpr int code_color(std::uint8_t code) { return (code - 1) / 6; }
constexpr int code_type(std::uint8_t code) { return (code - 1) % 6; }

}  // namespace dmc::detail
