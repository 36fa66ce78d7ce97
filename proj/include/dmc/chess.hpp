// Chess rules: board representation, legal move generation, make/unmake and
// FEN / move text conversion.
//
// Squares are numbered a1 = 0, b1 = 1, ..., h1 = 7, a2 = 8, ..., h8 = 63
// (file-major within rank). Move tables and CSV dumps rely on this layout.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dmc {

enum class Color : std::uint8_t { White = 0, Black = 1 };

constexpr Color operator~(Color c) {
  return c == Color::White ? Color::Black : Color::White;
}

constexpr int index_of(Color c) { return static_cast<int>(c); }

enum class PieceType : std::uint8_t { Pawn = 0, Knight, Bishop, Rook, Queen, King };

constexpr int kPieceTypeCount = 6;

constexpr int index_of(PieceType t) { return static_cast<int>(t); }

struct Piece {
  Color color;
  PieceType type;

  friend constexpr bool operator==(Piece, Piece) = default;
};

char piece_letter(PieceType type);  // upper-case: P N B R Q K
char color_letter(Color color);     // W or B

class Square {
 public:
  constexpr Square() = default;
  constexpr explicit Square(int index) : index_(static_cast<std::uint8_t>(index)) {}

  static constexpr Square at(int file, int rank) { return Square(rank * 8 + file); }
  /// Parses "e4" style names; nullopt on anything else.
  static std::optional<Square> parse(std::string_view text);

  constexpr int index() const { return index_; }
  constexpr int file() const { return index_ & 7; }
  constexpr int rank() const { return index_ >> 3; }
  /// Same file, rank mirrored (a1 <-> a8).
  constexpr Square flipped() const { return Square(index_ ^ 56); }
  std::string name() const;

  friend constexpr auto operator<=>(Square, Square) = default;

 private:
  std::uint8_t index_ = 0;
};

struct Move {
  Color color = Color::White;
  PieceType piece = PieceType::Pawn;
  Square from;
  Square to;
  std::optional<PieceType> promotion;
  bool capture = false;
  bool castle = false;
  bool en_passant = false;
  bool double_push = false;

  /// Identity used for chain and table keying: (color, piece, from, to,
  /// promotion). Castling is identified by the king's displacement.
  std::uint32_t key() const;

  /// Long algebraic form, "e2e4" or "e7e8q".
  std::string uci() const;
  /// Log form with colour and piece, "WPe2-e4" ("WPe7-e8=Q" for promotions).
  std::string display() const;

  friend bool operator==(const Move& a, const Move& b) { return a.key() == b.key(); }
};

class ChessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FenError : public ChessError {
 public:
  FenError(std::string field, const std::string& detail);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class IllegalMoveError : public ChessError {
 public:
  using ChessError::ChessError;
};

/// Everything make() needs to restore the prior state bit-exactly.
struct Undo {
  std::uint8_t captured = 0;
  std::uint8_t castling = 0;
  std::int8_t en_passant = -1;
  std::uint16_t halfmove_clock = 0;
  std::uint64_t hash = 0;
};

inline constexpr std::string_view kInitialFen =
    "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

class Position {
 public:
  static Position initial();
  /// Parses a 6-field FEN string. Throws FenError naming the offending field.
  static Position from_fen(std::string_view text);

  std::string fen() const;

  std::optional<Piece> piece_at(Square sq) const;
  Color side_to_move() const { return side_; }
  bool can_castle(Color color, bool kingside) const;
  std::optional<Square> en_passant() const;
  int halfmove_clock() const { return halfmove_clock_; }
  int fullmove_number() const { return fullmove_number_; }
  std::uint64_t hash() const { return hash_; }
  Square king_square(Color color) const { return kings_[index_of(color)]; }

  bool is_attacked(Square sq, Color by) const;
  bool in_check() const { return is_attacked(king_square(side_), ~side_); }

  /// Legal moves for the side to move, in a fixed deterministic order
  /// (origin square ascending, then per-piece direction order).
  std::vector<Move> legal_moves() const;
  bool is_legal(const Move& move) const;

  /// Plays a move known to be legal. No validation.
  Undo make(const Move& move);
  void unmake(const Move& move, const Undo& undo);

  /// Colour-flipped mirror image: ranks reversed, colours swapped.
  Position mirrored() const;

  friend bool operator==(const Position&, const Position&) = default;

 private:
  std::uint8_t code_at(int sq) const { return board_[sq]; }
  void put(int sq, std::uint8_t code);
  void remove(int sq);
  void generate_pseudo(std::vector<Move>& out) const;
  std::uint64_t compute_hash() const;

  std::array<std::uint8_t, 64> board_{};
  Color side_ = Color::White;
  std::uint8_t castling_ = 0;  // bit 0 K, 1 Q, 2 k, 3 q
  std::int8_t en_passant_ = -1;
  std::uint16_t halfmove_clock_ = 0;
  std::uint16_t fullmove_number_ = 1;
  std::array<Square, 2> kings_{};
  std::uint64_t hash_ = 0;
};

/// Returns the position after a legal move. Throws IllegalMoveError otherwise.
Position apply_move(const Position& position, const Move& move);

struct SequenceResult {
  Position position;                   // final position, or the original on failure
  std::optional<std::size_t> failed_at;  // index of the first illegal move

  bool ok() const { return !failed_at.has_value(); }
};

SequenceResult play_sequence(const Position& position, std::span<const Move> moves);

/// Finds the legal move matching long algebraic text. Throws IllegalMoveError.
Move parse_uci_move(const Position& position, std::string_view text);

std::uint64_t perft(const Position& position, int depth);

/// True when consecutive moves alternate colours (vacuously true for 0 or 1).
bool alternates_colors(std::span<const Move> moves);

/// Space-separated display forms ("WPe2-e4 BPe7-e5").
std::string format_line(std::span<const Move> moves);

}  // namespace dmc
