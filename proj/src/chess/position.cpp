#include <algorithm>
#include <charconv>
#include <sstream>

#include "chess/attack_tables.hpp"
#include "dmc/chess.hpp"

namespace dmc {

using detail::attack_tables;
using detail::code_color;
using detail::code_type;
using detail::piece_code;

namespace {

constexpr std::uint8_t kWhiteKingside = 1;
constexpr std::uint8_t kWhiteQueenside = 2;
constexpr std::uint8_t kBlackKingside = 4;
constexpr std::uint8_t kBlackQueenside = 8;

struct Zobrist {
  std::array<std::array<std::uint64_t, 64>, 13> piece_square{};
  std::array<std::uint64_t, 16> castling{};
  std::array<std::uint64_t, 8> en_passant_file{};
  std::uint64_t black_to_move = 0;
};

const Zobrist& zobrist() {
  static const Zobrist z = [] {
    Zobrist out;
    std::uint64_t state = 0x9E3779B97F4A7C15ULL;
    auto next = [&state] {
      // splitmix64
      std::uint64_t x = (state += 0x9E3779B97F4A7C15ULL);
      x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
      x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
      return x ^ (x >> 31);
    };
    for (int code = 1; code < 13; ++code) {
      for (auto& v : out.piece_square[code]) v = next();
    }
    for (auto& v : out.castling) v = next();
    for (auto& v : out.en_passant_file) v = next();
    out.black_to_move = next();
    return out;
  }();
  return z;
}

// Castling-right mask cleared when a move touches the square.
constexpr std::uint8_t castle_mask_for(int sq) {
  switch (sq) {
    case 0: return kWhiteQueenside;
    case 4: return kWhiteKingside | kWhiteQueenside;
    case 7: return kWhiteKingside;
    case 56: return kBlackQueenside;
    case 60: return kBlackKingside | kBlackQueenside;
    case 63: return kBlackKingside;
    default: return 0;
  }
}

constexpr std::array<PieceType, 4> kPromotionOrder = {PieceType::Queen, PieceType::Rook,
                                                      PieceType::Bishop, PieceType::Knight};

std::optional<int> parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<std::uint8_t> code_from_letter(char c) {
  static constexpr std::string_view letters = "PNBRQK";
  const bool black = c >= 'a' && c <= 'z';
  const char upper = black ? static_cast<char>(c - 'a' + 'A') : c;
  const auto pos = letters.find(upper);
  if (pos == std::string_view::npos) return std::nullopt;
  return piece_code(black ? 1 : 0, static_cast<int>(pos));
}

char letter_from_code(std::uint8_t code) {
  const char upper = "PNBRQK"[code_type(code)];
  return code_color(code) == 1 ? static_cast<char>(upper - 'A' + 'a') : upper;
}

}  // namespace

char piece_letter(PieceType type) { return "PNBRQK"[index_of(type)]; }
char color_letter(Color color) { return color == Color::White ? 'W' : 'B'; }

std::optional<Square> Square::parse(std::string_view text) {
  if (text.size() != 2) return std::nullopt;
  const int file = text[0] - 'a';
  const int rank = text[1] - '1';
  if (file < 0 || file > 7 || rank < 0 || rank > 7) return std::nullopt;
  return Square::at(file, rank);
}

std::string Square::name() const {
  return {static_cast<char>('a' + file()), static_cast<char>('1' + rank())};
}

std::uint32_t Move::key() const {
  const std::uint32_t promo = promotion ? 1u + static_cast<std::uint32_t>(*promotion) : 0u;
  return static_cast<std::uint32_t>(to.index()) |
         (static_cast<std::uint32_t>(from.index()) << 6) |
         (static_cast<std::uint32_t>(piece) << 12) | (static_cast<std::uint32_t>(color) << 15) |
         (promo << 16);
}

std::string Move::uci() const {
  std::string out = from.name() + to.name();
  if (promotion) out += static_cast<char>(piece_letter(*promotion) - 'A' + 'a');
  return out;
}

std::string Move::display() const {
  std::string out{color_letter(color), piece_letter(piece)};
  out += from.name();
  out += '-';
  out += to.name();
  if (promotion) {
    out += '=';
    out += piece_letter(*promotion);
  }
  return out;
}

FenError::FenError(std::string field, const std::string& detail)
    : ChessError("invalid FEN " + field + ": " + detail), field_(std::move(field)) {}

Position Position::initial() { return from_fen(kInitialFen); }

void Position::put(int sq, std::uint8_t code) {
  board_[sq] = code;
  hash_ ^= zobrist().piece_square[code][sq];
  if (code_type(code) == index_of(PieceType::King)) kings_[code_color(code)] = Square(sq);
}

void Position::remove(int sq) {
  hash_ ^= zobrist().piece_square[board_[sq]][sq];
  board_[sq] = 0;
}

std::uint64_t Position::compute_hash() const {
  const Zobrist& z = zobrist();
  std::uint64_t h = 0;
  for (int sq = 0; sq < 64; ++sq) {
    if (board_[sq] != 0) h ^= z.piece_square[board_[sq]][sq];
  }
  h ^= z.castling[castling_];
  if (en_passant_ >= 0) h ^= z.en_passant_file[en_passant_ & 7];
  if (side_ == Color::Black) h ^= z.black_to_move;
  return h;
}

Position Position::from_fen(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> fields;
  for (std::string f; in >> f;) fields.push_back(f);
  if (fields.size() != 6) {
    throw FenError("field count", "expected 6 fields, got " + std::to_string(fields.size()));
  }

  Position p;
  std::array<int, 2> king_count{};
  std::array<int, 2> pawn_count{};
  std::array<int, 2> piece_count{};

  // Placement, rank 8 first.
  int rank = 7;
  int file = 0;
  for (char c : fields[0]) {
    if (c == '/') {
      if (file != 8) throw FenError("placement", "rank " + std::to_string(rank + 1) + " is not 8 squares");
      --rank;
      file = 0;
      if (rank < 0) throw FenError("placement", "more than 8 ranks");
      continue;
    }
    if (c >= '1' && c <= '8') {
      file += c - '0';
      if (file > 8) throw FenError("placement", "rank " + std::to_string(rank + 1) + " overflows");
      continue;
    }
    const auto code = code_from_letter(c);
    if (!code) throw FenError("placement", std::string("unknown piece letter '") + c + "'");
    if (file > 7) throw FenError("placement", "rank " + std::to_string(rank + 1) + " overflows");
    const int color = code_color(*code);
    const int type = code_type(*code);
    if (type == index_of(PieceType::Pawn) && (rank == 0 || rank == 7)) {
      throw FenError("placement", "pawn on back rank");
    }
    if (type == index_of(PieceType::King)) ++king_count[color];
    if (type == index_of(PieceType::Pawn)) ++pawn_count[color];
    ++piece_count[color];
    p.board_[rank * 8 + file] = *code;
    if (type == index_of(PieceType::King)) p.kings_[color] = Square(rank * 8 + file);
    ++file;
  }
  if (rank != 0 || file != 8) throw FenError("placement", "expected 8 complete ranks");
  if (king_count[0] == 0 && king_count[1] == 0) throw FenError("placement", "both kings missing");
  for (int c = 0; c < 2; ++c) {
    const char* name = c == 0 ? "white" : "black";
    if (king_count[c] != 1) {
      throw FenError("placement", std::string(name) + " must have exactly one king");
    }
    if (pawn_count[c] > 8) throw FenError("placement", std::string(name) + " has more than 8 pawns");
    if (piece_count[c] > 16) throw FenError("placement", std::string(name) + " has more than 16 pieces");
  }

  if (fields[1] == "w") {
    p.side_ = Color::White;
  } else if (fields[1] == "b") {
    p.side_ = Color::Black;
  } else {
    throw FenError("side to move", "expected 'w' or 'b'");
  }

  if (fields[2] != "-") {
    for (char c : fields[2]) {
      std::uint8_t bit = 0;
      int king_sq = 0;
      int rook_sq = 0;
      int color = 0;
      switch (c) {
        case 'K': bit = kWhiteKingside; king_sq = 4; rook_sq = 7; color = 0; break;
        case 'Q': bit = kWhiteQueenside; king_sq = 4; rook_sq = 0; color = 0; break;
        case 'k': bit = kBlackKingside; king_sq = 60; rook_sq = 63; color = 1; break;
        case 'q': bit = kBlackQueenside; king_sq = 60; rook_sq = 56; color = 1; break;
        default: throw FenError("castling", std::string("unknown flag '") + c + "'");
      }
      if (p.castling_ & bit) throw FenError("castling", std::string("duplicate flag '") + c + "'");
      if (p.board_[king_sq] != piece_code(color, index_of(PieceType::King)) ||
          p.board_[rook_sq] != piece_code(color, index_of(PieceType::Rook))) {
        throw FenError("castling", std::string("flag '") + c + "' without king and rook at home");
      }
      p.castling_ |= bit;
    }
  }

  if (fields[3] != "-") {
    const auto ep = Square::parse(fields[3]);
    const int expected_rank = p.side_ == Color::White ? 5 : 2;
    if (!ep || ep->rank() != expected_rank) {
      throw FenError("en passant", "'" + fields[3] + "' is not a valid target square");
    }
    const int pawn_sq = p.side_ == Color::White ? ep->index() - 8 : ep->index() + 8;
    const int pushed_color = p.side_ == Color::White ? 1 : 0;
    if (p.board_[pawn_sq] != piece_code(pushed_color, index_of(PieceType::Pawn)) ||
        p.board_[ep->index()] != 0) {
      throw FenError("en passant", "no double-pushed pawn behind " + fields[3]);
    }
    p.en_passant_ = static_cast<std::int8_t>(ep->index());
  }

  const auto halfmove = parse_int(fields[4]);
  if (!halfmove || *halfmove < 0 || *halfmove > 0xFFFF) {
    throw FenError("halfmove clock", "'" + fields[4] + "' is not a non-negative integer");
  }
  p.halfmove_clock_ = static_cast<std::uint16_t>(*halfmove);
  const auto fullmove = parse_int(fields[5]);
  if (!fullmove || *fullmove < 1 || *fullmove > 0xFFFF) {
    throw FenError("fullmove number", "'" + fields[5] + "' is not a positive integer");
  }
  p.fullmove_number_ = static_cast<std::uint16_t>(*fullmove);

  if (p.is_attacked(p.king_square(~p.side_), p.side_)) {
    throw FenError("side to move", "the side not to move is in check");
  }
  p.hash_ = p.compute_hash();
  return p;
}

std::string Position::fen() const {
  std::string out;
  for (int rank = 7; rank >= 0; --rank) {
    int empty = 0;
    for (int file = 0; file < 8; ++file) {
      const std::uint8_t code = board_[rank * 8 + file];
      if (code == 0) {
        ++empty;
        continue;
      }
      if (empty) out += static_cast<char>('0' + empty);
      empty = 0;
      out += letter_from_code(code);
    }
    if (empty) out += static_cast<char>('0' + empty);
    if (rank) out += '/';
  }
  out += side_ == Color::White ? " w " : " b ";
  if (castling_ == 0) {
    out += '-';
  } else {
    if (castling_ & kWhiteKingside) out += 'K';
    if (castling_ & kWhiteQueenside) out += 'Q';
    if (castling_ & kBlackKingside) out += 'k';
    if (castling_ & kBlackQueenside) out += 'q';
  }
  out += ' ';
  out += en_passant_ >= 0 ? Square(en_passant_).name() : "-";
  out += ' ' + std::to_string(halfmove_clock_) + ' ' + std::to_string(fullmove_number_);
  return out;
}

std::optional<Piece> Position::piece_at(Square sq) const {
  const std::uint8_t code = board_[sq.index()];
  if (code == 0) return std::nullopt;
  return Piece{static_cast<Color>(code_color(code)), static_cast<PieceType>(code_type(code))};
}

bool Position::can_castle(Color color, bool kingside) const {
  const std::uint8_t bit = color == Color::White ? (kingside ? kWhiteKingside : kWhiteQueenside)
                                                 : (kingside ? kBlackKingside : kBlackQueenside);
  return (castling_ & bit) != 0;
}

std::optional<Square> Position::en_passant() const {
  if (en_passant_ < 0) return std::nullopt;
  return Square(en_passant_);
}

bool Position::is_attacked(Square sq, Color by) const {
  const auto& t = attack_tables();
  const int s = sq.index();
  const int c = index_of(by);
  // A pawn of colour `by` attacks s from the squares a pawn of the other colour on s would attack.
  const auto& pawn_from = t.pawn_attacks[1 - c][s];
  for (int i = 0; i < pawn_from.count; ++i) {
    if (board_[pawn_from.squares[i]] == piece_code(c, index_of(PieceType::Pawn))) return true;
  }
  const auto& kn = t.knight[s];
  for (int i = 0; i < kn.count; ++i) {
    if (board_[kn.squares[i]] == piece_code(c, index_of(PieceType::Knight))) return true;
  }
  const auto& kg = t.king[s];
  for (int i = 0; i < kg.count; ++i) {
    if (board_[kg.squares[i]] == piece_code(c, index_of(PieceType::King))) return true;
  }
  const std::uint8_t queen = piece_code(c, index_of(PieceType::Queen));
  for (int d = 0; d < 8; ++d) {
    const std::uint8_t slider = d < detail::kFirstDiagonal ? piece_code(c, index_of(PieceType::Rook))
                                                           : piece_code(c, index_of(PieceType::Bishop));
    const auto& ray = t.rays[s][d];
    for (int i = 0; i < ray.count; ++i) {
      const std::uint8_t code = board_[ray.squares[i]];
      if (code == 0) continue;
      if (code == slider || code == queen) return true;
      break;
    }
  }
  return false;
}

void Position::generate_pseudo(std::vector<Move>& out) const {
  const auto& t = attack_tables();
  const int us = index_of(side_);
  const Color color = side_;

  auto add = [&](PieceType piece, int from, int to) {
    Move m;
    m.color = color;
    m.piece = piece;
    m.from = Square(from);
    m.to = Square(to);
    m.capture = board_[to] != 0;
    out.push_back(m);
  };

  for (int from = 0; from < 64; ++from) {
    const std::uint8_t code = board_[from];
    if (code == 0 || code_color(code) != us) continue;
    const auto type = static_cast<PieceType>(code_type(code));
    switch (type) {
      case PieceType::Pawn: {
        const int dir = us == 0 ? 8 : -8;
        const int start_rank = us == 0 ? 1 : 6;
        const int last_rank = us == 0 ? 7 : 0;
        auto add_pawn = [&](int to, bool capture, bool ep) {
          if (to >> 3 == last_rank) {
            for (PieceType promo : kPromotionOrder) {
              Move m;
              m.color = color;
              m.piece = PieceType::Pawn;
              m.from = Square(from);
              m.to = Square(to);
              m.promotion = promo;
              m.capture = capture;
              out.push_back(m);
            }
            return;
          }
          Move m;
          m.color = color;
          m.piece = PieceType::Pawn;
          m.from = Square(from);
          m.to = Square(to);
          m.capture = capture;
          m.en_passant = ep;
          out.push_back(m);
        };
        const int one = from + dir;
        if (board_[one] == 0) {
          add_pawn(one, false, false);
          const int two = one + dir;
          if (from >> 3 == start_rank && board_[two] == 0) {
            Move m;
            m.color = color;
            m.piece = PieceType::Pawn;
            m.from = Square(from);
            m.to = Square(two);
            m.double_push = true;
            out.push_back(m);
          }
        }
        const auto& caps = t.pawn_attacks[us][from];
        for (int i = 0; i < caps.count; ++i) {
          const int to = caps.squares[i];
          if (board_[to] != 0 && code_color(board_[to]) != us) {
            add_pawn(to, true, false);
          } else if (to == en_passant_) {
            add_pawn(to, true, true);
          }
        }
        break;
      }
      case PieceType::Knight:
      case PieceType::King: {
        const auto& steps = type == PieceType::Knight ? t.knight[from] : t.king[from];
        for (int i = 0; i < steps.count; ++i) {
          const int to = steps.squares[i];
          if (board_[to] == 0 || code_color(board_[to]) != us) add(type, from, to);
        }
        if (type == PieceType::King) {
          const int home = us == 0 ? 4 : 60;
          if (from == home && !is_attacked(Square(home), ~side_)) {
            if (can_castle(color, true) && board_[home + 1] == 0 && board_[home + 2] == 0 &&
                !is_attacked(Square(home + 1), ~side_)) {
              Move m;
              m.color = color;
              m.piece = PieceType::King;
              m.from = Square(home);
              m.to = Square(home + 2);
              m.castle = true;
              out.push_back(m);
            }
            if (can_castle(color, false) && board_[home - 1] == 0 && board_[home - 2] == 0 &&
                board_[home - 3] == 0 && !is_attacked(Square(home - 1), ~side_)) {
              Move m;
              m.color = color;
              m.piece = PieceType::King;
              m.from = Square(home);
              m.to = Square(home - 2);
              m.castle = true;
              out.push_back(m);
            }
          }
        }
        break;
      }
      case PieceType::Bishop:
      case PieceType::Rook:
      case PieceType::Queen: {
        const int first = type == PieceType::Bishop ? detail::kFirstDiagonal : 0;
        const int last = type == PieceType::Rook ? detail::kFirstDiagonal : 8;
        for (int d = first; d < last; ++d) {
          const auto& ray = t.rays[from][d];
          for (int i = 0; i < ray.count; ++i) {
            const int to = ray.squares[i];
            if (board_[to] == 0) {
              add(type, from, to);
              continue;
            }
            if (code_color(board_[to]) != us) add(type, from, to);
            break;
          }
        }
        break;
      }
    }
  }
}

std::vector<Move> Position::legal_moves() const {
  std::vector<Move> pseudo;
  pseudo.reserve(64);
  generate_pseudo(pseudo);
  std::vector<Move> legal;
  legal.reserve(pseudo.size());
  // Out of check, a non-king move can only expose the king along the line
  // through its from-square; moves off every such line need no test.
  const Square king = king_square(side_);
  const bool checked = is_attacked(king, ~side_);
  auto on_king_line = [&](Square sq) {
    const int df = sq.file() - king.file();
    const int dr = sq.rank() - king.rank();
    return df == 0 || dr == 0 || df == dr || df == -dr;
  };
  Position scratch = *this;
  for (const Move& m : pseudo) {
    if (!checked && m.piece != PieceType::King && !m.en_passant && !on_king_line(m.from)) {
      legal.push_back(m);
      continue;
    }
    const Undo undo = scratch.make(m);
    if (!scratch.is_attacked(scratch.king_square(side_), ~side_)) legal.push_back(m);
    scratch.unmake(m, undo);
  }
  return legal;
}

bool Position::is_legal(const Move& move) const {
  if (move.color != side_) return false;
  const auto here = piece_at(move.from);
  if (!here || here->color != move.color || here->type != move.piece) return false;
  for (const Move& m : legal_moves()) {
    if (m.key() == move.key()) return true;
  }
  return false;
}

Undo Position::make(const Move& m) {
  const Zobrist& z = zobrist();
  Undo undo;
  undo.castling = castling_;
  undo.en_passant = en_passant_;
  undo.halfmove_clock = halfmove_clock_;
  undo.hash = hash_;

  const int from = m.from.index();
  const int to = m.to.index();
  const int us = index_of(side_);

  if (en_passant_ >= 0) hash_ ^= z.en_passant_file[en_passant_ & 7];
  en_passant_ = -1;

  if (m.en_passant) {
    const int victim = us == 0 ? to - 8 : to + 8;
    undo.captured = board_[victim];
    remove(victim);
  } else if (board_[to] != 0) {
    undo.captured = board_[to];
    remove(to);
  }

  const std::uint8_t moving = board_[from];
  remove(from);
  put(to, m.promotion ? piece_code(us, index_of(*m.promotion)) : moving);

  if (m.castle) {
    const bool kingside = to > from;
    const int rook_from = kingside ? from + 3 : from - 4;
    const int rook_to = kingside ? from + 1 : from - 1;
    const std::uint8_t rook = board_[rook_from];
    remove(rook_from);
    put(rook_to, rook);
  }

  hash_ ^= z.castling[castling_];
  castling_ &= static_cast<std::uint8_t>(~(castle_mask_for(from) | castle_mask_for(to)));
  hash_ ^= z.castling[castling_];

  if (m.double_push) {
    en_passant_ = static_cast<std::int8_t>((from + to) / 2);
    hash_ ^= z.en_passant_file[en_passant_ & 7];
  }

  if (m.piece == PieceType::Pawn || undo.captured != 0) {
    halfmove_clock_ = 0;
  } else {
    ++halfmove_clock_;
  }
  if (side_ == Color::Black) ++fullmove_number_;
  side_ = ~side_;
  hash_ ^= z.black_to_move;
  return undo;
}

void Position::unmake(const Move& m, const Undo& undo) {
  side_ = ~side_;
  if (side_ == Color::Black) --fullmove_number_;
  const int from = m.from.index();
  const int to = m.to.index();
  const int us = index_of(side_);

  if (m.castle) {
    const bool kingside = to > from;
    const int rook_from = kingside ? from + 3 : from - 4;
    const int rook_to = kingside ? from + 1 : from - 1;
    board_[rook_from] = board_[rook_to];
    board_[rook_to] = 0;
  }
  board_[from] = m.promotion ? piece_code(us, index_of(PieceType::Pawn)) : board_[to];
  board_[to] = 0;
  if (undo.captured != 0) {
    const int victim = m.en_passant ? (us == 0 ? to - 8 : to + 8) : to;
    board_[victim] = undo.captured;
  }
  if (m.piece == PieceType::King) kings_[us] = m.from;

  castling_ = undo.castling;
  en_passant_ = undo.en_passant;
  halfmove_clock_ = undo.halfmove_clock;
  hash_ = undo.hash;
}

Position Position::mirrored() const {
  Position out;
  for (int sq = 0; sq < 64; ++sq) {
    const std::uint8_t code = board_[sq];
    if (code == 0) continue;
    const int flipped_sq = sq ^ 56;
    out.board_[flipped_sq] = piece_code(1 - code_color(code), code_type(code));
    if (code_type(code) == index_of(PieceType::King)) out.kings_[1 - code_color(code)] = Square(flipped_sq);
  }
  out.side_ = ~side_;
  out.castling_ = static_cast<std::uint8_t>(((castling_ & 3) << 2) | ((castling_ >> 2) & 3));
  out.en_passant_ = en_passant_ >= 0 ? static_cast<std::int8_t>(en_passant_ ^ 56) : -1;
  out.halfmove_clock_ = halfmove_clock_;
  out.fullmove_number_ = fullmove_number_;
  out.hash_ = out.compute_hash();
  return out;
}

Position apply_move(const Position& position, const Move& move) {
  for (const Move& m : position.legal_moves()) {
    if (m.key() == move.key()) {
      Position next = position;
      next.make(m);
      return next;
    }
  }
  throw IllegalMoveError("illegal move " + move.display() + " in " + position.fen());
}

SequenceResult play_sequence(const Position& position, std::span<const Move> moves) {
  Position current = position;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    bool found = false;
    for (const Move& m : current.legal_moves()) {
      if (m.key() == moves[i].key()) {
        current.make(m);
        found = true;
        break;
      }
    }
    if (!found) return {position, i};
  }
  return {current, std::nullopt};
}

Move parse_uci_move(const Position& position, std::string_view text) {
  if (text.size() == 4 || text.size() == 5) {
    const auto from = Square::parse(text.substr(0, 2));
    const auto to = Square::parse(text.substr(2, 2));
    std::optional<PieceType> promo;
    bool valid = from && to;
    if (text.size() == 5) {
      switch (text[4]) {
        case 'q': promo = PieceType::Queen; break;
        case 'r': promo = PieceType::Rook; break;
        case 'b': promo = PieceType::Bishop; break;
        case 'n': promo = PieceType::Knight; break;
        default: valid = false;
      }
    }
    if (valid) {
      for (const Move& m : position.legal_moves()) {
        if (m.from == *from && m.to == *to && m.promotion == promo) return m;
      }
    }
  }
  throw IllegalMoveError("illegal or malformed move '" + std::string(text) + "' in " + position.fen());
}

std::uint64_t perft(const Position& position, int depth) {
  if (depth <= 0) return 1;
  const auto moves = position.legal_moves();
  if (depth == 1) return moves.size();
  std::uint64_t total = 0;
  Position scratch = position;
  for (const Move& m : moves) {
    const Undo undo = scratch.make(m);
    total += perft(scratch, depth - 1);
    scratch.unmake(m, undo);
  }
  return total;
}

bool alternates_colors(std::span<const Move> moves) {
  for (std::size_t i = 1; i < moves.size(); ++i) {
    if (moves[i].color == moves[i - 1].color) return false;
  }
  return true;
}

std::string format_line(std::span<const Move> moves) {
  std::string out;
  for (const Move& m : moves) {
    if (!out.empty()) out += ' ';
    out += m.display();
  }
  return out;
}

}  // namespace dmc
