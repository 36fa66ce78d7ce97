#include "dmc/evaluation.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "chess/attack_tables.hpp"

namespace dmc {

namespace {

using detail::attack_tables;

// King value inside exchange sequences: never worth giving up.
constexpr int kKingExchangeValue = 20000;

int exchange_value(PieceType t) {
  return t == PieceType::King ? kKingExchangeValue : piece_value(t);
}

// Net material gain for the side making the first capture on a square.
// `attackers` starts with the first capturer; both lists are in capture order.
int swap_gain(int victim, const std::vector<int>& attackers, const std::vector<int>& defenders) {
  if (attackers.empty()) return 0;
  std::vector<int> gains{victim};
  int on_square = attackers[0];
  std::size_t next_attacker = 1;
  std::size_t next_defender = 0;
  bool defenders_turn = true;
  while (true) {
    const auto& list = defenders_turn ? defenders : attackers;
    std::size_t& idx = defenders_turn ? next_defender : next_attacker;
    if (idx >= list.size()) break;
    gains.push_back(on_square - gains.back());
    on_square = list[idx++];
    defenders_turn = !defenders_turn;
  }
  for (std::size_t i = gains.size() - 1; i > 0; --i) {
    gains[i - 1] = -std::max(-gains[i - 1], gains[i]);
  }
  return gains[0];
}

// Attacker values of one colour on a square, computed directly from the board.
std::vector<int> attackers_on(const Position& p, Square sq, Color by) {
  const auto& t = attack_tables();
  const int s = sq.index();
  std::vector<int> out;
  auto is = [&](int at, PieceType type) {
    const auto piece = p.piece_at(Square(at));
    return piece && piece->color == by && piece->type == type;
  };
  const auto& pawn_from = t.pawn_attacks[1 - index_of(by)][s];
  for (int i = 0; i < pawn_from.count; ++i) {
    if (is(pawn_from.squares[i], PieceType::Pawn)) out.push_back(exchange_value(PieceType::Pawn));
  }
  for (int i = 0; i < t.knight[s].count; ++i) {
    if (is(t.knight[s].squares[i], PieceType::Knight)) out.push_back(exchange_value(PieceType::Knight));
  }
  for (int i = 0; i < t.king[s].count; ++i) {
    if (is(t.king[s].squares[i], PieceType::King)) out.push_back(exchange_value(PieceType::King));
  }
  for (int d = 0; d < 8; ++d) {
    const PieceType slider = d < detail::kFirstDiagonal ? PieceType::Rook : PieceType::Bishop;
    const auto& ray = t.rays[s][d];
    for (int i = 0; i < ray.count; ++i) {
      const auto piece = p.piece_at(Square(ray.squares[i]));
      if (!piece) continue;
      if (piece->color == by && (piece->type == slider || piece->type == PieceType::Queen)) {
        out.push_back(exchange_value(piece->type));
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int ControlMap::total() const {
  int sum = 0;
  for (int v : net) sum += v;
  return sum;
}

std::string ControlMap::to_text() const {
  std::ostringstream out;
  for (int rank = 7; rank >= 0; --rank) {
    for (int file = 0; file < 8; ++file) {
      out << std::setw(4) << net[rank * 8 + file];
    }
    out << '\n';
  }
  return out.str();
}

AttackMap::AttackMap(const Position& position) {
  const auto& t = attack_tables();
  auto hit = [&](int sq, int color, PieceType type) {
    List& list = lists_[sq][color];
    list.types[list.count++] = static_cast<std::uint8_t>(type);
    const int w = kControlWeights[index_of(type)];
    control_.net[sq] += color == 0 ? w : -w;
  };
  for (int from = 0; from < 64; ++from) {
    const auto piece = position.piece_at(Square(from));
    if (!piece) continue;
    const int c = index_of(piece->color);
    switch (piece->type) {
      case PieceType::Pawn: {
        const auto& steps = t.pawn_attacks[c][from];
        for (int i = 0; i < steps.count; ++i) hit(steps.squares[i], c, piece->type);
        break;
      }
      case PieceType::Knight:
      case PieceType::King: {
        const auto& steps = piece->type == PieceType::Knight ? t.knight[from] : t.king[from];
        for (int i = 0; i < steps.count; ++i) hit(steps.squares[i], c, piece->type);
        break;
      }
      default: {
        const int first = piece->type == PieceType::Bishop ? detail::kFirstDiagonal : 0;
        const int last = piece->type == PieceType::Rook ? detail::kFirstDiagonal : 8;
        for (int d = first; d < last; ++d) {
          const auto& ray = t.rays[from][d];
          for (int i = 0; i < ray.count; ++i) {
            hit(ray.squares[i], c, piece->type);
            if (position.piece_at(Square(ray.squares[i]))) break;
          }
        }
      }
    }
  }
}

int AttackMap::cheapest(Square sq, Color by) const {
  const auto v = values(sq, by);
  return v.empty() ? -1 : v.front();
}

std::vector<int> AttackMap::values(Square sq, Color by) const {
  const List& list = lists_[sq.index()][index_of(by)];
  std::vector<int> out;
  out.reserve(list.count);
  for (int i = 0; i < list.count; ++i) out.push_back(exchange_value(static_cast<PieceType>(list.types[i])));
  std::sort(out.begin(), out.end());
  return out;
}

ControlMap square_control(const Position& position) { return AttackMap(position).control(); }

Score evaluate(const Position& position) { return evaluate(position, AttackMap(position)); }

Score evaluate(const Position& position, const AttackMap& attacks) {
  int material = 0;
  for (int sq = 0; sq < 64; ++sq) {
    const auto piece = position.piece_at(Square(sq));
    if (!piece) continue;
    material += piece->color == Color::White ? piece_value(piece->type) : -piece_value(piece->type);
  }
  const int control = std::clamp(attacks.control().total(), -kControlBonusCap, kControlBonusCap);
  const int white_view = material + control;
  return position.side_to_move() == Color::White ? white_view : -white_view;
}

int static_exchange(const Position& position, const AttackMap& attacks, const Move& capture) {
  const Color us = capture.color;
  int victim = 0;
  if (capture.en_passant) {
    victim = piece_value(PieceType::Pawn);
  } else if (const auto target = position.piece_at(capture.to)) {
    victim = piece_value(target->type);
  }
  int first = exchange_value(capture.piece);
  if (capture.promotion) {
    victim += piece_value(*capture.promotion) - piece_value(PieceType::Pawn);
    first = piece_value(*capture.promotion);
  }
  std::vector<int> ours = attacks.values(capture.to, us);
  if (const auto it = std::find(ours.begin(), ours.end(), exchange_value(capture.piece)); it != ours.end()) {
    ours.erase(it);
  }
  ours.insert(ours.begin(), first);
  return swap_gain(victim, ours, attacks.values(capture.to, ~us));
}

bool is_safe_capture(const Position& position, const AttackMap& attacks, const Move& move) {
  return move.capture && static_exchange(position, attacks, move) >= 0;
}

bool is_safe_forced(const Position& position, const AttackMap& attacks, const Move& move) {
  if (move.capture || move.piece == PieceType::King) return false;
  const Color us = move.color;
  const int value = piece_value(move.piece);

  // In danger: attacked by something cheaper, or losing the exchange on its square.
  const auto threats = attacks.values(move.from, ~us);
  if (threats.empty()) return false;
  const bool in_danger = threats.front() < value || swap_gain(value, threats, attacks.values(move.from, us)) > 0;
  if (!in_danger) return false;

  // Safe destination: the opponent cannot win material by capturing there.
  Position after = position;
  after.make(move);
  const Square dest = move.to;
  const PieceType landed = move.promotion.value_or(move.piece);
  const auto enemy = attackers_on(after, dest, ~us);
  if (enemy.empty()) return true;
  return swap_gain(piece_value(landed), enemy, attackers_on(after, dest, us)) <= 0;
}

namespace {

bool aligned(Square a, Square b, bool orthogonal, bool diagonal) {
  const int df = a.file() - b.file();
  const int dr = a.rank() - b.rank();
  if (df == 0 && dr == 0) return false;
  if (orthogonal && (df == 0 || dr == 0)) return true;
  return diagonal && std::abs(df) == std::abs(dr);
}

// Cheap geometric screen: false means the move cannot give check.
bool may_give_check(const Position& position, const Move& move) {
  if (move.castle || move.en_passant || move.promotion) return true;
  const Square king = position.king_square(~move.color);
  if (aligned(move.from, king, true, true)) return true;  // discovered check
  const int df = std::abs(move.to.file() - king.file());
  const int dr = move.to.rank() - king.rank();
  switch (move.piece) {
    case PieceType::Pawn: return df == 1 && dr == (move.color == Color::White ? -1 : 1);
    case PieceType::Knight: return (df == 1 && std::abs(dr) == 2) || (df == 2 && std::abs(dr) == 1);
    case PieceType::Bishop: return aligned(move.to, king, false, true);
    case PieceType::Rook: return aligned(move.to, king, true, false);
    case PieceType::Queen: return aligned(move.to, king, true, true);
    case PieceType::King: return false;
  }
  return true;
}

}  // namespace

bool gives_check(const Position& position, const Move& move) {
  if (!may_give_check(position, move)) return false;
  Position after = position;
  after.make(move);
  return after.in_check();
}

std::vector<Move> order_moves(const Position& position, std::span<const Move> moves) {
  return order_moves(position, moves, AttackMap(position));
}

std::vector<Move> order_moves(const Position& position, std::span<const Move> moves, const AttackMap& attacks) {
  struct Keyed {
    int category;
    int secondary;
    std::uint32_t key;
    Move move;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(moves.size());
  for (const Move& m : moves) {
    Keyed k{2, 0, m.key(), m};
    if (m.capture) {
      const int see = static_exchange(position, attacks, m);
      if (see >= 0) {
        k.category = 0;
        k.secondary = -see;
      }
    }
    if (k.category == 2) {
      const int net = attacks.control().at(m.to);
      const int ours = m.color == Color::White ? net : -net;
      if (ours > 0) {
        k.category = 1;
        k.secondary = -ours;
      }
    }
    keyed.push_back(k);
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.category != b.category) return a.category < b.category;
    if (a.secondary != b.secondary) return a.secondary < b.secondary;
    return a.key < b.key;
  });
  std::vector<Move> out;
  out.reserve(keyed.size());
  for (const auto& k : keyed) out.push_back(k.move);
  return out;
}

std::vector<Move> quiescence_moves(const Position& position) { return quiescence_moves(position, AttackMap(position)); }

std::vector<Move> quiescence_moves(const Position& position, const AttackMap& attacks) {
  std::vector<Move> out;
  for (const Move& m : position.legal_moves()) {
    if (is_safe_capture(position, attacks, m) || is_safe_forced(position, attacks, m) ||
        gives_check(position, m)) {
      out.push_back(m);
    }
  }
  return out;
}

}  // namespace dmc
