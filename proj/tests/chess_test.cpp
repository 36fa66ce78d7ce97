#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "dmc/chess.hpp"
#include "oracle/brute_perft.hpp"

using namespace dmc;

namespace {

constexpr const char* kKiwipete =
    "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1";
constexpr const char* kStalemate = "7k/5Q2/6K1/8/8/8/8/8 b - - 0 1";

Move find_move(const Position& p, const std::string& uci) { return parse_uci_move(p, uci); }

}  // namespace

TEST(Fen, InitialPosition) {
  const Position p = Position::from_fen(kInitialFen);
  EXPECT_EQ(p.side_to_move(), Color::White);
  EXPECT_EQ(p.fullmove_number(), 1);
  EXPECT_EQ(p.piece_at(Square::at(4, 0)), (Piece{Color::White, PieceType::King}));
  EXPECT_EQ(p.piece_at(Square::at(3, 7)), (Piece{Color::Black, PieceType::Queen}));
  EXPECT_FALSE(p.piece_at(Square::at(4, 3)).has_value());
  EXPECT_TRUE(p.can_castle(Color::Black, false));
  EXPECT_EQ(p, Position::initial());
}

TEST(Fen, RoundTrip) {
  for (const char* fen : {kInitialFen.data(), kKiwipete, kStalemate,
                          "rnbqkbnr/ppp1p1pp/8/3pPp2/8/8/PPPP1PPP/RNBQKBNR w KQkq f6 0 3",
                          "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 12 40",
                          "r3k3/8/8/8/8/8/8/4K2R b Kq - 3 17"}) {
    EXPECT_EQ(Position::from_fen(fen).fen(), fen);
  }
}

TEST(Fen, RejectsMissingKings) {
  try {
    Position::from_fen("8/8/8/8/8/8/8/8 w - - 0 1");
    FAIL() << "expected FenError";
  } catch (const FenError& e) {
    EXPECT_EQ(e.field(), "placement");
  }
}

TEST(Fen, ErrorsNameTheField) {
  auto field_of = [](const std::string& fen) -> std::string {
    try {
      Position::from_fen(fen);
    } catch (const FenError& e) {
      return e.field();
    }
    return "";
  };
  EXPECT_EQ(field_of("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0"), "field count");
  EXPECT_EQ(field_of("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNX w KQkq - 0 1"), "placement");
  EXPECT_EQ(field_of("rnbqkbnr/pppppppp/9/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1"), "placement");
  EXPECT_EQ(field_of("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR x KQkq - 0 1"), "side to move");
  EXPECT_EQ(field_of("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQz - 0 1"), "castling");
  EXPECT_EQ(field_of("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq e9 0 1"), "en passant");
  EXPECT_EQ(field_of("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - -1 1"), "halfmove clock");
  EXPECT_EQ(field_of("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 0"), "fullmove number");
  EXPECT_EQ(field_of("4k3/4R3/8/8/8/8/8/4K3 w - - 0 1"), "side to move");
  EXPECT_EQ(field_of("4kk2/8/8/8/8/8/8/4K3 w - - 0 1"), "placement");
}

TEST(Squares, IndexLayout) {
  EXPECT_EQ(Square::parse("a1")->index(), 0);
  EXPECT_EQ(Square::parse("h1")->index(), 7);
  EXPECT_EQ(Square::parse("a2")->index(), 8);
  EXPECT_EQ(Square::parse("h8")->index(), 63);
  EXPECT_EQ(Square(28).name(), "e4");
  EXPECT_FALSE(Square::parse("i1").has_value());
  EXPECT_FALSE(Square::parse("a9").has_value());
}

TEST(MoveGen, InitialHasTwentyMoves) {
  const auto moves = Position::initial().legal_moves();
  ASSERT_EQ(moves.size(), 20u);
  int pawn = 0, knight = 0;
  for (const Move& m : moves) {
    if (m.piece == PieceType::Pawn) ++pawn;
    if (m.piece == PieceType::Knight) ++knight;
  }
  EXPECT_EQ(pawn, 16);
  EXPECT_EQ(knight, 4);
}

TEST(MoveGen, OracleAgreesWithKnownPerftValues) {
  // The brute-force oracle is checked against the published counts before it
  // is used to judge the engine.
  const std::string start(kInitialFen);
  EXPECT_EQ(oracle::brute_perft(start, 1), 20u);
  EXPECT_EQ(oracle::brute_perft(start, 2), 400u);
  EXPECT_EQ(oracle::brute_perft(start, 3), 8902u);
}

TEST(MoveGen, PerftMatchesOracleFromInitial) {
  const std::string start(kInitialFen);
  const Position p = Position::initial();
  for (int depth = 1; depth <= 3; ++depth) {
    EXPECT_EQ(perft(p, depth), oracle::brute_perft(start, depth)) << "depth " << depth;
  }
  EXPECT_EQ(perft(p, 4), 197281u);
}

TEST(MoveGen, PerftMatchesOracleOnTrickyPositions) {
  for (const char* fen : {kKiwipete, "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1",
                          "r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1",
                          "rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8"}) {
    const Position p = Position::from_fen(fen);
    for (int depth = 1; depth <= 3; ++depth) {
      EXPECT_EQ(perft(p, depth), oracle::brute_perft(fen, depth)) << fen << " depth " << depth;
    }
  }
}

TEST(MoveGen, StalemateHasNoMoves) {
  const auto board = oracle::brute_from_fen(kStalemate);
  ASSERT_TRUE(oracle::brute_children(board).empty());
  ASSERT_FALSE(oracle::brute_attacked(board, oracle::brute_king(board, false), true));

  const Position p = Position::from_fen(kStalemate);
  EXPECT_TRUE(p.legal_moves().empty());
  EXPECT_FALSE(p.in_check());
}

TEST(MoveGen, GenerationOrderIsDeterministic) {
  const Position p = Position::from_fen(kKiwipete);
  const auto a = p.legal_moves();
  const auto b = p.legal_moves();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].key(), b[i].key());
}

TEST(ApplyMove, DoublePushSetsEnPassant) {
  const Position p = Position::initial();
  const Position next = apply_move(p, find_move(p, "e2e4"));
  EXPECT_EQ(next.fen(), "rnbqkbnr/pppppppp/8/8/4P3/8/PPPP1PPP/RNBQKBNR b KQkq e3 0 1");
}

TEST(ApplyMove, ApplyThenUndoRestores) {
  Position p = Position::from_fen(kKiwipete);
  const Position before = p;
  for (const Move& m : before.legal_moves()) {
    const Undo undo = p.make(m);
    EXPECT_NE(p, before);
    p.unmake(m, undo);
    ASSERT_EQ(p, before) << m.uci();
  }
}

TEST(ApplyMove, IllegalMoveRejected) {
  const Position p = Position::initial();
  Move bogus;
  bogus.color = Color::White;
  bogus.piece = PieceType::Knight;
  bogus.from = *Square::parse("g1");
  bogus.to = *Square::parse("g3");
  EXPECT_THROW(apply_move(p, bogus), IllegalMoveError);
  EXPECT_EQ(p, Position::initial());
  EXPECT_THROW(parse_uci_move(p, "e2e5"), IllegalMoveError);
  EXPECT_THROW(parse_uci_move(p, "zz"), IllegalMoveError);
}

TEST(ApplyMove, CastlingEnPassantAndPromotion) {
  Position p = Position::from_fen("r3k2r/8/8/8/8/8/8/R3K2R w KQkq - 0 1");
  Position castled = apply_move(p, find_move(p, "e1g1"));
  EXPECT_EQ(castled.fen(), "r3k2r/8/8/8/8/8/8/R4RK1 b kq - 1 1");
  EXPECT_EQ(find_move(p, "e1c1").display(), "WKe1-c1");

  p = Position::from_fen("rnbqkbnr/ppp1p1pp/8/3pPp2/8/8/PPPP1PPP/RNBQKBNR w KQkq f6 0 3");
  const Move ep = find_move(p, "e5f6");
  EXPECT_TRUE(ep.en_passant);
  EXPECT_EQ(apply_move(p, ep).fen(), "rnbqkbnr/ppp1p1pp/5P2/3p4/8/8/PPPP1PPP/RNBQKBNR b KQkq - 0 3");

  p = Position::from_fen("8/P6k/8/8/8/8/8/K7 w - - 0 1");
  const Move promo = find_move(p, "a7a8n");
  EXPECT_EQ(promo.uci(), "a7a8n");
  EXPECT_EQ(promo.display(), "WPa7-a8=N");
  EXPECT_EQ(apply_move(p, promo).fen(), "N7/7k/8/8/8/8/8/K7 b - - 0 1");
}

TEST(PlaySequence, ExampleLine) {
  const Position p = Position::initial();
  std::vector<Move> line;
  Position cur = p;
  for (const char* uci : {"e2e4", "e7e5", "g1f3"}) {
    line.push_back(find_move(cur, uci));
    cur = apply_move(cur, line.back());
  }
  EXPECT_EQ(line[0].display(), "WPe2-e4");
  EXPECT_EQ(line[1].display(), "BPe7-e5");
  EXPECT_EQ(line[2].display(), "WNg1-f3");
  const auto result = play_sequence(p, line);
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result.position.piece_at(*Square::parse("f3")), (Piece{Color::White, PieceType::Knight}));
}

TEST(PlaySequence, EmptyIsIdentity) {
  const Position p = Position::initial();
  const auto result = play_sequence(p, {});
  EXPECT_TRUE(result.ok());
  EXPECT_EQ(result.position, p);
}

TEST(PlaySequence, WrongSideFailsAtIndexOne) {
  const Position p = Position::initial();
  const std::vector<Move> line = {find_move(p, "e2e4"), find_move(p, "d2d4")};
  const auto result = play_sequence(p, line);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(*result.failed_at, 1u);
  EXPECT_EQ(result.position, p);
}

TEST(Properties, RandomWalksUndoBitExact) {
  std::mt19937 rng(20240611);
  for (int walk = 0; walk < 1000; ++walk) {
    Position p = Position::initial();
    std::vector<std::pair<Move, Undo>> stack;
    std::vector<Position> snapshots;
    const int length = 1 + static_cast<int>(rng() % 80);
    for (int ply = 0; ply < length; ++ply) {
      const auto moves = p.legal_moves();
      if (moves.empty()) break;
      for (const Move& m : moves) {
        // Property: no generated move leaves the mover in check.
        Position child = p;
        child.make(m);
        ASSERT_FALSE(child.is_attacked(child.king_square(m.color), ~m.color));
      }
      const Move m = moves[rng() % moves.size()];
      snapshots.push_back(p);
      stack.emplace_back(m, p.make(m));
      ASSERT_EQ(Position::from_fen(p.fen()).fen(), p.fen());
    }
    while (!stack.empty()) {
      p.unmake(stack.back().first, stack.back().second);
      stack.pop_back();
      ASSERT_EQ(p, snapshots.back());
      snapshots.pop_back();
    }
    ASSERT_EQ(p, Position::initial());
  }
}

TEST(Properties, MirrorIsInvolution) {
  const Position p = Position::from_fen(kKiwipete);
  EXPECT_EQ(p.mirrored().mirrored(), p);
  EXPECT_EQ(p.mirrored().legal_moves().size(), p.legal_moves().size());
}
