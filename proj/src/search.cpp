#include "dmc/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>

namespace dmc {

namespace {

using Clock = std::chrono::steady_clock;

struct Aborted {};

// Mate scores are stored relative to the node so they stay valid at other plies.
Score to_tt(Score v, int ply) {
  if (v > kMate - 1000) return v + ply;
  if (v < -kMate + 1000) return v - ply;
  return v;
}
Score from_tt(Score v, int ply) {
  if (v > kMate - 1000) return v - ply;
  if (v < -kMate + 1000) return v + ply;
  return v;
}

const Move* find_legal(const std::vector<Move>& legal, const Move& wanted) {
  for (const Move& m : legal) {
    if (m.key() == wanted.key()) return &m;
  }
  return nullptr;
}

struct Replay {
  std::optional<Score> value;
  std::vector<Move> played;
};

class Searcher {
 public:
  Searcher(ChainStore& chains, MoveTableSet& tables, const SearchConfig& cfg, SearchStats& stats,
           TranspositionTable* tt, int move_no)
      : chains_(chains), tables_(tables), cfg_(cfg), stats_(stats), tt_(tt), move_no_(move_no) {}

  void set_deadline(std::optional<Clock::time_point> deadline) { deadline_ = deadline; }

  Score negamax(Position& pos, int depth, int ply, Score alpha, Score beta, std::vector<Move>& pv);
  Score quiescence(Position& pos, Score alpha, Score beta, int qply);
  Replay replay(Position& pos, std::span<const Move> path, int max_plies, int ply);

 private:
  struct Item {
    Move move;
    bool standard_only = false;
  };

  void poll_time() {
    if (deadline_ && (++poll_counter_ & 1023) == 0 && Clock::now() >= *deadline_) throw Aborted{};
  }
  void emit(EventType type, int ply, int depth, const Move& move, double stored, Score replayed,
            std::span<const Move> line = {}, bool legal = true, bool cutoff = false) {
    if (!cfg_.on_event) return;
    SearchEvent e;
    e.type = type;
    e.ply = ply;
    e.depth = depth;
    e.move = move;
    e.stored = stored;
    e.replayed = replayed;
    e.legal = legal;
    e.cutoff = cutoff;
    e.line.assign(line.begin(), line.end());
    cfg_.on_event(e);
  }
  bool outside_window(Score value, double stored) const {
    return std::abs(static_cast<double>(value) - stored) > cfg_.reliability_window;
  }
  void store_line(std::span<const Move> line, Score value, int ply, int depth, bool cutoff);

  ChainStore& chains_;
  MoveTableSet& tables_;
  const SearchConfig& cfg_;
  SearchStats& stats_;
  TranspositionTable* tt_;
  int move_no_;
  std::optional<Clock::time_point> deadline_;
  std::uint32_t poll_counter_ = 0;
};

Score Searcher::quiescence(Position& pos, Score alpha, Score beta, int qply) {
  ++stats_.quiescence_nodes;
  poll_time();
  const AttackMap attacks(pos);
  Score best = evaluate(pos, attacks);
  if (best >= beta || qply >= kQuiescencePlyCap) return best;
  alpha = std::max(alpha, best);
  const std::vector<Move> moves = quiescence_moves(pos, attacks);
  for (const Move& m : order_moves(pos, moves, attacks)) {
    const Undo undo = pos.make(m);
    const Score v = -quiescence(pos, -beta, -alpha, qply + 1);
    pos.unmake(m, undo);
    if (v > best) {
      best = v;
      if (best > alpha) alpha = best;
      if (alpha >= beta) break;
    }
  }
  return best;
}

Replay Searcher::replay(Position& pos, std::span<const Move> path, int max_plies, int ply) {
  Replay out;
  const int n = std::min<int>(static_cast<int>(path.size()), max_plies);
  std::vector<std::pair<Move, Undo>> undo;
  undo.reserve(n);
  bool legal = true;
  for (int i = 0; i < n; ++i) {
    const std::vector<Move> moves = pos.legal_moves();
    const Move* m = find_legal(moves, path[i]);
    if (!m) {
      legal = false;
      break;
    }
    ++stats_.replay_nodes;
    undo.emplace_back(*m, pos.make(*m));
    out.played.push_back(*m);
  }
  if (legal) {
    Score q;
    if (pos.legal_moves().empty()) {
      q = pos.in_check() ? -kMate + ply + n : 0;
    } else {
      q = quiescence(pos, -kInfinity, kInfinity, 0);
    }
    out.value = (n % 2 == 1) ? -q : q;
  }
  for (auto it = undo.rbegin(); it != undo.rend(); ++it) pos.unmake(it->first, it->second);
  return out;
}

void Searcher::store_line(std::span<const Move> line, Score value, int ply, int depth, bool cutoff) {
  if (line.empty()) return;
  if (cfg_.use_tables) tables_.reinforce_path(line, value, move_no_);
  if (cfg_.use_chains && (cfg_.chains_on == ChainsOn::Window || cutoff)) {
    if (chains_.record_cutoff(line, value, depth)) {
      emit(EventType::ChainStore, ply, depth, line.front(), value, value, line, true, cutoff);
    }
  }
}

Score Searcher::negamax(Position& pos, int depth, int ply, Score alpha, Score beta, std::vector<Move>& pv) {
  pv.clear();
  if (depth <= 0) return quiescence(pos, alpha, beta, 0);
  ++stats_.negamax_nodes;
  poll_time();

  const Score alpha_orig = alpha;
  std::uint32_t tt_move = 0;
  if (tt_ && cfg_.use_transposition_table) {
    if (const auto e = tt_->probe(pos.hash())) {
      tt_move = e->move_key;
      if (ply > 0 && e->depth >= depth) {
        const Score v = from_tt(e->value, ply);
        if (e->bound == Bound::Exact || (e->bound == Bound::Lower && v >= beta) ||
            (e->bound == Bound::Upper && v <= alpha)) {
          ++stats_.tt_hits;
          return v;
        }
      }
    }
  }

  const std::vector<Move> legal = pos.legal_moves();
  if (legal.empty()) return pos.in_check() ? -kMate + ply : 0;

  std::vector<Item> items;
  items.reserve(legal.size());
  for (const Move& m : order_moves(pos, legal)) items.push_back({m, false});
  if (tt_move != 0) {
    const auto it = std::find_if(items.begin(), items.end(), [&](const Item& i) { return i.move.key() == tt_move; });
    if (it != items.end()) std::rotate(items.begin(), it, it + 1);
  }

  Score best = -kInfinity;
  std::vector<Move> best_line;
  std::vector<Move> child_pv;

  if (cfg_.use_tables) {
    ++stats_.table_nodes_queried;
    struct Candidate {
      PathId id;
      std::vector<Move> moves;
      double avg;
    };
    std::vector<Candidate> candidates;
    for (const TablePath* p : tables_.get_paths(pos, cfg_.beam_x, cfg_.threshold, cfg_.rank)) {
      candidates.push_back({p->id, p->moves, p->avg_eval()});
    }
    if (!candidates.empty()) ++stats_.table_nodes_with_paths;
    for (const Candidate& c : candidates) {
      const auto key = c.moves.front().key();
      items.erase(std::remove_if(items.begin(), items.end(), [&](const Item& i) { return i.move.key() == key; }),
                  items.end());
    }
    std::vector<Item> readd;
    for (const Candidate& c : candidates) {
      ++stats_.table_paths_tried;
      if (cfg_.table_path_mode == TablePathMode::Search) {
        // Ablation: the path's first move gets a full search instead of a replay.
        const Move& m = *find_legal(legal, c.moves.front());
        const Undo undo = pos.make(m);
        const Score v = -negamax(pos, depth - 1, ply + 1, -beta, -std::max(alpha, best), child_pv);
        pos.unmake(m, undo);
        emit(EventType::PathTry, ply, depth, m, c.avg, v, c.moves);
        if (outside_window(v, c.avg)) {
          ++stats_.table_paths_rejected;
          emit(EventType::PathReject, ply, depth, m, c.avg, v, c.moves);
          tables_.penalize_path(c.id);
        }
        if (v > best) {
          best = v;
          best_line.assign(1, m);
          best_line.insert(best_line.end(), child_pv.begin(), child_pv.end());
        }
        if (std::max(alpha, best) >= beta) break;
        continue;
      }
      const Replay r = replay(pos, c.moves, depth, ply);
      emit(EventType::PathTry, ply, depth, c.moves.front(), c.avg, r.value.value_or(0), c.moves, r.value.has_value());
      if (!r.value || outside_window(*r.value, c.avg)) {
        ++stats_.table_paths_rejected;
        emit(EventType::PathReject, ply, depth, c.moves.front(), c.avg, r.value.value_or(0), c.moves,
             r.value.has_value());
        tables_.penalize_path(c.id);
        const auto key = c.moves.front().key();
        const bool queued = std::any_of(readd.begin(), readd.end(), [&](const Item& i) { return i.move.key() == key; });
        if (!queued) {
          if (const Move* m = find_legal(legal, c.moves.front())) readd.push_back({*m, true});
        }
      } else if (*r.value > best) {
        best = *r.value;
        best_line = r.played;
      }
    }
    items.insert(items.begin(), readd.begin(), readd.end());
    if (best > alpha) {
      alpha = best;
      store_line(best_line, best, ply, depth, best >= beta);
    }
  }

  for (const Item& item : items) {
    if (alpha >= beta) break;
    const Move& m = item.move;
    std::optional<Score> value;
    std::vector<Move> line;

    bool research = item.standard_only;
    if (cfg_.use_chains && !item.standard_only) {
      if (const MoveChain* stored = chains_.get(m)) {
        const MoveChain chain = *stored;
        Replay r = replay(pos, chain.moves, depth, ply);
        if (r.value && !outside_window(*r.value, chain.eval)) {
          ++stats_.chain_hits;
          emit(EventType::ChainHit, ply, depth, m, chain.eval, *r.value, chain.moves);
          value = r.value;
          line = std::move(r.played);
        } else {
          ++stats_.chain_failures;
          emit(EventType::ChainFail, ply, depth, m, chain.eval, r.value.value_or(0), chain.moves,
               r.value.has_value());
          chains_.invalidate(m);
          research = true;
        }
      }
    }

    if (!value) {
      const Undo undo = pos.make(m);
      const Score v = -negamax(pos, depth - 1, ply + 1, -beta, -alpha, child_pv);
      pos.unmake(m, undo);
      value = v;
      line.clear();
      line.push_back(m);
      line.insert(line.end(), child_pv.begin(), child_pv.end());
      if (research) emit(EventType::Research, ply, depth, m, 0, v, line);
    }

    if (*value > best) {
      best = *value;
      best_line = std::move(line);
    }
    if (best > alpha) {
      alpha = best;
      store_line(best_line, best, ply, depth, best >= beta);
      if (alpha >= beta) emit(EventType::Cutoff, ply, depth, m, best, best, best_line);
    }
  }

  if (tt_ && cfg_.use_transposition_table) {
    const Bound bound = best <= alpha_orig ? Bound::Upper : best >= beta ? Bound::Lower : Bound::Exact;
    tt_->store(pos.hash(), depth, to_tt(best, ply), bound, best_line.empty() ? 0 : best_line.front().key());
  }
  pv = best_line;
  return best;
}

}  // namespace

std::string_view event_name(EventType type) {
  switch (type) {
    case EventType::Cutoff: return "CUTOFF";
    case EventType::ChainHit: return "CHAIN_HIT";
    case EventType::ChainFail: return "CHAIN_FAIL";
    case EventType::ChainStore: return "CHAIN_STORE";
    case EventType::PathTry: return "PATH_TRY";
    case EventType::PathReject: return "PATH_REJECT";
    case EventType::Research: return "RESEARCH";
  }
  return "?";
}

std::string format_event(const SearchEvent& e) {
  char stored[32];
  std::snprintf(stored, sizeof stored, "%.2f", e.stored);
  std::string out(event_name(e.type));
  out += " ply=" + std::to_string(e.ply) + " depth=" + std::to_string(e.depth) + " move=" + e.move.display() +
         " stored=" + stored + " replayed=" + (e.legal ? std::to_string(e.replayed) : std::string("illegal"));
  if (e.type == EventType::ChainStore) out += e.cutoff ? " reason=cutoff" : " reason=window";
  if (!e.line.empty()) out += " line=" + format_line(e.line);
  return out;
}

SearchStats& SearchStats::operator+=(const SearchStats& o) {
  negamax_nodes += o.negamax_nodes;
  quiescence_nodes += o.quiescence_nodes;
  replay_nodes += o.replay_nodes;
  chain_hits += o.chain_hits;
  chain_failures += o.chain_failures;
  table_paths_tried += o.table_paths_tried;
  table_paths_rejected += o.table_paths_rejected;
  table_nodes_queried += o.table_nodes_queried;
  table_nodes_with_paths += o.table_nodes_with_paths;
  tt_hits += o.tt_hits;
  depth_reached = std::max(depth_reached, o.depth_reached);
  elapsed_ms += o.elapsed_ms;
  return *this;
}

SearchResult search_root(const Position& position, ChainStore& chains, MoveTableSet& tables,
                         const SearchConfig& cfg, TranspositionTable* tt) {
  const auto start = Clock::now();
  if (position.legal_moves().empty()) throw NoLegalMovesError(position.in_check());

  std::unique_ptr<TranspositionTable> own_tt;
  if (cfg.use_transposition_table && !tt) {
    own_tt = std::make_unique<TranspositionTable>();
    tt = own_tt.get();
  }
  if (tt) tt->new_search();
  if (!cfg.persist_chains) chains.clear();
  if (cfg.use_tables) tables.tidy(position.fullmove_number(), cfg.move_range);

  SearchResult result;
  Searcher searcher(chains, tables, cfg, result.stats, tt, position.fullmove_number());
  std::optional<Clock::time_point> deadline;
  if (cfg.time_limit_ms) deadline = start + std::chrono::milliseconds(*cfg.time_limit_ms);

  const int max_depth = std::max(1, cfg.max_depth);
  std::vector<Move> pv;
  for (int depth = 1; depth <= max_depth; ++depth) {
    searcher.set_deadline(depth > 1 ? deadline : std::nullopt);
    Position work = position;
    Score value;
    try {
      if (depth > 1 && cfg.aspiration) {
        const Score lo = result.value - cfg.aspiration_half_width;
        const Score hi = result.value + cfg.aspiration_half_width;
        value = searcher.negamax(work, depth, 0, lo, hi, pv);
        if (value <= lo || value >= hi) {
          work = position;
          value = searcher.negamax(work, depth, 0, -kInfinity, kInfinity, pv);
        }
      } else {
        value = searcher.negamax(work, depth, 0, -kInfinity, kInfinity, pv);
      }
    } catch (const Aborted&) {
      break;
    }
    result.value = value;
    result.principal_path = pv;
    result.best_move = pv.front();
    result.stats.depth_reached = depth;
    if (deadline && Clock::now() - start >= (*deadline - start) / 2) break;
  }
  result.stats.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return result;
}

Score negamax(Position& position, int depth, Score alpha, Score beta, ChainStore& chains, MoveTableSet& tables,
              const SearchConfig& cfg, SearchStats& stats, std::vector<Move>* principal_path,
              TranspositionTable* tt) {
  Searcher searcher(chains, tables, cfg, stats, tt, position.fullmove_number());
  std::vector<Move> pv;
  const Score v = searcher.negamax(position, depth, 0, alpha, beta, pv);
  if (principal_path) *principal_path = std::move(pv);
  return v;
}

Score quiescence(Position& position, Score alpha, Score beta, SearchStats& stats) {
  ChainStore chains(1);
  MoveTableSet tables;
  const SearchConfig cfg;
  Searcher searcher(chains, tables, cfg, stats, nullptr, 0);
  return searcher.quiescence(position, alpha, beta, 0);
}

std::optional<Score> path_then_quiescence(Position& position, std::span<const Move> path, int max_plies,
                                          SearchStats& stats, int ply) {
  ChainStore chains(1);
  MoveTableSet tables;
  const SearchConfig cfg;
  Searcher searcher(chains, tables, cfg, stats, nullptr, 0);
  return searcher.replay(position, path, max_plies, ply).value;
}

Engine::Engine(SearchConfig cfg)
    : cfg_(std::move(cfg)), tt_(cfg_.use_transposition_table ? TranspositionTable::kDefaultEntries : 1) {}

SearchResult Engine::think(const Position& position) {
  if (cfg_.use_transposition_table && tt_.size() < TranspositionTable::kDefaultEntries) tt_ = TranspositionTable();
  return search_root(position, chains_, tables_, cfg_, cfg_.use_transposition_table ? &tt_ : nullptr);
}

void Engine::reset() {
  chains_.clear();
  tables_ = MoveTableSet(tables_.removal_floor());
  tt_.clear();
}

}  // namespace dmc
