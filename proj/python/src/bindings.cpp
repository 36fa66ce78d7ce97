// Python bindings. Moves cross the boundary as long-algebraic strings; lines
// are parsed against a starting position.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dmc/harness.hpp"
#include "dmc/search.hpp"

namespace py = pybind11;
using namespace dmc;

namespace {

std::vector<Move> parse_line(const Position& start, const std::vector<std::string>& uci) {
  std::vector<Move> out;
  Position p = start;
  for (const std::string& text : uci) {
    const Move m = parse_uci_move(p, text);
    p.make(m);
    out.push_back(m);
  }
  return out;
}

std::vector<std::string> to_uci(std::span<const Move> moves) {
  std::vector<std::string> out;
  out.reserve(moves.size());
  for (const Move& m : moves) out.push_back(m.uci());
  return out;
}

std::vector<std::vector<int>> grid(const std::array<int, 64>& cells) {
  // rank 8 first, file a first
  std::vector<std::vector<int>> rows(8, std::vector<int>(8));
  for (int r = 0; r < 8; ++r)
    for (int f = 0; f < 8; ++f) rows[7 - r][f] = cells[r * 8 + f];
  return rows;
}

py::dict stats_dict(const SearchStats& s) {
  py::dict d;
  d["negamax_nodes"] = s.negamax_nodes;
  d["quiescence_nodes"] = s.quiescence_nodes;
  d["replay_nodes"] = s.replay_nodes;
  d["chain_hits"] = s.chain_hits;
  d["chain_failures"] = s.chain_failures;
  d["table_paths_tried"] = s.table_paths_tried;
  d["table_paths_rejected"] = s.table_paths_rejected;
  d["table_usage_fraction"] = s.table_usage_fraction();
  d["tt_hits"] = s.tt_hits;
  d["depth_reached"] = s.depth_reached;
  d["elapsed_ms"] = s.elapsed_ms;
  return d;
}

py::dict result_dict(const SearchResult& r) {
  py::dict d;
  d["best_move"] = r.best_move.uci();
  d["value"] = r.value;
  d["pv"] = to_uci(r.principal_path);
  d["stats"] = stats_dict(r.stats);
  return d;
}

SearchConfig config_for(const std::string& spec, std::optional<int> depth) {
  NamedConfig nc = parse_config_spec(spec);
  if (depth) nc.cfg.max_depth = *depth;
  return nc.cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Chess search with dynamic move chains and move tables";

  py::register_exception<ChessError>(m, "ChessError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<GameRecordError>(m, "GameRecordError", PyExc_ValueError);

  py::enum_<Color>(m, "Color").value("WHITE", Color::White).value("BLACK", Color::Black);
  py::enum_<PieceType>(m, "PieceType")
      .value("PAWN", PieceType::Pawn)
      .value("KNIGHT", PieceType::Knight)
      .value("BISHOP", PieceType::Bishop)
      .value("ROOK", PieceType::Rook)
      .value("QUEEN", PieceType::Queen)
      .value("KING", PieceType::King);

  py::class_<Position>(m, "Position")
      .def(py::init([] { return Position::initial(); }))
      .def(py::init([](const std::string& fen) { return Position::from_fen(fen); }), py::arg("fen"))
      .def("fen", &Position::fen)
      .def_property_readonly("side_to_move", &Position::side_to_move)
      .def_property_readonly("fullmove_number", &Position::fullmove_number)
      .def("in_check", &Position::in_check)
      .def("legal_moves", [](const Position& p) { return to_uci(p.legal_moves()); })
      .def("push", [](Position& p, const std::string& uci) { p.make(parse_uci_move(p, uci)); }, py::arg("uci"))
      .def("after", [](const Position& p, const std::vector<std::string>& line) {
             Position q = p;
             for (const Move& mv : parse_line(p, line)) q.make(mv);
             return q;
           }, py::arg("line"))
      .def("__repr__", [](const Position& p) { return "Position('" + p.fen() + "')"; });

  m.def("perft", &perft, py::arg("position"), py::arg("depth"));
  m.def("evaluate", [](const Position& p) { return evaluate(p); }, "Static score for the side to move");
  m.def("square_control", [](const Position& p) { return grid(square_control(p).net); },
        "Net control per square (White positive), rank 8 first");
  m.def("quiescence_moves", [](const Position& p) { return to_uci(quiescence_moves(p)); });

  m.def("describe_config", [](const std::string& spec) { return describe_config(parse_config_spec(spec).cfg); },
        py::arg("spec"));

  m.def(
      "search",
      [](const Position& p, const std::string& spec, std::optional<int> depth, bool trace) {
        SearchConfig cfg = config_for(spec, depth);
        std::vector<std::string> events;
        if (trace) cfg.on_event = [&events](const SearchEvent& e) { events.push_back(format_event(e)); };
        ChainStore chains;
        MoveTableSet tables;
        SearchResult r;
        {
          py::gil_scoped_release release;
          r = search_root(p, chains, tables, cfg);
        }
        py::dict d = result_dict(r);
        if (trace) d["events"] = events;
        return d;
      },
      py::arg("position"), py::arg("config") = "chains+tables", py::arg("depth") = py::none(),
      py::arg("trace") = false, "One root search with fresh chains and tables");

  py::class_<Engine>(m, "Engine")
      .def(py::init([](const std::string& spec, std::optional<int> depth) { return Engine(config_for(spec, depth)); }),
           py::arg("config") = "chains+tables", py::arg("depth") = py::none())
      .def("think", [](Engine& e, const Position& p) {
             SearchResult r;
             {
               py::gil_scoped_release release;
               r = e.think(p);
             }
             return result_dict(r);
           })
      .def("reset", &Engine::reset)
      .def_property_readonly("chain_count", [](Engine& e) { return e.chains().size(); })
      .def_property_readonly("path_count", [](Engine& e) { return e.tables().path_count(); })
      .def("table", [](Engine& e, Color c, PieceType t) { return grid(e.tables().table(c, t).weights); })
      .def("dump_tables", [](Engine& e, const std::string& dir) {
        std::vector<std::string> out;
        for (const auto& f : dump_tables(e.tables(), dir)) out.push_back(f.string());
        return out;
      });

  py::class_<ChainStore>(m, "ChainStore")
      .def(py::init<std::size_t, std::size_t>(), py::arg("capacity") = ChainStore::kDefaultCapacity,
           py::arg("max_length") = ChainStore::kDefaultMaxLength)
      .def("record", [](ChainStore& s, const Position& start, const std::vector<std::string>& line, Score eval) {
             return s.record_cutoff(parse_line(start, line), eval);
           }, py::arg("start"), py::arg("line"), py::arg("eval"))
      .def("get", [](const ChainStore& s, const Position& p, const std::string& first) -> py::object {
             const MoveChain* c = s.get(parse_uci_move(p, first));
             if (!c) return py::none();
             return py::make_tuple(to_uci(c->moves), c->eval);
           }, py::arg("position"), py::arg("first"))
      .def("clear", &ChainStore::clear)
      .def("__len__", &ChainStore::size)
      .def("dump", &ChainStore::dump);

  py::class_<MoveTableSet>(m, "MoveTables")
      .def(py::init<int>(), py::arg("removal_floor") = MoveTableSet::kDefaultRemovalFloor)
      .def("reinforce", [](MoveTableSet& t, const Position& start, const std::vector<std::string>& line, Score eval,
                           int move_no) { return t.reinforce_path(parse_line(start, line), eval, move_no); },
           py::arg("start"), py::arg("line"), py::arg("eval"), py::arg("move_no") = 1)
      .def("penalize", &MoveTableSet::penalize_path, py::arg("path_id"))
      .def("tidy", &MoveTableSet::tidy, py::arg("current_move_no"), py::arg("move_range"))
      .def("get_paths", [](const MoveTableSet& t, const Position& p, int beam_x, int threshold) {
             py::list out;
             for (const TablePath* path : t.get_paths(p, beam_x, threshold))
               out.append(py::make_tuple(path->id, to_uci(path->moves), path->weight, path->avg_eval()));
             return out;
           }, py::arg("position"), py::arg("beam_x") = 4, py::arg("threshold") = 0)
      .def("table", [](const MoveTableSet& t, Color c, PieceType p) { return grid(t.table(c, p).weights); })
      .def("importance", [](const MoveTableSet& t, Color c, PieceType p) {
             const ImportanceMap im = t.importance_map(c, p);
             std::vector<std::vector<std::string>> rows(8, std::vector<std::string>(8));
             for (int sq = 0; sq < 64; ++sq) rows[7 - sq / 8][sq % 8] = std::string(bucket_name(im.bucket[sq]));
             return rows;
           })
      .def("__len__", &MoveTableSet::path_count);

  m.def(
      "bench",
      [](const std::string& game_path, const std::string& configs, int depth, std::size_t max_positions) {
        const GameRecord record = load_game(game_path);
        BenchOptions opt;
        opt.depth = depth;
        opt.max_positions = max_positions;
        BenchReport report;
        {
          py::gil_scoped_release release;
          report = bench(record, parse_config_list(configs), opt);
        }
        py::list out;
        for (const BenchAggregate& a : report.aggregates) {
          py::dict d;
          d["config"] = a.config;
          d["positions"] = a.positions;
          d["mean_negamax_nodes"] = a.mean_negamax_nodes;
          d["mean_quiescence_nodes"] = a.mean_quiescence_nodes;
          d["chain_hits"] = a.chain_hits;
          d["chain_failures"] = a.chain_failures;
          d["table_paths_tried"] = a.table_paths_tried;
          d["table_paths_rejected"] = a.table_paths_rejected;
          d["table_usage_fraction"] = a.table_usage_fraction;
          d["times_less"] = a.times_less;
          out.append(d);
        }
        return out;
      },
      py::arg("game_path"), py::arg("configs") = "standard;chains;chains+beam4", py::arg("depth") = 5,
      py::arg("max_positions") = 0, "Per-config aggregates over the positions of a game record");

  m.attr("DATA_DIR") = DMC_DATA_DIR;
}
