#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "knightmagic/classify.hpp"
#include "knightmagic/emperor.hpp"
#include "knightmagic/filter.hpp"
#include "knightmagic/fixtures.hpp"
#include "knightmagic/search.hpp"
#include "knightmagic/tour.hpp"

namespace py = pybind11;
using namespace knightmagic;

namespace {

using Rows = std::vector<std::vector<int>>;

Rows rows_of(const Tour& t) {
  Rows out(t.dims.height(), std::vector<int>(t.dims.width()));
  for (int i = 0; i < t.dims.cells(); ++i) out[i / t.dims.width()][i % t.dims.width()] = t.grid[i];
  return out;
}

// rows as printed; a grid wider than tall is transposed
Tour tour_of(const Rows& rows) {
  if (rows.empty() || rows[0].empty()) throw std::invalid_argument("empty grid");
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(rows[0].size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != w) throw std::invalid_argument("ragged grid");
  }
  const BoardDims d(w, h);
  Tour t{d, std::vector<int>(d.cells())};
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (d.width() == w) {
        t.grid[d.index({c, r})] = rows[r][c];
      } else {
        t.grid[d.index({r, c})] = rows[r][c];
      }
    }
  }
  return t;
}

Filter make_filter(const std::optional<std::string>& cls, const std::optional<std::string>& expr) {
  Filter f;
  if (cls) f = f & Filter::of_class(*cls);
  if (expr) f = f & Filter::parse(*expr);
  return f;
}

SearchSpec make_spec(const std::string& board, const std::string& closure, const std::string& mode,
                     const std::optional<std::string>& cls, const std::optional<std::string>& expr,
                     int threads, std::uint64_t max_nodes, double time_limit) {
  SearchSpec s;
  s.dims = BoardDims::parse(board);
  s.closure = parse_closure(closure);
  s.mode = parse_mode(mode);
  s.filter = make_filter(cls, expr);
  s.threads = threads;
  s.max_nodes = max_nodes;
  s.time_limit_s = time_limit;
  return s;
}

py::dict stats_dict(const SearchSpec& s, const SearchResult& r) {
  py::dict d;
  d["board"] = s.dims.str();
  d["closure"] = std::string(to_string(s.closure));
  d["filter"] = s.filter.str();
  d["mode"] = std::string(to_string(s.mode));
  d["count"] = r.count;
  d["open"] = r.open;
  d["closed"] = r.closed;
  d["raw"] = r.raw;
  if (r.diagrams) d["diagrams"] = *r.diagrams;
  d["nodes"] = r.stats.nodes;
  d["pruned"] = r.stats.pruned();
  d["elapsed_ms"] = r.stats.elapsed_ms;
  d["workers"] = r.stats.workers;
  return d;
}

py::dict report_dict(const ClassificationReport& r) {
  py::dict d;
  d["class"] = to_token(r.cls);
  d["short_sums"] = r.profile.short_sums;
  d["long_sums"] = r.profile.long_sums;
  d["short_mc"] = r.constants.short_is_integral ? py::object(py::int_(r.constants.short_mc))
                                                 : py::object(py::none());
  d["long_mc"] = r.constants.long_is_integral ? py::object(py::int_(r.constants.long_mc))
                                               : py::object(py::none());
  d["off_direction_distinct_values"] = r.off_direction_distinct_values;
  d["contains_mc"] = r.contains_mc;
  return d;
}

py::dict verdict_dict(const FixtureVerdict& v) {
  py::dict d;
  d["id"] = v.id;
  d["status"] = std::string(to_string(v.status));
  d["class"] = v.actual_class;
  d["reasons"] = v.reasons;
  return d;
}

}  // namespace

PYBIND11_MODULE(_knightmagic, m) {
  m.doc() = "Knight's tour magic enumeration";

  py::register_exception<SearchAborted>(m, "SearchAborted", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  py::class_<Tour>(m, "Tour")
      .def(py::init(&tour_of), py::arg("rows"))
      .def_property_readonly("board", [](const Tour& t) { return t.dims.str(); })
      .def_property_readonly("width", [](const Tour& t) { return t.dims.width(); })
      .def_property_readonly("height", [](const Tour& t) { return t.dims.height(); })
      .def_property_readonly("rows", &rows_of)
      .def("validate",
           [](const Tour& t) {
             const auto c = validate_tour(t);
             return py::make_tuple(c.ok, c.violation);
           })
      .def("is_closed", &is_closed)
      .def("reverse", &reverse_tour)
      .def("canonical", &frenicle_canonical)
      .def("geometric", &geometric_class)
      .def("format", &format_tour)
      .def("__eq__", [](const Tour& a, const Tour& b) { return a == b; })
      .def("__hash__", [](const Tour& t) { return py::hash(py::tuple(py::cast(t.grid))); })
      .def("__repr__", [](const Tour& t) { return "<Tour " + t.dims.str() + ">"; });

  m.def("parse_tour", [](const std::string& text) { return parse_tour(text); }, py::arg("text"));

  m.def("classify", [](const Tour& t) { return report_dict(classify(t)); }, py::arg("tour"));

  m.def(
      "magic_constants",
      [](const std::string& board) {
        const auto mc = magic_constants(BoardDims::parse(board));
        py::dict d;
        d["total"] = mc.total;
        d["short_mc"] = mc.short_is_integral ? py::object(py::int_(mc.short_mc)) : py::none();
        d["long_mc"] = mc.long_is_integral ? py::object(py::int_(mc.long_mc)) : py::none();
        return d;
      },
      py::arg("board"));

  m.def(
      "feasibility",
      [](const std::string& board) {
        const auto v = magic_feasibility(BoardDims::parse(board));
        py::dict d;
        d["status"] = std::string(to_string(v.status));
        d["reason"] = v.reason;
        return d;
      },
      py::arg("board"));

  m.def(
      "count",
      [](const std::string& board, const std::string& closure, const std::string& mode,
         std::optional<std::string> cls, std::optional<std::string> filter, int threads,
         std::uint64_t max_nodes, double time_limit) {
        const auto s = make_spec(board, closure, mode, cls, filter, threads, max_nodes, time_limit);
        SearchResult r;
        {
          py::gil_scoped_release nogil;
          r = count_tours(s);
        }
        return stats_dict(s, r);
      },
      py::arg("board"), py::arg("closure") = "any", py::arg("mode") = "arithmetic",
      py::arg("cls") = py::none(), py::arg("filter") = py::none(), py::arg("threads") = 1,
      py::arg("max_nodes") = 0, py::arg("time_limit") = 0.0);

  m.def(
      "search",
      [](const std::string& board, const std::string& closure, const std::string& mode,
         std::optional<std::string> cls, std::optional<std::string> filter,
         std::optional<std::uint64_t> limit, int threads) {
        auto s = make_spec(board, closure, mode, cls, filter, threads, 0, 0);
        s.limit = limit;
        std::vector<Tour> tours;
        {
          py::gil_scoped_release nogil;
          enumerate_tours(s, [&](const Tour& t) { tours.push_back(t); });
        }
        std::sort(tours.begin(), tours.end());
        return tours;
      },
      py::arg("board"), py::arg("closure") = "any", py::arg("mode") = "arithmetic",
      py::arg("cls") = py::none(), py::arg("filter") = py::none(), py::arg("limit") = py::none(),
      py::arg("threads") = 1);

  m.def(
      "emperor",
      [](const std::string& board, std::optional<std::string> cls,
         std::optional<std::string> filter, const std::string& mode, const std::string& junction) {
        const auto r = enumerate_emperor(BoardDims::parse(board), make_filter(cls, filter),
                                         parse_mode(mode),
                                         junction == "any" ? Junction::Any : Junction::Balanced);
        py::dict d;
        d["count"] = r.count;
        d["raw"] = r.raw;
        d["tours"] = r.tours;
        return d;
      },
      py::arg("board"), py::arg("cls") = py::none(), py::arg("filter") = py::none(),
      py::arg("mode") = "arithmetic", py::arg("junction") = "balanced");

  m.def(
      "verify",
      [](const std::string& path) { return verdict_dict(verify_fixture(load_fixture(path))); },
      py::arg("path"));

  m.def(
      "verify_corpus",
      [](const std::string& dir) {
        const auto rep = verify_corpus(dir);
        py::dict d;
        d["status"] = std::string(to_string(rep.status));
        d["passed"] = rep.passed;
        d["failed"] = rep.failed;
        d["quarantined"] = rep.quarantined;
        py::list entries;
        for (const auto& v : rep.entries) entries.append(verdict_dict(v));
        d["fixtures"] = entries;
        return d;
      },
      py::arg("directory"));

  m.def(
      "warnsdorf",
      [](const std::string& board, int col, int row) {
        return warnsdorf_construct(BoardDims::parse(board), {col, row});
      },
      py::arg("board"), py::arg("col") = 0, py::arg("row") = 0);
}
