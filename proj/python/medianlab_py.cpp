#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "medianlab/adversary.hpp"
#include "medianlab/algorithms.hpp"
#include "medianlab/errors.hpp"
#include "medianlab/expander.hpp"
#include "medianlab/harness.hpp"
#include "medianlab/io.hpp"
#include "medianlab/solvers.hpp"
#include "medianlab/tame_sim.hpp"

namespace py = pybind11;
using namespace medianlab;

namespace {

MetricTable table_from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  MetricTable t(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == rows.size(), "metric rows must form a square matrix");
    for (std::size_t j = 0; j < rows.size(); ++j)
      t.set_directed(static_cast<PointId>(i), static_cast<PointId>(j), ExactDistance{rows[i][j]});
  }
  return t;
}

Graph graph_from_edges(std::size_t n, const std::vector<std::pair<PointId, PointId>>& edges) {
  return Graph::from_edges(n, edges);
}

std::pair<std::int64_t, std::int64_t> frac(const Rational& r) { return {r.numerator(), r.denominator()}; }

// Python sees the JSON documents as strings; the package wrapper decodes them.
std::string solve(const MetricTable& metric, std::uint64_t f_of_n, const std::string& inner_name, std::uint64_t seed) {
  TableSource source(metric);
  CountingOracle oracle(source);
  auto inner = make_inner(inner_name, seed);
  const SolverResult res = restrict_and_solve(oracle, metric.size(), f_of_n, *inner);
  CountingOracle scorer(source);
  const PointSet everyone = all_points(metric.size());
  json j{{"output", res.output},
         {"queries", res.queries_used},
         {"subset", subset_size(metric.size(), f_of_n)},
         {"cost", median_cost(scorer, res.output, everyone).units()},
         {"opt_cost", exact_median(scorer, everyone).cost.units()}};
  j["claimed_beta"] = res.claimed_beta ? to_json(*res.claimed_beta) : json(nullptr);
  return j.dump();
}

std::string play(std::size_t n, std::size_t q, const std::string& algo, std::size_t d, std::uint64_t seed,
                 std::optional<std::size_t> cap) {
  auto alg = make_algorithm(algo, q, seed);
  GameOptions opts;
  opts.d = d;
  opts.seed = seed;
  opts.cap = cap;
  const GameReport report = play_adversary_game(*alg, n, q, opts);
  json j = to_json(summarize(report, q, seed));
  j["transcript"] = to_json(report.transcript);
  return j.dump();
}

std::string play_callback(std::size_t n, std::size_t q, const std::function<PointId(std::function<std::int64_t(PointId, PointId)>)>& fn,
                          std::size_t d, std::uint64_t seed) {
  CallbackAlgorithm alg("python", [&](CountingOracle& oracle) {
    return fn([&oracle](PointId a, PointId b) { return oracle.query(a, b).units(); });
  });
  GameOptions opts;
  opts.d = d;
  opts.seed = seed;
  const GameReport report = play_adversary_game(alg, n, q, opts);
  return to_json(summarize(report, q, seed)).dump();
}

std::string lower_bound(std::size_t n, std::size_t q, const std::string& algo, std::size_t d, std::uint64_t seed) {
  auto alg = make_algorithm(algo, q, seed);
  LowerBoundOptions opts;
  opts.d = d;
  opts.seed = seed;
  return to_json(hard_instance_game(*alg, n, q, opts)).dump();
}

std::string expander(std::size_t n, std::size_t d, std::uint64_t seed, const std::string& certify) {
  BuiltExpander built = build_regular(n, d, seed);
  ExpansionReport report = built.report;
  if (certify == "exhaustive") report = certify_expansion(built.graph, CertifyMode::Exhaustive);
  json j = to_json(report);
  j["attempts"] = built.attempts;
  json edges = json::array();
  for (const auto& [a, b] : built.graph.graph().edges()) edges.push_back({a, b});
  j["edges"] = edges;
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_medianlab, m) {
  m.doc() = "Metric 1-median selection under query budgets";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<DisconnectedGraph>(m, "DisconnectedGraph", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<BadConstant>(m, "BadConstant", base.ptr());
  py::register_exception<NotRegular>(m, "NotRegular", base.ptr());
  py::register_exception<BudgetExhausted>(m, "BudgetExhausted", base.ptr());
  py::register_exception<PadOverflow>(m, "PadOverflow", base.ptr());
  py::register_exception<Infeasible>(m, "Infeasible", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<ConsistencyFailure>(m, "ConsistencyFailure", base.ptr());
  py::register_exception<QueryOutOfRange>(m, "QueryOutOfRange", base.ptr());

  py::class_<ExactDistance>(m, "ExactDistance")
      .def(py::init<std::int64_t, std::int64_t>(), py::arg("units") = 0, py::arg("eps_count") = 0)
      .def_property_readonly("units", &ExactDistance::units)
      .def_property_readonly("eps_count", &ExactDistance::eps_count)
      .def("__add__", [](const ExactDistance& a, const ExactDistance& b) { return a + b; })
      .def("__eq__", [](const ExactDistance& a, const ExactDistance& b) { return a == b; })
      .def("__lt__", [](const ExactDistance& a, const ExactDistance& b) { return a < b; })
      .def("__le__", [](const ExactDistance& a, const ExactDistance& b) { return a <= b; })
      .def("__hash__", [](const ExactDistance& a) { return py::hash(py::make_tuple(a.units(), a.eps_count())); })
      .def("__repr__", [](const ExactDistance& a) {
        std::ostringstream s;
        s << "ExactDistance(" << a.units() << ", " << a.eps_count() << ")";
        return s.str();
      });

  py::class_<MetricTable>(m, "MetricTable")
      .def(py::init(&table_from_rows), py::arg("rows"))
      .def_property_readonly("size", &MetricTable::size)
      .def("__len__", &MetricTable::size)
      .def("at", [](const MetricTable& t, PointId a, PointId b) {
        require(a < t.size() && b < t.size(), "index out of range");
        return t.at(a, b);
      })
      .def("to_text", [](const MetricTable& t) {
        std::ostringstream s;
        write_metric(s, t);
        return s.str();
      })
      .def_static("from_text", [](const std::string& text) {
        std::istringstream s(text);
        return read_metric(s);
      });

  m.def("graph_metric", [](std::size_t n, const std::vector<std::pair<PointId, PointId>>& edges) {
    return graph_metric(graph_from_edges(n, edges));
  }, py::arg("n"), py::arg("edges"));
  m.def("validate_metric", [](const MetricTable& t, std::size_t max_violations) {
    std::vector<std::tuple<std::string, PointId, PointId, PointId>> out;
    for (const auto& v : validate_metric(t, max_violations)) out.emplace_back(to_string(v.kind), v.a, v.b, v.c);
    return out;
  }, py::arg("table"), py::arg("max_violations") = 20);
  m.def("exact_median", [](const MetricTable& t, std::optional<std::vector<PointId>> subset) {
    TableSource source(t);
    CountingOracle oracle(source);
    const PointSet set = subset ? *subset : all_points(t.size());
    const MedianResult r = exact_median(oracle, set);
    return py::make_tuple(r.point, r.cost.units(), oracle.queries_made());
  }, py::arg("table"), py::arg("subset") = py::none());
  m.def("average_pairwise_distance", [](const MetricTable& t) {
    TableSource source(t);
    CountingOracle oracle(source);
    return frac(average_pairwise_distance(oracle, all_points(t.size())).as_rational());
  });
  m.def("subset_size", &subset_size, py::arg("n"), py::arg("f_of_n"));
  m.def("transfer_bound", [](std::int64_t beta_num, std::int64_t beta_den, std::int64_t n, std::int64_t s) {
    return frac(transfer_bound(Rational{beta_num, beta_den}, n, s));
  }, py::arg("beta_num"), py::arg("beta_den"), py::arg("n"), py::arg("s"));
  m.def("minimum_cap", &minimum_cap, py::arg("n"), py::arg("q"), py::arg("d"));
  m.def("_solve", &solve, py::arg("table"), py::arg("f_of_n"), py::arg("inner") = "exact", py::arg("seed") = 1);
  m.def("_play_adversary", &play, py::arg("n"), py::arg("q"), py::arg("algo") = "exact", py::arg("d") = 8,
        py::arg("seed") = 1, py::arg("cap") = py::none());
  m.def("_play_callback", &play_callback, py::arg("n"), py::arg("q"), py::arg("fn"), py::arg("d") = 8,
        py::arg("seed") = 1);
  m.def("_lower_bound", &lower_bound, py::arg("n"), py::arg("q"), py::arg("algo") = "exact", py::arg("d") = 8,
        py::arg("seed") = 1);
  m.def("_expander", &expander, py::arg("n"), py::arg("d"), py::arg("seed") = 1, py::arg("certify") = "spectral");
}
