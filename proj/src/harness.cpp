#include "medianlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "medianlab/errors.hpp"

namespace medianlab {

InstanceKind parse_instance_kind(const std::string& name) {
  if (name == "random-graph") return InstanceKind::RandomGraph;
  if (name == "grid") return InstanceKind::Grid;
  if (name == "star-path") return InstanceKind::StarPath;
  if (name == "table") return InstanceKind::Table;
  throw PreconditionError("unknown instance kind: " + name);
}

std::string to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::RandomGraph: return "random-graph";
    case InstanceKind::Grid: return "grid";
    case InstanceKind::StarPath: return "star-path";
    case InstanceKind::Table: return "table";
  }
  return "unknown";
}

Graph generate_graph(InstanceKind kind, std::size_t n, std::uint64_t seed) {
  require(n >= 1, "instance needs at least one point");
  Graph g(n);
  switch (kind) {
    case InstanceKind::RandomGraph: {
      std::mt19937_64 rng(seed);
      for (PointId v = 1; v < n; ++v) g.add_edge(v, static_cast<PointId>(rng() % v));
      if (n >= 3)
        for (std::size_t k = 0; k < n / 2; ++k) {
          auto u = static_cast<PointId>(rng() % n), v = static_cast<PointId>(rng() % n);
          if (u != v) g.add_edge(u, v);
        }
      break;
    }
    case InstanceKind::Grid: {
      const std::size_t cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-9));
      for (PointId v = 0; v < n; ++v) {
        if ((v % cols) + 1 < cols && v + 1 < n) g.add_edge(v, v + 1);
        if (v + cols < n) g.add_edge(v, static_cast<PointId>(v + cols));
      }
      break;
    }
    case InstanceKind::StarPath: {
      const std::size_t path = n - n / 5;
      for (PointId v = 1; v < path; ++v) g.add_edge(v - 1, v);
      for (auto v = static_cast<PointId>(path); v < n; ++v) g.add_edge(static_cast<PointId>(path - 1), v);
      break;
    }
    case InstanceKind::Table:
      throw PreconditionError("table instances are not graphs");
  }
  return g;
}

void shortest_path_closure(MetricTable& t) {
  const std::size_t n = t.size();
  for (PointId k = 0; k < n; ++k)
    for (PointId i = 0; i < n; ++i)
      for (PointId j = 0; j < n; ++j) {
        auto via = t.at(i, k) + t.at(k, j);
        if (via < t.at(i, j)) t.set_directed(i, j, via);
      }
}

MetricTable generate_instance(InstanceKind kind, std::size_t n, std::uint64_t seed) {
  if (kind != InstanceKind::Table) return graph_metric(generate_graph(kind, n, seed));
  require(n >= 1, "instance needs at least one point");
  std::mt19937_64 rng(seed);
  MetricTable t(n);
  for (PointId a = 0; a < n; ++a)
    for (PointId b = a + 1; b < n; ++b) t.set(a, b, ExactDistance{static_cast<std::int64_t>(1 + rng() % 10)});
  shortest_path_closure(t);
  return t;
}

std::unique_ptr<InnerApproximator> make_inner(const std::string& name, std::uint64_t seed) {
  if (name == "exact") return std::make_unique<ExactInner>();
  if (name == "pivot") return std::make_unique<PivotTournamentInner>();
  if (name == "sampling") return std::make_unique<SamplingInner>(seed);
  throw PreconditionError("unknown inner approximator: " + name);
}

std::vector<SweepRow> sweep_upper_bound(std::vector<SweepConfig> configs, std::size_t brute_force_cap) {
  std::sort(configs.begin(), configs.end());
  std::vector<SweepRow> rows;
  for (const auto& cfg : configs) {
    require(cfg.n <= brute_force_cap, "sweep rows need n within the brute-force cap");
    require(cfg.subset >= 1 && cfg.subset <= cfg.n, "subset size out of range");
    const MetricTable metric = generate_instance(cfg.kind, cfg.n, cfg.seed);
    TableSource source(metric);
    CountingOracle oracle(source);
    auto inner = make_inner(cfg.inner, cfg.seed);
    const PointSet subset = subset_schedule(cfg.n, cfg.subset);
    SolverResult res = inner->solve(oracle, subset);

    SweepRow row;
    row.config = cfg;
    row.queries = res.queries_used;
    // Scoring uses the table directly; it is not part of the algorithm's bill.
    const PointSet everyone = all_points(cfg.n);
    CountingOracle scorer(source);
    row.cost = median_cost(scorer, res.output, everyone).units();
    row.opt = exact_median(scorer, everyone).cost.units();
    const std::int64_t local = median_cost(scorer, res.output, subset).units();
    const std::int64_t local_opt = exact_median(scorer, subset).cost.units();
    row.beta = local_opt > 0 ? Rational{local, local_opt} : Rational{1};
    row.ratio = row.opt > 0 ? Rational{row.cost, row.opt} : Rational{1};
    row.bound = transfer_bound(row.beta, static_cast<std::int64_t>(cfg.n), static_cast<std::int64_t>(cfg.subset));
    row.bound_satisfied = Rational{row.cost} <= row.bound * Rational{row.opt};
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational{std::stoll(s)};
  return Rational{std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
}

}  // namespace

std::string sweep_csv_header() { return "kind,n,seed,subset,inner,queries,cost,opt,ratio,beta,bound,bound_satisfied"; }

std::string to_csv(const SweepRow& r) {
  std::ostringstream os;
  os << to_string(r.config.kind) << ',' << r.config.n << ',' << r.config.seed << ',' << r.config.subset << ','
     << r.config.inner << ',' << r.queries << ',' << r.cost << ',' << r.opt << ',' << rational_str(r.ratio) << ','
     << rational_str(r.beta) << ',' << rational_str(r.bound) << ',' << (r.bound_satisfied ? "true" : "false");
  return os.str();
}

SweepRow parse_sweep_csv(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) f.push_back(cell);
  if (f.size() != 12) throw ParseError("sweep row needs 12 fields: " + line);
  SweepRow r;
  try {
    r.config.kind = parse_instance_kind(f[0]);
    r.config.n = std::stoull(f[1]);
    r.config.seed = std::stoull(f[2]);
    r.config.subset = std::stoull(f[3]);
    r.config.inner = f[4];
    r.queries = std::stoull(f[5]);
    r.cost = std::stoll(f[6]);
    r.opt = std::stoll(f[7]);
    r.ratio = parse_rational(f[8]);
    r.beta = parse_rational(f[9]);
    r.bound = parse_rational(f[10]);
  } catch (const std::logic_error& e) {
    throw ParseError("bad sweep row '" + line + "': " + e.what());
  }
  if (f[11] != "true" && f[11] != "false") throw ParseError("bad boolean in sweep row: " + f[11]);
  r.bound_satisfied = f[11] == "true";
  return r;
}

bool replay_verify(const Transcript& transcript, DistanceSource& metric) {
  for (const auto& e : transcript) {
    if (e.a >= metric.size() || e.b >= metric.size()) return false;
    if (metric.distance(e.a, e.b) != e.answer) return false;
  }
  return true;
}

bool replay_verify(const Transcript& transcript, const MetricTable& metric) {
  TableSource source(metric);
  return replay_verify(transcript, source);
}

}  // namespace medianlab
