#include "medianlab/expander.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "medianlab/errors.hpp"

namespace medianlab {

RegularGraph::RegularGraph(Graph g, std::size_t d) : graph_(std::move(g)), d_(d) {
  for (PointId v = 0; v < graph_.size(); ++v)
    if (graph_.degree(v) != d)
      throw NotRegular("vertex " + std::to_string(v + 1) + " has degree " + std::to_string(graph_.degree(v)) +
                       ", expected " + std::to_string(d));
}

std::optional<Graph> try_pair_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PointId> stubs;
  stubs.reserve(n * d);
  for (PointId v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);
  Graph g(n);
  while (!stubs.empty()) {
    bool paired = false;
    // Rejection sampling; fall back to an exhaustive scan once it looks stuck.
    for (int tries = 0; tries < 64 && !paired; ++tries) {
      std::size_t i = rng() % stubs.size(), j = rng() % stubs.size();
      PointId u = stubs[i], v = stubs[j];
      if (i == j || u == v || g.has_edge(u, v)) continue;
      g.add_edge(u, v);
      if (i < j) std::swap(i, j);
      stubs[i] = stubs.back();
      stubs.pop_back();
      stubs[j] = stubs.back();
      stubs.pop_back();
      paired = true;
    }
    if (paired) continue;
    bool any = false;
    for (std::size_t i = 0; i < stubs.size() && !any; ++i)
      for (std::size_t j = i + 1; j < stubs.size() && !any; ++j)
        any = stubs[i] != stubs[j] && !g.has_edge(stubs[i], stubs[j]);
    if (!any) return std::nullopt;
  }
  return g;
}

bool is_connected(const Graph& g) {
  if (g.size() == 0) return true;
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::int64_t x) { return x < 0; });
}

double second_eigenvalue(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  if (n < 2) return 0.0;
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (PointId u = 0; u < g.size(); ++u)
    for (PointId v : g.neighbors(u)) adj(u, v) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adj, Eigen::EigenvaluesOnly);
  // Eigenvalues come back in increasing order.
  return solver.eigenvalues()(n - 2);
}

BuiltExpander build_regular(std::size_t n, std::size_t d, std::uint64_t seed, const BuildOptions& options) {
  if ((n * d) % 2 != 0) throw Infeasible("n*d must be even for a d-regular graph");
  if (d >= n) throw Infeasible("degree must be smaller than the vertex count");
  require(d >= 3, "expander degree must be at least 3");
  const double threshold = 2.0 * std::sqrt(static_cast<double>(d) - 1.0) + options.lambda_slack;
  std::uint64_t s = seed;
  for (std::size_t attempt = 1; attempt <= options.max_attempts; ++attempt, ++s) {
    auto g = try_pair_regular(n, d, s);
    if (!g || !is_connected(*g)) continue;
    RegularGraph rg(std::move(*g), d);
    ExpansionReport report = certify_expansion(rg, CertifyMode::Spectral);
    if (*report.lambda2 <= threshold) return {std::move(rg), std::move(report), attempt, s};
  }
  throw Infeasible("no certified expander after " + std::to_string(options.max_attempts) + " attempts");
}

ExpansionReport certify_expansion(const RegularGraph& rg, CertifyMode mode) {
  const Graph& g = rg.graph();
  if (!is_connected(g)) throw DisconnectedGraph("expansion of a disconnected graph is zero");
  const std::size_t n = g.size(), d = rg.degree();
  ExpansionReport report;
  report.method = mode;
  if (mode == CertifyMode::Spectral) {
    const double lambda2 = second_eigenvalue(g);
    report.lambda2 = lambda2;
    // Cheeger: min cut / |S| >= (d - lambda2) / 2. The margin absorbs
    // eigensolver rounding so the bound stays conservative.
    report.alpha_lower = std::max(0.0, (static_cast<double>(d) - lambda2) / (2.0 * static_cast<double>(d)) - 1e-9);
    return report;
  }

  require(n <= 24, "exhaustive certification is limited to n <= 24");
  require(n >= 2, "exhaustive certification needs at least two vertices");
  std::vector<std::uint32_t> adj(n, 0);
  for (PointId u = 0; u < n; ++u)
    for (PointId v : g.neighbors(u)) adj[u] |= (1u << v);
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::optional<Rational> best;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int size = std::popcount(mask);
    if (static_cast<std::size_t>(2 * size) > n) continue;
    std::int64_t cut = 0;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1) cut += std::popcount(adj[std::countr_zero(rest)] & ~mask);
    Rational alpha{cut, static_cast<std::int64_t>(d) * size};
    if (!best || alpha < *best) {
      best = alpha;
      best_mask = mask;
    }
  }
  report.alpha_exact = best;
  report.alpha_lower = boost::rational_cast<double>(*best);
  for (PointId v = 0; v < n; ++v)
    if (best_mask & (1u << v)) report.witness.push_back(v);
  return report;
}

std::vector<std::vector<PointId>> bfs_levels(const Graph& g, std::span<const PointId> roots) {
  require(!roots.empty(), "bfs_levels needs a nonempty root set");
  std::vector<std::int64_t> level(g.size(), -1);
  std::vector<std::vector<PointId>> levels(1);
  for (PointId r : roots) {
    if (level[r] < 0) {
      level[r] = 0;
      levels[0].push_back(r);
    }
  }
  std::sort(levels[0].begin(), levels[0].end());
  while (true) {
    std::vector<PointId> next;
    for (PointId u : levels.back())
      for (PointId v : g.neighbors(u))
        if (level[v] < 0) {
          level[v] = static_cast<std::int64_t>(levels.size());
          next.push_back(v);
        }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    levels.push_back(std::move(next));
  }
  return levels;
}

namespace {

std::vector<PointId> complement(std::size_t n, std::span<const PointId> inside) {
  std::vector<bool> in(n, false);
  for (PointId v : inside) {
    require(v < n, "vertex out of range");
    in[v] = true;
  }
  std::vector<PointId> out;
  for (PointId v = 0; v < n; ++v)
    if (!in[v]) out.push_back(v);
  return out;
}

}  // namespace

std::int64_t boundary_distance_sum(const Graph& g, std::span<const PointId> inside) {
  require(!inside.empty(), "U must be nonempty");
  const auto outside = complement(g.size(), inside);
  require(!outside.empty(), "U must be a proper subset of the vertex set");
  const auto levels = bfs_levels(g, outside);
  std::int64_t total = 0;
  std::size_t reached = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    total += static_cast<std::int64_t>(i * levels[i].size());
    reached += levels[i].size();
  }
  if (reached != g.size()) throw DisconnectedGraph("some vertex of U cannot reach the complement");
  return total;
}

bool verify_level_decay(const Graph& g, std::span<const PointId> inside, double alpha) {
  if (inside.empty() || 2 * inside.size() > g.size() || alpha <= 0.0) return false;
  const auto outside = complement(g.size(), inside);
  const auto levels = bfs_levels(g, outside);
  std::size_t reached = 0;
  for (const auto& l : levels) reached += l.size();
  if (reached != g.size()) return false;

  // tail[i] = |S_i| = |L_i| + |L_{i+1}| + ...
  std::vector<std::size_t> tail(levels.size() + 1, 0);
  for (std::size_t i = levels.size(); i-- > 0;) tail[i] = tail[i + 1] + levels[i].size();
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (static_cast<double>(tail[i + 1]) > (1.0 - alpha) * static_cast<double>(tail[i])) return false;

  std::int64_t sum = 0;
  for (std::size_t i = 1; i < levels.size(); ++i) sum += static_cast<std::int64_t>(i * levels[i].size());
  return static_cast<double>(sum) <= static_cast<double>(inside.size()) / (alpha * alpha);
}

std::string to_string(CertifyMode mode) { return mode == CertifyMode::Spectral ? "spectral" : "exhaustive"; }

}  // namespace medianlab
