#include "medianlab/adversary.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "medianlab/errors.hpp"

namespace medianlab {

DynamicGraph::DynamicGraph(std::size_t n)
    : n_(n), permanent_(n), saturated_round_(n, kNever), unsaturated_(all_points(n)) {}

bool DynamicGraph::is_permanent(PointId u, PointId v) const { return permanent_round(u, v).has_value(); }

std::optional<std::size_t> DynamicGraph::permanent_round(PointId u, PointId v) const {
  const auto& list = permanent_[u].size() <= permanent_[v].size() ? permanent_[u] : permanent_[v];
  const PointId other = permanent_[u].size() <= permanent_[v].size() ? v : u;
  for (const auto& e : list)
    if (e.other == other) return e.round;
  return std::nullopt;
}

bool DynamicGraph::has_edge(PointId u, PointId v) const {
  if (u == v) return false;
  return is_permanent(u, v) || (!is_saturated(u) && !is_saturated(v));
}

bool DynamicGraph::present_at(PointId u, PointId v, std::size_t round) const {
  if (u == v) return false;
  if (auto r = permanent_round(u, v); r && *r <= round) return true;
  auto alive = [&](PointId x) { return saturated_round_[x] == kNever || saturated_round_[x] > round; };
  return alive(u) && alive(v);
}

Graph DynamicGraph::permanent_graph() const {
  Graph g(n_);
  for (PointId u = 0; u < n_; ++u)
    for (const auto& e : permanent_[u])
      if (u < e.other) g.add_edge(u, e.other);
  return g;
}

bool DynamicGraph::mark_permanent(PointId u, PointId v, std::size_t round) {
  require(u != v && u < n_ && v < n_, "invalid permanent edge");
  if (is_permanent(u, v)) return false;
  permanent_[u].push_back({v, round});
  permanent_[v].push_back({u, round});
  ++permanent_count_;
  return true;
}

std::size_t DynamicGraph::saturate(PointId v, std::size_t round) {
  if (is_saturated(v)) return 0;
  std::size_t removed = 0;
  for (PointId u : unsaturated_) {
    if (u == v || is_permanent(u, v)) continue;
    removed_.push_back({std::min(u, v), std::max(u, v), round});
    ++removed;
  }
  saturated_round_[v] = round;
  unsaturated_.erase(std::lower_bound(unsaturated_.begin(), unsaturated_.end(), v));
  return removed;
}

std::vector<std::int32_t> DynamicGraph::distances_from(PointId source, std::optional<PointId> stop_at) const {
  std::vector<std::int32_t> dist(n_, -1);
  std::vector<PointId> queue;
  queue.reserve(n_);
  dist[source] = 0;
  queue.push_back(source);
  if (stop_at && *stop_at == source) return dist;
  // All unsaturated vertices form a clique, so the first unsaturated vertex
  // dequeued labels every remaining one; later ones cannot improve on it.
  bool clique_done = false;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const PointId u = queue[head];
    const std::int32_t next = dist[u] + 1;
    bool hit = false;
    for (const auto& e : permanent_[u]) {
      if (dist[e.other] < 0) {
        dist[e.other] = next;
        queue.push_back(e.other);
        hit = hit || (stop_at && e.other == *stop_at);
      }
    }
    if (!clique_done && !is_saturated(u)) {
      clique_done = true;
      for (PointId w : unsaturated_) {
        if (dist[w] < 0) {
          dist[w] = next;
          queue.push_back(w);
          hit = hit || (stop_at && w == *stop_at);
        }
      }
    }
    if (hit) break;
  }
  return dist;
}

std::vector<PointId> DynamicGraph::shortest_path(PointId a, PointId b) const {
  if (a == b) return {a};
  const auto dist = distances_from(a, b);
  if (dist[b] < 0) throw ConsistencyFailure("no path between " + std::to_string(a + 1) + " and " + std::to_string(b + 1));
  std::vector<PointId> path{b};
  PointId cur = b;
  while (cur != a) {
    const std::int32_t want = dist[cur] - 1;
    std::optional<PointId> best;
    for (const auto& e : permanent_[cur])
      if (dist[e.other] == want && (!best || e.other < *best)) best = e.other;
    if (!is_saturated(cur)) {
      for (PointId w : unsaturated_) {
        if (best && w >= *best) break;
        if (dist[w] == want) {
          best = w;
          break;
        }
      }
    }
    if (!best) throw ConsistencyFailure("BFS predecessor missing");
    cur = *best;
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Graph DynamicGraph::snapshot(std::size_t round) const {
  Graph g(n_);
  for (PointId u = 0; u < n_; ++u)
    for (PointId v = u + 1; v < n_; ++v)
      if (present_at(u, v, round)) g.add_edge(u, v);
  return g;
}

std::size_t minimum_cap(std::size_t n, std::size_t q, std::size_t d) {
  require(n >= 1, "n must be positive");
  return (2 * d * n + 4 * q) / n + 1;
}

Adversary::Adversary(const AdversaryConfig& config, const RegularGraph& expander)
    : config_(config), expander_(expander.graph()), graph_(config.n) {
  if (expander.size() != config.n || expander.degree() != config.d)
    throw NotRegular("seed graph is not " + std::to_string(config.d) + "-regular on " + std::to_string(config.n) +
                     " vertices");
  // C > 2d + 4q/n, compared without division.
  if (config.cap * config.n <= 2 * config.d * config.n + 4 * config.q)
    throw BadConstant("C = " + std::to_string(config.cap) + " does not exceed 2d + 4q/n");
  for (auto [u, v] : expander_.edges()) graph_.mark_permanent(u, v, 0);
  rounds_.reserve(config.q);
  transcript_.reserve(config.q);
}

std::int64_t Adversary::answer(PointId a, PointId b) {
  if (rounds_.size() >= config_.q) throw BudgetExhausted("adversary has already served " + std::to_string(config_.q) + " rounds");
  require(a < config_.n && b < config_.n, "query endpoint out of range");
  const std::size_t round = rounds_.size() + 1;

  RoundRecord rec{};
  rec.a = a;
  rec.b = b;
  rec.permanent_before = graph_.permanent_edge_count();
  rec.path = graph_.shortest_path(a, b);
  rec.answer = static_cast<std::int64_t>(rec.path.size()) - 1;

  for (std::size_t i = 0; i + 1 < rec.path.size(); ++i)
    if (!graph_.is_permanent(rec.path[i], rec.path[i + 1])) ++rec.nonpermanent_on_path;

  std::map<PointId, std::size_t> new_at;
  for (std::size_t i = 0; i + 1 < rec.path.size(); ++i) {
    const PointId u = rec.path[i], v = rec.path[i + 1];
    if (graph_.mark_permanent(u, v, round)) {
      ++rec.newly_permanent;
      ++new_at[u];
      ++new_at[v];
    }
  }
  for (const auto& [v, k] : new_at) rec.max_new_at_vertex = std::max(rec.max_new_at_vertex, k);
  rec.permanent_after = graph_.permanent_edge_count();

  // Only path vertices gained permanent edges this round, and every vertex
  // already above C was swept earlier, so scanning the path in ascending
  // order is the same as sweeping all vertices.
  std::vector<PointId> touched(rec.path.begin(), rec.path.end());
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (PointId v : touched) {
    if (!graph_.is_saturated(v) && graph_.permanent_degree(v) > config_.cap) {
      graph_.saturate(v, round);
      rec.saturated.push_back(v);
    }
  }

  transcript_.push_back({round, a, b, ExactDistance{rec.answer}});
  const std::int64_t ans = rec.answer;
  rounds_.push_back(std::move(rec));
  return ans;
}

void Adversary::pad(PointId z_star) {
  require(z_star < config_.n, "output point out of range");
  const std::size_t n = config_.n;
  if (n <= 1) {
    while (rounds_left() > 0) answer(z_star, z_star);
    return;
  }
  if (rounds_left() < n - 1)
    throw PadOverflow("padding needs " + std::to_string(n - 1) + " rounds but only " + std::to_string(rounds_left()) +
                      " remain");
  for (PointId x = 0; x < n; ++x)
    if (x != z_star) answer(z_star, x);
  const auto next = static_cast<PointId>((z_star + 1) % n);
  while (rounds_left() > 0) answer(z_star, next);
}

std::int64_t Certificate::distance(PointId a, PointId b) const {
  if (full_metric) return final_metric.at(a, b).units();
  return final_graph.distances_from(a, b)[b];
}

Certificate Adversary::finalize(PointId z_star, std::size_t brute_force_cap, std::size_t sample) {
  pad(z_star);
  const std::size_t n = config_.n;
  Certificate cert;
  cert.config = config_;
  cert.z_star = z_star;
  cert.final_graph = graph_;
  cert.permanent_graph = graph_.permanent_graph();
  for (PointId v = 0; v < n; ++v) {
    cert.max_permanent_degree = std::max(cert.max_permanent_degree, graph_.permanent_degree(v));
    if (graph_.permanent_degree(v) >= config_.cap) cert.bad.push_back(v);
  }

  auto row_of = [&](PointId s) {
    auto dist = graph_.distances_from(s);
    if (std::any_of(dist.begin(), dist.end(), [](std::int32_t x) { return x < 0; }))
      throw ConsistencyFailure("final graph is disconnected");
    return std::vector<std::int64_t>(dist.begin(), dist.end());
  };
  cert.z_row = row_of(z_star);
  for (auto x : cert.z_row) cert.z_star_cost += x;

  std::vector<bool> is_bad(n, false);
  for (PointId v : cert.bad) is_bad[v] = true;
  std::vector<PointId> good;
  for (PointId v = 0; v < n; ++v)
    if (!is_bad[v]) good.push_back(v);
  if (good.empty()) throw ConsistencyFailure("every vertex is bad");

  auto consider = [&](PointId v, std::int64_t cost, bool first) {
    if (first || cost < cert.best_good_cost) {
      cert.best_good = v;
      cert.best_good_cost = cost;
    }
  };
  if (n <= brute_force_cap) {
    cert.full_metric = true;
    cert.final_metric = MetricTable(n);
    for (PointId s = 0; s < n; ++s) {
      auto row = row_of(s);
      for (PointId t = 0; t < n; ++t) cert.final_metric.set_directed(s, t, ExactDistance{row[t]});
    }
    bool first = true;
    for (PointId v : good) {
      std::int64_t cost = 0;
      for (auto d : cert.final_metric.row(v)) cost += d.units();
      consider(v, cost, first);
      first = false;
    }
  } else {
    const std::size_t take = std::min(sample, good.size());
    cert.lower_bound_on_ratio = take < good.size();
    for (std::size_t i = 0; i < take; ++i) {
      auto row = row_of(good[i]);
      std::int64_t cost = 0;
      for (auto x : row) cost += x;
      consider(good[i], cost, i == 0);
    }
  }
  cert.ratio = cert.best_good_cost > 0 ? Rational{cert.z_star_cost, cert.best_good_cost} : Rational{1};
  return cert;
}

std::pair<PointId, std::int64_t> good_point_bound(const Certificate& cert) { return {cert.best_good, cert.best_good_cost}; }

bool verify_consistency(const Certificate& cert, const Transcript& transcript) {
  std::map<PointId, std::vector<std::int32_t>> rows;
  for (const auto& e : transcript) {
    if (e.answer.eps_count() != 0) return false;
    std::int64_t d = 0;
    if (cert.full_metric) {
      d = cert.final_metric.at(e.a, e.b).units();
    } else {
      auto it = rows.find(e.a);
      if (it == rows.end()) it = rows.emplace(e.a, cert.final_graph.distances_from(e.a)).first;
      d = it->second[e.b];
    }
    if (d != e.answer.units()) return false;
  }
  return true;
}

bool verify_path_discipline(const Adversary& adv) {
  for (const auto& r : adv.rounds())
    if (r.nonpermanent_on_path > 1 || r.newly_permanent > 1 || r.permanent_after - r.permanent_before > 1) return false;
  return true;
}

bool verify_vertex_growth(const Adversary& adv) {
  for (const auto& r : adv.rounds())
    if (r.max_new_at_vertex > 2) return false;
  return true;
}

bool verify_expander_embedded(const Adversary& adv) {
  const auto& g = adv.graph();
  std::unordered_set<std::uint64_t> removed;
  for (const auto& e : g.removal_log()) removed.insert((std::uint64_t{e.u} << 32) | e.v);
  for (auto [u, v] : adv.expander().edges()) {
    auto r = g.permanent_round(u, v);
    if (!r || *r != 0) return false;
    if (removed.count((std::uint64_t{std::min(u, v)} << 32) | std::max(u, v))) return false;
    if (!g.present_at(u, v, adv.rounds_served())) return false;
  }
  return true;
}

bool verify_snapshot_log(const Adversary& adv) {
  const auto& g = adv.graph();
  std::unordered_set<std::uint64_t> seen;
  for (const auto& e : g.removal_log()) {
    if (!seen.insert((std::uint64_t{e.u} << 32) | e.v).second) return false;
    if (g.is_permanent(e.u, e.v)) return false;
    if (e.round == 0 || !g.present_at(e.u, e.v, e.round - 1) || g.present_at(e.u, e.v, e.round)) return false;
  }
  for (PointId u = 0; u < g.size(); ++u)
    for (const auto& e : g.permanent_edges(u))
      if (e.round > 0 && !g.present_at(u, e.other, e.round - 1)) return false;
  return true;
}

bool verify_ball_growth(const Certificate& cert) {
  const auto dist = bfs_distances(cert.permanent_graph, cert.z_star);
  std::int64_t ecc = 0;
  for (auto x : dist) ecc = std::max(ecc, x);
  std::vector<std::size_t> at_level(static_cast<std::size_t>(ecc) + 1, 0);
  for (auto x : dist)
    if (x >= 0) ++at_level[static_cast<std::size_t>(x)];
  const std::size_t n = cert.permanent_graph.size();
  const long double branching = static_cast<long double>(cert.config.cap) + 2.0L;
  long double bound = 1.0L, power = 1.0L;
  std::size_t within = at_level[0];
  for (std::size_t k = 1; k < at_level.size(); ++k) {
    within += at_level[k];
    power = std::min(power * branching, static_cast<long double>(n) * 4.0L);
    bound = std::min(bound + power, static_cast<long double>(n) * 4.0L);
    if (static_cast<long double>(within) > bound) return false;
  }
  return true;
}

bool GameChecks::all() const {
  return consistency && expander_embedded && snapshot_log && path_discipline && vertex_growth && max_degree &&
         few_bad && ball_growth && metric_valid.value_or(true);
}

GameChecks check_game(const Adversary& adv, const Certificate& cert, bool validate_metric_table) {
  GameChecks c;
  const auto& cfg = adv.config();
  c.consistency = verify_consistency(cert, adv.transcript());
  c.expander_embedded = verify_expander_embedded(adv);
  c.snapshot_log = verify_snapshot_log(adv);
  c.path_discipline = verify_path_discipline(adv);
  c.vertex_growth = verify_vertex_growth(adv);
  c.max_degree = cert.max_permanent_degree <= cfg.cap + 2;
  c.few_bad = 2 * cert.bad.size() <= cfg.n;
  c.ball_growth = verify_ball_growth(cert);
  if (validate_metric_table && cert.full_metric) c.metric_valid = validate_metric(cert.final_metric, 1).empty();
  return c;
}

namespace {

// Charges the algorithm's own queries against its budget.
class BudgetGuard final : public DistanceSource {
 public:
  BudgetGuard(DistanceSource& inner, std::size_t budget) : inner_(&inner), budget_(budget) {}
  std::size_t size() const override { return inner_->size(); }
  ExactDistance distance(PointId a, PointId b) override {
    if (used_ == budget_) throw BudgetExceeded("algorithm exceeded its budget of " + std::to_string(budget_) + " queries");
    ++used_;
    return inner_->distance(a, b);
  }

 private:
  DistanceSource* inner_;
  std::size_t budget_;
  std::size_t used_ = 0;
};

}  // namespace

GameReport play_adversary_game(QueryAlgorithm& algorithm, const RegularGraph& expander, std::size_t q_alg,
                               const GameOptions& options) {
  const std::size_t n = expander.size();
  AdversaryConfig cfg;
  cfg.n = n;
  cfg.q = q_alg + (n > 0 ? n - 1 : 0);
  cfg.d = expander.degree();
  cfg.cap = options.cap.value_or(minimum_cap(n, cfg.q, cfg.d));

  Adversary adv(cfg, expander);
  AdversarySource source(adv);
  BudgetGuard guard(source, q_alg);
  CountingOracle oracle(guard);
  const PointId z = algorithm.run(oracle);
  require(z < n, "algorithm output out of range");

  GameReport report;
  report.config = cfg;
  report.algorithm = algorithm.name();
  report.algorithm_queries = oracle.queries_made();
  report.certificate = adv.finalize(z, options.brute_force_cap);
  report.checks = check_game(adv, report.certificate, n <= options.validate_cap);
  report.transcript = adv.transcript();
  return report;
}

GameReport play_adversary_game(QueryAlgorithm& algorithm, std::size_t n, std::size_t q_alg, const GameOptions& options) {
  BuiltExpander built = build_regular(n, options.d, options.seed);
  GameReport report = play_adversary_game(algorithm, built.graph, q_alg, options);
  report.expander_attempts = built.attempts;
  return report;
}

}  // namespace medianlab
