#include "medianlab/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "medianlab/errors.hpp"

namespace medianlab {

SolverResult NonadaptiveApproximator::solve(CountingOracle& oracle, std::span<const PointId> set) {
  const std::size_t before = oracle.queries_made();
  last_schedule_ = schedule(set);
  std::vector<ExactDistance> answers;
  answers.reserve(last_schedule_.size());
  for (auto [a, b] : last_schedule_) answers.push_back(oracle.query(a, b));
  SolverResult r = decide(set, last_schedule_, answers);
  r.queries_used = oracle.queries_made() - before;
  return r;
}

std::vector<QueryPair> ExactInner::schedule(std::span<const PointId> set) const {
  std::vector<QueryPair> out;
  out.reserve(query_bound(set.size()));
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j) out.emplace_back(set[i], set[j]);
  return out;
}

SolverResult ExactInner::decide(std::span<const PointId> set, std::span<const QueryPair> schedule,
                                std::span<const ExactDistance> answers) const {
  require(!set.empty(), "exact inner needs a nonempty set");
  std::vector<ExactDistance> cost(set.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j, ++k) {
      cost[i] += answers[k];
      cost[j] += answers[k];
    }
  (void)schedule;
  std::size_t best = 0;
  for (std::size_t i = 1; i < set.size(); ++i)
    if (cost[i] < cost[best] || (cost[i] == cost[best] && set[i] < set[best])) best = i;
  return {set[best], 0, Rational{1}};
}

SolverResult PivotTournamentInner::solve(CountingOracle& oracle, std::span<const PointId> set) {
  require(!set.empty(), "pivot tournament needs a nonempty set");
  const std::size_t before = oracle.queries_made();
  PointSet sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.size() == 1) return {sorted[0], 0, std::nullopt};

  const PointId p1 = sorted[0], p2 = sorted[1];
  std::vector<ExactDistance> row1(set.size()), row2(set.size());
  ExactDistance cost1, cost2;
  for (std::size_t i = 0; i < set.size(); ++i) cost1 += row1[i] = oracle.query(p1, set[i]);
  for (std::size_t i = 0; i < set.size(); ++i) cost2 += row2[i] = oracle.query(p2, set[i]);

  // The pivots themselves always attain the minimum d(p1,p2) of the sum, so
  // the candidate is drawn from the remaining points.
  std::optional<std::size_t> c;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] == p1 || set[i] == p2) continue;
    if (!c) {
      c = i;
      continue;
    }
    auto lhs = row1[i] + row2[i], rhs = row1[*c] + row2[*c];
    if (lhs < rhs || (lhs == rhs && set[i] < set[*c])) c = i;
  }

  struct Scored {
    PointId p;
    ExactDistance cost;
  };
  std::vector<Scored> scored{{p1, cost1}, {p2, cost2}};
  if (c) scored.push_back({set[*c], median_cost(oracle, set[*c], set)});
  auto best = std::min_element(scored.begin(), scored.end(), [](const Scored& x, const Scored& y) {
    return x.cost < y.cost || (x.cost == y.cost && x.p < y.p);
  });
  return {best->p, oracle.queries_made() - before, std::nullopt};
}

namespace {

// Partial Fisher-Yates with explicit modulo draws, so the sequence does not
// depend on the standard library's distribution implementations.
PointSet draw_without_replacement(std::span<const PointId> set, std::size_t k, std::mt19937_64& rng) {
  PointSet pool(set.begin(), set.end());
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

std::size_t SamplingInner::effective_size(std::size_t s) const {
  std::size_t k = sample_size_ ? sample_size_ : static_cast<std::size_t>(std::ceil(std::sqrt(double(s))));
  return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(s, 1));
}

std::size_t SamplingInner::query_bound(std::size_t s) const {
  const std::size_t k = effective_size(s);
  return k * k;
}

std::vector<QueryPair> SamplingInner::schedule(std::span<const PointId> set) const {
  require(!set.empty(), "sampling needs a nonempty set");
  const std::size_t k = effective_size(set.size());
  std::mt19937_64 rng(seed_);
  const PointSet candidates = draw_without_replacement(set, k, rng);
  const PointSet evaluation = draw_without_replacement(set, k, rng);
  std::vector<QueryPair> out;
  out.reserve(k * k);
  for (PointId c : candidates)
    for (PointId e : evaluation) out.emplace_back(c, e);
  return out;
}

SolverResult SamplingInner::decide(std::span<const PointId> set, std::span<const QueryPair> schedule,
                                   std::span<const ExactDistance> answers) const {
  const std::size_t k = effective_size(set.size());
  PointId best = schedule.front().first;
  ExactDistance best_cost;
  for (std::size_t c = 0; c < k; ++c) {
    ExactDistance cost;
    for (std::size_t e = 0; e < k; ++e) cost += answers[c * k + e];
    if (c == 0 || cost < best_cost) {
      best = schedule[c * k].first;
      best_cost = cost;
    }
  }
  return {best, 0, std::nullopt};
}

PointSet subset_schedule(std::size_t n, std::size_t m) {
  require(m >= 1 && m <= n, "subset_schedule needs 1 <= m <= n");
  return all_points(m);
}

std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && r > x / r) --r;
  while ((r + 1) <= x / (r + 1)) ++r;
  return r;
}

std::size_t subset_size(std::size_t n, std::uint64_t f_of_n) {
  require(f_of_n >= 1, "f(n) must be at least 1");
  const std::uint64_t root = isqrt(f_of_n);
  const std::uint64_t m = (n + root - 1) / root;
  return static_cast<std::size_t>(std::clamp<std::uint64_t>(m, 1, std::max<std::uint64_t>(n, 1)));
}

SolverResult restrict_and_solve(CountingOracle& oracle, std::size_t n, std::uint64_t f_of_n, InnerApproximator& inner) {
  require(oracle.size() == n, "oracle does not host n points");
  const PointSet subset = subset_schedule(n, subset_size(n, f_of_n));
  const std::size_t before = oracle.queries_made();
  SolverResult r = inner.solve(oracle, subset);
  r.queries_used = oracle.queries_made() - before;
  return r;
}

SolverResult inner_exact(CountingOracle& oracle, std::span<const PointId> set) {
  ExactInner inner;
  return inner.solve(oracle, set);
}

SolverResult inner_pivot_tournament(CountingOracle& oracle, std::span<const PointId> set) {
  PivotTournamentInner inner;
  return inner.solve(oracle, set);
}

Rational transfer_bound(Rational beta, std::int64_t n, std::int64_t s) {
  require(beta >= 1, "beta must be at least 1");
  require(s >= 1 && s <= n, "transfer_bound needs 1 <= s <= n");
  return Rational{4} * beta * Rational{n, s} + 1;
}

SolverResult sampling_on(CountingOracle& oracle, std::span<const PointId> set, std::size_t sample_size, std::uint64_t seed) {
  require(sample_size >= 1, "sample size must be positive");
  SamplingInner inner(seed, sample_size);
  return inner.solve(oracle, set);
}

SolverResult sampling_baseline(CountingOracle& oracle, std::size_t n, std::size_t sample_size, std::uint64_t seed) {
  require(oracle.size() == n, "oracle does not host n points");
  return sampling_on(oracle, all_points(n), sample_size, seed);
}

}  // namespace medianlab
