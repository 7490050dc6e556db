#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "medianlab/metric.hpp"

namespace medianlab {

struct SolverResult {
  PointId output = 0;
  std::size_t queries_used = 0;
  // Guaranteed approximation factor on S; nullopt when none is claimed.
  std::optional<Rational> claimed_beta;
};

using QueryPair = std::pair<PointId, PointId>;

// Pluggable 1-median approximator run on (S, d|SxS).
class InnerApproximator {
 public:
  virtual ~InnerApproximator() = default;
  virtual std::string name() const = 0;
  virtual bool nonadaptive() const = 0;
  // Upper bound on queries for |S| = s.
  virtual std::size_t query_bound(std::size_t s) const = 0;
  virtual SolverResult solve(CountingOracle& oracle, std::span<const PointId> set) = 0;
};

// A nonadaptive approximator commits to its whole query schedule before it
// sees any answer. solve() enforces that: the schedule is materialized, run
// against the oracle, and only then are the answers handed to decide().
class NonadaptiveApproximator : public InnerApproximator {
 public:
  bool nonadaptive() const final { return true; }
  virtual std::vector<QueryPair> schedule(std::span<const PointId> set) const = 0;
  virtual SolverResult decide(std::span<const PointId> set, std::span<const QueryPair> schedule,
                              std::span<const ExactDistance> answers) const = 0;
  SolverResult solve(CountingOracle& oracle, std::span<const PointId> set) final;

  // Schedule emitted by the most recent solve(); used to audit nonadaptivity.
  const std::vector<QueryPair>& last_schedule() const { return last_schedule_; }

 private:
  std::vector<QueryPair> last_schedule_;
};

// Exact 1-median of S: all |S|(|S|-1)/2 pairs, beta = 1.
class ExactInner final : public NonadaptiveApproximator {
 public:
  std::string name() const override { return "exact"; }
  std::size_t query_bound(std::size_t s) const override { return s * (s - (s > 0 ? 1 : 0)) / 2; }
  std::vector<QueryPair> schedule(std::span<const PointId> set) const override;
  SolverResult decide(std::span<const PointId> set, std::span<const QueryPair> schedule,
                      std::span<const ExactDistance> answers) const override;
};

// Deterministic linear-query stand-in. Pivots p1 < p2 are the two smallest
// indices of S; the candidate c minimizes d(p1,y) + d(p2,y) over y outside
// {p1, p2}. The output is whichever of {p1, p2, c} has the smallest measured
// S-cost. The cost of c
// can only be measured after the pivot rows are known, so this runs in two
// rounds and is adaptive.
class PivotTournamentInner final : public InnerApproximator {
 public:
  std::string name() const override { return "pivot"; }
  bool nonadaptive() const override { return false; }
  std::size_t query_bound(std::size_t s) const override { return 5 * s; }
  SolverResult solve(CountingOracle& oracle, std::span<const PointId> set) override;
};

// Seeded Monte Carlo baseline on S; no guarantee claimed.
// Candidates and the evaluation sample are both drawn without replacement
// from S, so sample_size >= |S| degenerates to brute force.
class SamplingInner final : public NonadaptiveApproximator {
 public:
  // sample_size == 0 picks ceil(sqrt(|S|)).
  explicit SamplingInner(std::uint64_t seed, std::size_t sample_size = 0) : seed_(seed), sample_size_(sample_size) {}
  std::string name() const override { return "sampling"; }
  std::size_t query_bound(std::size_t s) const override;
  std::vector<QueryPair> schedule(std::span<const PointId> set) const override;
  SolverResult decide(std::span<const PointId> set, std::span<const QueryPair> schedule,
                      std::span<const ExactDistance> answers) const override;

 private:
  std::size_t effective_size(std::size_t s) const;
  std::uint64_t seed_;
  std::size_t sample_size_;
};

// Prefix subset {0, ..., m-1}.
PointSet subset_schedule(std::size_t n, std::size_t m);

// max(1, ceil(n / isqrt(f_of_n))), capped at n.
std::size_t subset_size(std::size_t n, std::uint64_t f_of_n);

std::uint64_t isqrt(std::uint64_t x);

// Runs `inner` on the prefix subset of size subset_size(n, f_of_n). Queries
// stay inside SxS.
SolverResult restrict_and_solve(CountingOracle& oracle, std::size_t n, std::uint64_t f_of_n, InnerApproximator& inner);

SolverResult inner_exact(CountingOracle& oracle, std::span<const PointId> set);
SolverResult inner_pivot_tournament(CountingOracle& oracle, std::span<const PointId> set);

// Global guarantee of a beta-approximate median of (S, d|SxS) on all n
// points: 4 * beta * n / s + 1.
Rational transfer_bound(Rational beta, std::int64_t n, std::int64_t s);

SolverResult sampling_on(CountingOracle& oracle, std::span<const PointId> set, std::size_t sample_size, std::uint64_t seed);
SolverResult sampling_baseline(CountingOracle& oracle, std::size_t n, std::size_t sample_size, std::uint64_t seed);

}  // namespace medianlab
