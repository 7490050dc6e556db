#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "medianlab/adversary.hpp"
#include "medianlab/algorithms.hpp"
#include "medianlab/metric.hpp"

namespace medianlab {

// First-sight renaming of points to names 1, 2, ..., cnt.
class Renaming {
 public:
  bool contains(PointId x) const { return forward_.count(x) != 0; }
  // 1-based name of x; x must have been named.
  std::size_t name(PointId x) const { return forward_.at(x); }
  // Assigns the next name if x is unseen; returns x's name.
  std::size_t assign(PointId x);
  std::size_t count() const { return inverse_.size(); }
  PointId original(std::size_t name) const { return inverse_.at(name - 1); }
  const std::unordered_map<PointId, std::size_t>& map() const { return forward_; }

  bool injective() const;
  bool range_within(std::size_t limit) const;

 private:
  std::unordered_map<PointId, std::size_t> forward_;
  std::vector<PointId> inverse_;
};

// Runs an algorithm with its points renamed on first sight so that all of
// its (at most q) queries and its output land in the first 2q+1 points of the
// oracle it is handed. Answers are relayed unchanged.
class TameAlgorithm final : public QueryAlgorithm {
 public:
  // `inner_n` is the size of the space the wrapped algorithm believes in.
  TameAlgorithm(QueryAlgorithm& inner, std::size_t q, std::size_t inner_n)
      : inner_(&inner), q_(q), inner_n_(inner_n) {}

  std::string name() const override { return "tame(" + inner_->name() + ")"; }
  PointId run(CountingOracle& oracle) override;

  const Renaming& renaming() const { return renaming_; }
  // The wrapped algorithm's own view, in its original point names.
  const Transcript& inner_transcript() const { return inner_transcript_; }
  PointId inner_output() const { return inner_output_; }
  std::size_t budget() const { return q_; }

 private:
  QueryAlgorithm* inner_;
  std::size_t q_;
  std::size_t inner_n_;
  Renaming renaming_;
  Transcript inner_transcript_;
  PointId inner_output_ = 0;
};

TameAlgorithm wrap_tame(QueryAlgorithm& algorithm, std::size_t q, std::size_t inner_n);

// The base space [m] = [2q+1] with every point of {m, ..., n-1} glued onto
// y at infinitesimal distance:
//   d(a,b) = eps         a, b both in the cluster {y} u {m..n-1}
//   d(a,b) = base(a,y)   exactly b in the cluster (and symmetrically)
//   d(a,b) = base(a,b)   otherwise
// Distances are computed on demand, so n can be large.
class GluedMetric {
 public:
  GluedMetric(MetricTable base, PointId y, std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t base_size() const { return base_.size(); }
  PointId anchor() const { return y_; }
  const MetricTable& base() const { return base_; }
  bool in_cluster(PointId a) const { return a == y_ || a >= base_.size(); }
  ExactDistance distance(PointId a, PointId b) const;

  // Materialized n x n table.
  MetricTable table() const;
  // The same construction with n' = min(n, m + 2) points. Any triple of
  // the full space maps onto a triple of this one with equal distances, so
  // validating it validates the full metric.
  GluedMetric reduced() const;
  ExactDistance cost(PointId p) const;

 private:
  MetricTable base_;
  PointId y_;
  std::size_t n_;
};

class GluedSource final : public DistanceSource {
 public:
  explicit GluedSource(const GluedMetric& metric) : metric_(&metric) {}
  std::size_t size() const override { return metric_->size(); }
  ExactDistance distance(PointId a, PointId b) override { return metric_->distance(a, b); }

 private:
  const GluedMetric* metric_;
};

GluedMetric glue_metric(const MetricTable& base, PointId y, std::size_t n);

// True iff eps-multiples up to `max_eps_total` stay below 2^n, the regime in
// which lexicographic order equals the order of the real values.
bool eps_regime_ok(std::size_t n, std::int64_t max_eps_total);

struct LowerBoundReport {
  std::size_t n = 0, q = 0, m = 0, d = 0, cap = 0;
  std::string algorithm;
  PointId z_star = 0;
  PointId y = 0;
  std::int64_t z_to_y = 0;  // d_{G^(q)}(z*, y)
  ExactDistance cost_z;
  ExactDistance cost_y;
  Rational ratio;  // standard part of cost_z / cost_y
  double ratio_value = 0;
  double log2_n = 0;
  double f_hat = 0;  // ratio / log2 n
  std::size_t bad_size = 0;
  std::size_t max_permanent_degree = 0;
  std::size_t expander_attempts = 0;
  std::map<std::string, bool> checks;
  bool all_checks() const;
};

struct LowerBoundOptions {
  std::size_t d = 8;
  std::optional<std::size_t> cap;
  std::uint64_t seed = 1;
  bool validate_glued = true;
  std::size_t validate_cap = 4096;  // validate the reduced glued metric up to this size
};

// Wraps the algorithm tame, plays the adversary on 2q+1 points, glues the
// remaining n - 2q - 1 points onto the best good vertex, and checks every
// claim of the construction exactly. Throws ConsistencyFailure if the
// adversary's answers do not replay on the glued metric.
LowerBoundReport hard_instance_game(QueryAlgorithm& algorithm, std::size_t n, std::size_t q,
                                    const LowerBoundOptions& options = {});

}  // namespace medianlab
