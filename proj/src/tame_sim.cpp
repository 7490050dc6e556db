#include "medianlab/tame_sim.hpp"

#include <algorithm>
#include <cmath>

#include "medianlab/errors.hpp"
#include "medianlab/expander.hpp"

namespace medianlab {

std::size_t Renaming::assign(PointId x) {
  auto [it, inserted] = forward_.emplace(x, inverse_.size() + 1);
  if (inserted) inverse_.push_back(x);
  return it->second;
}

bool Renaming::injective() const {
  if (forward_.size() != inverse_.size()) return false;
  for (const auto& [x, name] : forward_)
    if (name < 1 || name > inverse_.size() || inverse_[name - 1] != x) return false;
  return true;
}

bool Renaming::range_within(std::size_t limit) const {
  return std::all_of(forward_.begin(), forward_.end(), [&](const auto& kv) { return kv.second >= 1 && kv.second <= limit; });
}

namespace {

class RenamingSource final : public DistanceSource {
 public:
  RenamingSource(CountingOracle& outer, Renaming& renaming, std::size_t q, std::size_t inner_n)
      : outer_(&outer), renaming_(&renaming), q_(q), inner_n_(inner_n) {}

  std::size_t size() const override { return inner_n_; }

  ExactDistance distance(PointId a, PointId b) override {
    if (relayed_ == q_) throw BudgetExceeded("wrapped algorithm issued more than " + std::to_string(q_) + " queries");
    ++relayed_;
    const std::size_t na = renaming_->assign(a);
    const std::size_t nb = renaming_->assign(b);
    return outer_->query(static_cast<PointId>(na - 1), static_cast<PointId>(nb - 1));
  }

 private:
  CountingOracle* outer_;
  Renaming* renaming_;
  std::size_t q_;
  std::size_t inner_n_;
  std::size_t relayed_ = 0;
};

}  // namespace

PointId TameAlgorithm::run(CountingOracle& oracle) {
  renaming_ = Renaming{};
  RenamingSource source(oracle, renaming_, q_, inner_n_);
  CountingOracle inner_oracle(source);
  inner_output_ = inner_->run(inner_oracle);
  require(inner_output_ < inner_n_, "wrapped algorithm output out of range");
  inner_transcript_ = inner_oracle.transcript();
  return static_cast<PointId>(renaming_.assign(inner_output_) - 1);
}

TameAlgorithm wrap_tame(QueryAlgorithm& algorithm, std::size_t q, std::size_t inner_n) {
  return TameAlgorithm(algorithm, q, inner_n);
}

bool eps_regime_ok(std::size_t n, std::int64_t max_eps_total) {
  if (max_eps_total < 0) return false;
  if (n >= 63) return true;
  return max_eps_total < (std::int64_t{1} << n);
}

GluedMetric::GluedMetric(MetricTable base, PointId y, std::size_t n) : base_(std::move(base)), y_(y), n_(n) {
  require(y < base_.size(), "anchor must lie in the base space");
  require(n >= base_.size(), "glued space cannot be smaller than the base");
  // A cost sums at most n - 1 eps terms and a triangle check at most 2.
  if (!eps_regime_ok(n, static_cast<std::int64_t>(std::max<std::size_t>(n, 2))))
    throw PreconditionError("infinitesimal multiples would leave the exact-order regime");
}

ExactDistance GluedMetric::distance(PointId a, PointId b) const {
  if (a == b) return ExactDistance::zero();
  const bool ca = in_cluster(a), cb = in_cluster(b);
  if (ca && cb) return ExactDistance::epsilon();
  if (cb) return base_.at(a, y_);
  if (ca) return base_.at(y_, b);
  return base_.at(a, b);
}

MetricTable GluedMetric::table() const {
  MetricTable t(n_);
  for (PointId a = 0; a < n_; ++a)
    for (PointId b = 0; b < n_; ++b) t.set_directed(a, b, distance(a, b));
  return t;
}

GluedMetric GluedMetric::reduced() const { return GluedMetric(base_, y_, std::min(n_, base_.size() + 2)); }

ExactDistance GluedMetric::cost(PointId p) const {
  // Points outside the base are interchangeable copies.
  ExactDistance total;
  const auto m = static_cast<PointId>(base_.size());
  for (PointId x = 0; x < m; ++x) total += distance(p, x);
  const auto copies = static_cast<std::int64_t>(n_ - m);
  if (copies > 0) {
    if (in_cluster(p) && p >= m) {
      total += (copies - 1) * ExactDistance::epsilon();
    } else {
      total += copies * distance(p, m);
    }
  }
  return total;
}

GluedMetric glue_metric(const MetricTable& base, PointId y, std::size_t n) {
  require(n > base.size(), "glue_metric needs n > 2q + 1");
  return GluedMetric(base, y, n);
}

bool LowerBoundReport::all_checks() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second; });
}

LowerBoundReport hard_instance_game(QueryAlgorithm& algorithm, std::size_t n, std::size_t q,
                                    const LowerBoundOptions& options) {
  require(q >= 2, "the hard instance needs q >= 2");
  require(2 * q + 1 < n, "the hard instance needs q < (n - 1) / 2");
  const std::size_t m = 2 * q + 1;
  const std::size_t d = std::min(options.d, m - 1);

  BuiltExpander built = build_regular(m, d, options.seed);
  TameAlgorithm tame(algorithm, q, n);
  GameOptions game;
  game.d = d;
  game.cap = options.cap;
  game.seed = options.seed;
  game.brute_force_cap = std::max<std::size_t>(m, 4096);
  game.validate_cap = 0;
  GameReport played = play_adversary_game(tame, built.graph, q, game);
  const Certificate& cert = played.certificate;

  LowerBoundReport r;
  r.n = n;
  r.q = q;
  r.m = m;
  r.d = d;
  r.cap = played.config.cap;
  r.algorithm = algorithm.name();
  r.z_star = cert.z_star;
  r.y = cert.best_good;
  r.z_to_y = cert.distance(r.z_star, r.y);
  r.bad_size = cert.bad.size();
  r.max_permanent_degree = cert.max_permanent_degree;
  r.expander_attempts = built.attempts;

  const GluedMetric glued(cert.final_metric, r.y, n);
  for (const auto& e : played.transcript)
    if (glued.distance(e.a, e.b) != e.answer)
      throw ConsistencyFailure("adversary answer to query " + std::to_string(e.index) + " does not replay on the glued metric");

  r.cost_z = glued.cost(r.z_star);
  r.cost_y = glued.cost(r.y);
  r.ratio = r.cost_y.units() > 0 ? Rational{r.cost_z.units(), r.cost_y.units()} : Rational{1};
  r.ratio_value = boost::rational_cast<double>(r.ratio);
  r.log2_n = std::log2(static_cast<double>(n));
  r.f_hat = r.ratio_value / r.log2_n;

  const auto& renaming = tame.renaming();
  r.checks["tame_injective"] = renaming.injective();
  r.checks["tame_range"] = renaming.range_within(m);
  r.checks["tame_budget"] = tame.inner_transcript().size() <= q;
  r.checks["adversary_consistency"] = played.checks.consistency;
  r.checks["expander_embedded"] = played.checks.expander_embedded;
  r.checks["snapshot_log"] = played.checks.snapshot_log;
  r.checks["path_discipline"] = played.checks.path_discipline;
  r.checks["vertex_growth"] = played.checks.vertex_growth;
  r.checks["max_degree"] = played.checks.max_degree;
  r.checks["few_bad"] = played.checks.few_bad;
  r.checks["ball_growth"] = played.checks.ball_growth;
  r.checks["glued_replay"] = true;

  // cost(z*) >= (n - m) d(z*, y): every glued copy sits at d(z*, y) from z*.
  const auto copies = static_cast<std::int64_t>(n - m);
  r.checks["far_output"] = r.cost_z >= copies * ExactDistance{r.z_to_y};
  // cost(y) = sum_{x in [m]} base(y, x) + (n - m) eps.
  ExactDistance local;
  for (PointId x = 0; x < m; ++x) local += cert.final_metric.at(r.y, x);
  r.checks["good_anchor_cost"] = r.cost_y == local + copies * ExactDistance::epsilon();

  if (options.validate_glued && m + 2 <= options.validate_cap) {
    r.checks["glued_metric_valid"] = validate_metric(glued.reduced().table(), 1).empty();
  }
  return r;
}

}  // namespace medianlab
