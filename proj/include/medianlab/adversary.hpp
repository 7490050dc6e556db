#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "medianlab/algorithms.hpp"
#include "medianlab/expander.hpp"
#include "medianlab/metric.hpp"

namespace medianlab {

// The adversary's shrinking graph. The round-0 graph is complete and is
// never materialized: edge {u,v} is present iff it is permanent, or neither
// endpoint has been saturated (had its non-permanent edges swept away).
// Removals are still logged per round so snapshots can be rebuilt.
class DynamicGraph {
 public:
  static constexpr std::size_t kNever = SIZE_MAX;

  struct PermanentEdge {
    PointId other;
    std::size_t round;  // 0 for seed edges
  };
  struct RemovedEdge {
    PointId u, v;
    std::size_t round;
  };

  explicit DynamicGraph(std::size_t n);

  std::size_t size() const { return n_; }
  bool is_permanent(PointId u, PointId v) const;
  std::optional<std::size_t> permanent_round(PointId u, PointId v) const;
  bool is_saturated(PointId v) const { return saturated_round_[v] != kNever; }
  std::size_t saturated_round(PointId v) const { return saturated_round_[v]; }
  bool has_edge(PointId u, PointId v) const;
  // Presence in the snapshot after `round` rounds.
  bool present_at(PointId u, PointId v, std::size_t round) const;

  std::size_t permanent_degree(PointId v) const { return permanent_[v].size(); }
  std::span<const PermanentEdge> permanent_edges(PointId v) const { return permanent_[v]; }
  std::size_t permanent_edge_count() const { return permanent_count_; }
  Graph permanent_graph() const;
  const std::vector<RemovedEdge>& removal_log() const { return removed_; }

  // Returns true if the edge was not permanent before.
  bool mark_permanent(PointId u, PointId v, std::size_t round);
  // Removes every non-permanent edge at v; returns how many were removed.
  std::size_t saturate(PointId v, std::size_t round);

  // Hop distances from `source`; -1 marks unreachable. If `stop_at` is set
  // the search ends as soon as it is labelled.
  std::vector<std::int32_t> distances_from(PointId source, std::optional<PointId> stop_at = std::nullopt) const;

  // Shortest a-b path (a first). Built backwards from b: each vertex's
  // predecessor is its lowest-index neighbour one level closer to a.
  std::vector<PointId> shortest_path(PointId a, PointId b) const;

  // Materialized snapshot after `round` rounds; O(n^2), for small n.
  Graph snapshot(std::size_t round) const;

 private:
  std::size_t n_;
  std::vector<std::vector<PermanentEdge>> permanent_;
  std::vector<std::size_t> saturated_round_;
  std::vector<PointId> unsaturated_;  // ascending
  std::vector<RemovedEdge> removed_;
  std::size_t permanent_count_ = 0;
};

struct AdversaryConfig {
  std::size_t n = 0;
  std::size_t q = 0;  // total rounds, padding included
  std::size_t d = 0;
  std::size_t cap = 0;  // the saturation threshold C
};

// Smallest integer C with C > 2d + 4q/n.
std::size_t minimum_cap(std::size_t n, std::size_t q, std::size_t d);

struct RoundRecord {
  PointId a, b;
  std::int64_t answer;
  std::vector<PointId> path;
  std::size_t nonpermanent_on_path;  // at pick time
  std::size_t newly_permanent;
  std::size_t max_new_at_vertex;
  std::size_t permanent_before, permanent_after;
  std::vector<PointId> saturated;  // vertices swept for the first time
};

struct Certificate {
  AdversaryConfig config;
  PointId z_star = 0;
  // d_{G^(q)}; empty when n exceeds the brute-force cap.
  MetricTable final_metric;
  bool full_metric = false;
  std::vector<std::int64_t> z_row;  // d_{G^(q)}(z*, .)
  Graph permanent_graph;
  std::vector<PointId> bad;  // permanent degree >= C
  std::int64_t z_star_cost = 0;
  PointId best_good = 0;
  std::int64_t best_good_cost = 0;
  Rational ratio;
  std::size_t max_permanent_degree = 0;
  // Set when only a sample of good vertices was evaluated, so the reported
  // ratio is a lower bound on the true one.
  bool lower_bound_on_ratio = false;
  DynamicGraph final_graph{0};

  // d_{G^(q)}(a, b), from the table when available.
  std::int64_t distance(PointId a, PointId b) const;
};

class Adversary {
 public:
  // Throws BadConstant unless C > 2d + 4q/n, NotRegular if the seed graph is
  // not d-regular on n vertices.
  Adversary(const AdversaryConfig& config, const RegularGraph& expander);

  const AdversaryConfig& config() const { return config_; }
  const DynamicGraph& graph() const { return graph_; }
  const Graph& expander() const { return expander_; }
  std::size_t rounds_served() const { return rounds_.size(); }
  std::size_t rounds_left() const { return config_.q - rounds_.size(); }
  const std::vector<RoundRecord>& rounds() const { return rounds_; }
  const Transcript& transcript() const { return transcript_; }

  // One round: answer with the current shortest-path length, make the path
  // permanent, then sweep vertices with more than C permanent edges.
  // Throws BudgetExhausted after q rounds.
  std::int64_t answer(PointId a, PointId b);

  // Pads the game with (z*, x) for every x != z*, then repeats
  // (z*, z*+1 mod n) until q rounds are served. Throws PadOverflow if the
  // first part does not fit.
  void pad(PointId z_star);

  // Pads, then builds the certificate. All-pairs distances are computed only
  // for n <= brute_force_cap; beyond that, `sample` good vertices are scored.
  Certificate finalize(PointId z_star, std::size_t brute_force_cap = 4096, std::size_t sample = 64);

 private:
  AdversaryConfig config_;
  Graph expander_;
  DynamicGraph graph_;
  std::vector<RoundRecord> rounds_;
  Transcript transcript_;
};

class AdversarySource final : public DistanceSource {
 public:
  explicit AdversarySource(Adversary& adv) : adv_(&adv) {}
  std::size_t size() const override { return adv_->config().n; }
  ExactDistance distance(PointId a, PointId b) override { return ExactDistance{adv_->answer(a, b)}; }

 private:
  Adversary* adv_;
};

// Lowest-cost vertex outside Bad and its cost.
std::pair<PointId, std::int64_t> good_point_bound(const Certificate& cert);

// Every transcript answer equals d_{G^(q)}(a, b).
bool verify_consistency(const Certificate& cert, const Transcript& transcript);

// Each chosen path had at most one non-permanent edge when picked and the
// permanent-edge count grew by at most one per round.
bool verify_path_discipline(const Adversary& adv);

// At most two edges per vertex become permanent in a round.
bool verify_vertex_growth(const Adversary& adv);

// Seed edges are permanent and were never removed.
bool verify_expander_embedded(const Adversary& adv);

// Removed edges were non-permanent, present one round earlier, and absent
// afterwards; permanent edges were present in every earlier snapshot.
bool verify_snapshot_log(const Adversary& adv);

// |{x : d_perm(z*, x) <= k}| <= sum_{h<=k} (C+2)^h for every k >= 1.
bool verify_ball_growth(const Certificate& cert);

struct GameChecks {
  bool consistency = false;
  bool expander_embedded = false;
  bool snapshot_log = false;
  bool path_discipline = false;
  bool vertex_growth = false;
  bool max_degree = false;  // <= C + 2
  bool few_bad = false;     // |Bad| <= n/2
  bool ball_growth = false;
  std::optional<bool> metric_valid;  // only when validated
  bool all() const;
};

GameChecks check_game(const Adversary& adv, const Certificate& cert, bool validate_metric_table);

struct GameOptions {
  std::size_t d = 8;
  std::optional<std::size_t> cap;  // defaults to minimum_cap
  std::uint64_t seed = 1;
  std::size_t brute_force_cap = 4096;
  std::size_t validate_cap = 256;  // run validate_metric on d_{G^(q)} up to this n
};

struct GameReport {
  AdversaryConfig config;
  std::string algorithm;
  std::size_t algorithm_queries = 0;
  std::size_t expander_attempts = 0;
  Certificate certificate;
  GameChecks checks;
  Transcript transcript;  // adversary's, padding included
};

// Plays `algorithm` (budget q_alg) against the adversary on n points. The
// adversary is provisioned with q_alg + n - 1 rounds so that padding fits.
GameReport play_adversary_game(QueryAlgorithm& algorithm, std::size_t n, std::size_t q_alg, const GameOptions& options);

// Same, against a caller-supplied expander.
GameReport play_adversary_game(QueryAlgorithm& algorithm, const RegularGraph& expander, std::size_t q_alg,
                               const GameOptions& options);

}  // namespace medianlab
