#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "medianlab/metric.hpp"
#include "medianlab/solvers.hpp"

namespace medianlab {

enum class InstanceKind { RandomGraph, Grid, StarPath, Table };

InstanceKind parse_instance_kind(const std::string& name);
std::string to_string(InstanceKind kind);

// Deterministic per (kind, n, seed); the result is always a valid metric.
//  random-graph  random spanning tree plus about n/2 extra random edges
//  grid          row-major grid with ceil(sqrt n) columns, hop metric
//  star-path     path on n - floor(n/5) vertices, remaining vertices as
//                leaves of the last path vertex
//  table         random weights in [1, 10], closed under shortest paths
MetricTable generate_instance(InstanceKind kind, std::size_t n, std::uint64_t seed);

Graph generate_graph(InstanceKind kind, std::size_t n, std::uint64_t seed);

// In-place shortest-path closure (Floyd-Warshall) of a weight table.
void shortest_path_closure(MetricTable& table);

struct SweepConfig {
  InstanceKind kind = InstanceKind::RandomGraph;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t subset = 0;  // |S|
  std::string inner = "exact";
  friend auto operator<=>(const SweepConfig&, const SweepConfig&) = default;
};

struct SweepRow {
  SweepConfig config;
  std::size_t queries = 0;
  std::int64_t cost = 0;
  std::int64_t opt = 0;
  Rational ratio;
  Rational beta;  // measured S-cost ratio of the inner output
  Rational bound;
  bool bound_satisfied = false;
  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// Runs each config with the prefix subset of the given size, scores the
// output against brute-force OPT, and checks cost <= transfer_bound * OPT
// exactly. Rows come back sorted by config.
std::vector<SweepRow> sweep_upper_bound(std::vector<SweepConfig> configs, std::size_t brute_force_cap = 4096);

std::string sweep_csv_header();
std::string to_csv(const SweepRow& row);
SweepRow parse_sweep_csv(const std::string& line);

std::unique_ptr<InnerApproximator> make_inner(const std::string& name, std::uint64_t seed);

// True iff every recorded answer equals the source's distance.
bool replay_verify(const Transcript& transcript, DistanceSource& metric);
bool replay_verify(const Transcript& transcript, const MetricTable& metric);

}  // namespace medianlab
