#pragma once

#include <boost/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "medianlab/exact_distance.hpp"

namespace medianlab {

// Internal point index in [0, n). External formats are 1-based.
using PointId = std::uint32_t;
using PointSet = std::vector<PointId>;
using Rational = boost::rational<std::int64_t>;

// Simple undirected unweighted graph with sorted, deduplicated adjacency.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  static Graph from_edges(std::size_t n, std::span<const std::pair<PointId, PointId>> edges);

  std::size_t size() const { return adj_.size(); }
  std::size_t edge_count() const;
  std::span<const PointId> neighbors(PointId v) const { return adj_[v]; }
  std::size_t degree(PointId v) const { return adj_[v].size(); }
  bool has_edge(PointId u, PointId v) const;
  std::vector<std::pair<PointId, PointId>> edges() const;

  // Adds {u,v}; self-loops are rejected, duplicates are ignored.
  void add_edge(PointId u, PointId v);

 private:
  std::vector<std::vector<PointId>> adj_;
};

// Hop distances from `source`; unreachable vertices get -1.
std::vector<std::int64_t> bfs_distances(const Graph& g, PointId source);

// Immutable symmetric n x n table of exact distances.
class MetricTable {
 public:
  MetricTable() = default;
  explicit MetricTable(std::size_t n) : n_(n), dist_(n * n) {}

  std::size_t size() const { return n_; }
  const ExactDistance& at(PointId a, PointId b) const { return dist_[std::size_t{a} * n_ + b]; }
  // Sets both (a,b) and (b,a).
  void set(PointId a, PointId b, ExactDistance d);
  // Sets only (a,b); used to build deliberately asymmetric inputs.
  void set_directed(PointId a, PointId b, ExactDistance d) { dist_[std::size_t{a} * n_ + b] = d; }
  std::span<const ExactDistance> row(PointId a) const { return {dist_.data() + std::size_t{a} * n_, n_}; }

  static MetricTable from_units(const std::vector<std::vector<std::int64_t>>& rows);

 private:
  std::size_t n_ = 0;
  std::vector<ExactDistance> dist_;
};

enum class ViolationKind { Identity, Positivity, Symmetry, Triangle, Negative };

struct Violation {
  ViolationKind kind;
  // Witnessing points; for Triangle, d(a,c) > d(a,b) + d(b,c).
  PointId a = 0, b = 0, c = 0;
};

std::string to_string(ViolationKind kind);

// Returns every violated axiom instance; empty iff `table` is a metric.
std::vector<Violation> validate_metric(const MetricTable& table, std::size_t max_violations = SIZE_MAX);

// All-pairs hop metric of a connected graph. Throws DisconnectedGraph.
MetricTable graph_metric(const Graph& g);

// Anything that can answer d(a, b). Answering may mutate the source
// (a live adversary), so the call is non-const.
class DistanceSource {
 public:
  virtual ~DistanceSource() = default;
  virtual std::size_t size() const = 0;
  virtual ExactDistance distance(PointId a, PointId b) = 0;
};

class TableSource final : public DistanceSource {
 public:
  explicit TableSource(const MetricTable& table) : table_(&table) {}
  explicit TableSource(MetricTable&&) = delete;
  std::size_t size() const override { return table_->size(); }
  ExactDistance distance(PointId a, PointId b) override { return table_->at(a, b); }

 private:
  const MetricTable* table_;
};

struct TranscriptEntry {
  std::size_t index;  // 1-based
  PointId a, b;
  ExactDistance answer;
  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

using Transcript = std::vector<TranscriptEntry>;

// Single-owner query counter: every query() call is charged, repeats included.
class CountingOracle {
 public:
  explicit CountingOracle(DistanceSource& source) : source_(&source) {}

  std::size_t size() const { return source_->size(); }
  ExactDistance query(PointId a, PointId b);
  std::size_t queries_made() const { return transcript_.size(); }
  const Transcript& transcript() const { return transcript_; }

 private:
  DistanceSource* source_;
  Transcript transcript_;
};

// sum_{y in S} d(p, y); exactly |S| queries.
ExactDistance median_cost(CountingOracle& oracle, PointId p, std::span<const PointId> set);

struct MedianResult {
  PointId point;
  ExactDistance cost;
};

// Brute-force 1-median of (S, d|SxS) with lowest-index tie-breaking.
// Issues |S|(|S|-1)/2 queries, reusing each answer for both orientations.
MedianResult exact_median(CountingOracle& oracle, std::span<const PointId> set);

// E[d(u,v)] for u, v independent uniform over S, diagonal included.
struct AverageDistance {
  ExactDistance total;  // sum over ordered pairs
  std::int64_t pairs;   // |S|^2
  double value() const { return total.approx() / static_cast<double>(pairs); }
  // Exact value; requires a distance without infinitesimal part.
  Rational as_rational() const;
};

AverageDistance average_pairwise_distance(CountingOracle& oracle, std::span<const PointId> set);

PointSet all_points(std::size_t n);

}  // namespace medianlab
