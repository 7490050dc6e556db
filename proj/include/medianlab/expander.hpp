#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "medianlab/metric.hpp"

namespace medianlab {

// Simple graph in which every vertex has degree exactly d.
class RegularGraph {
 public:
  // Throws NotRegular if some vertex degree differs from d.
  RegularGraph(Graph g, std::size_t d);

  std::size_t size() const { return graph_.size(); }
  std::size_t degree() const { return d_; }
  const Graph& graph() const { return graph_; }

 private:
  Graph graph_;
  std::size_t d_;
};

enum class CertifyMode { Spectral, Exhaustive };

struct ExpansionReport {
  CertifyMode method = CertifyMode::Spectral;
  // Lower bound on min_{|S| <= n/2} |E(S, M\S)| / (d |S|). Exact for the
  // exhaustive method; (d - lambda2) / (2d) minus a rounding margin for the
  // spectral one.
  double alpha_lower = 0.0;
  std::optional<Rational> alpha_exact;
  std::optional<double> lambda2;
  // Minimizing set found by the exhaustive method.
  std::vector<PointId> witness;
};

struct BuildOptions {
  // Accept when lambda2 <= 2 sqrt(d-1) + slack.
  double lambda_slack = 0.75;
  std::size_t max_attempts = 64;
};

struct BuiltExpander {
  RegularGraph graph;
  ExpansionReport report;
  std::size_t attempts;
  std::uint64_t accepted_seed;
};

// Random simple d-regular graph by stub pairing that rejects loops and
// parallel pairs as they are drawn; a stuck pairing restarts with seed + 1,
// as does a graph that fails the spectral threshold.
BuiltExpander build_regular(std::size_t n, std::size_t d, std::uint64_t seed, const BuildOptions& options = {});

// One pairing attempt; nullopt if the pairing got stuck.
std::optional<Graph> try_pair_regular(std::size_t n, std::size_t d, std::uint64_t seed);

double second_eigenvalue(const Graph& g);
bool is_connected(const Graph& g);

// Throws DisconnectedGraph for a disconnected graph. Exhaustive mode needs
// n <= 24.
ExpansionReport certify_expansion(const RegularGraph& g, CertifyMode mode);

// L_0 = roots, L_i = vertices at hop distance exactly i from the root set.
std::vector<std::vector<PointId>> bfs_levels(const Graph& g, std::span<const PointId> roots);

// sum over x in U of the hop distance from x to the nearest vertex outside U.
std::int64_t boundary_distance_sum(const Graph& g, std::span<const PointId> inside);

// Checks |S_{i+1}| <= (1 - alpha) |S_i| for every level i >= 1 of the BFS
// rooted at M\U (S_i = union of levels >= i) and the resulting bound
// boundary_distance_sum <= |U| / alpha^2.
bool verify_level_decay(const Graph& g, std::span<const PointId> inside, double alpha);

std::string to_string(CertifyMode mode);

}  // namespace medianlab
