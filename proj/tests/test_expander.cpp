#include <gtest/gtest.h>

#include <random>
#include <set>

#include "medianlab/errors.hpp"
#include "medianlab/expander.hpp"

using namespace medianlab;

namespace {

Graph cycle(std::size_t n) {
  Graph g(n);
  for (PointId i = 0; i < n; ++i) g.add_edge(i, static_cast<PointId>((i + 1) % n));
  return g;
}

Graph complete(std::size_t n) {
  Graph g(n);
  for (PointId i = 0; i < n; ++i)
    for (PointId j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

// Minimum cut ratio by direct enumeration over the edge list.
Rational cut_ratio_reference(const Graph& g, std::size_t d) {
  const std::size_t n = g.size();
  const auto edges = g.edges();
  Rational best(1000000);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto k = static_cast<std::size_t>(__builtin_popcount(mask));
    if (2 * k > n) continue;
    std::int64_t cut = 0;
    for (const auto& [a, b] : edges) cut += ((mask >> a) & 1u) != ((mask >> b) & 1u);
    best = std::min(best, Rational(cut, static_cast<std::int64_t>(d * k)));
  }
  return best;
}

std::int64_t boundary_reference(const Graph& g, const std::set<PointId>& inside) {
  std::int64_t total = 0;
  for (PointId x : inside) {
    const auto dist = bfs_distances(g, x);
    std::int64_t best = INT64_MAX;
    for (PointId v = 0; v < g.size(); ++v)
      if (!inside.count(v) && dist[v] >= 0) best = std::min<std::int64_t>(best, dist[v]);
    total += best;
  }
  return total;
}

}  // namespace

TEST(BuildRegular, K4IsForced) {
  const auto b = build_regular(4, 3, 1);
  EXPECT_EQ(b.graph.graph().edge_count(), 6u);
  for (PointId i = 0; i < 4; ++i)
    for (PointId j = i + 1; j < 4; ++j) EXPECT_TRUE(b.graph.graph().has_edge(i, j));
}

TEST(BuildRegular, Handshake) {
  EXPECT_EQ(build_regular(6, 3, 4).graph.graph().edge_count(), 9u);
  for (std::size_t n : {10, 20, 64, 100})
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto b = build_regular(n, 8 < n ? 8 : 3, seed);
      const std::size_t d = b.graph.degree();
      EXPECT_EQ(b.graph.graph().edge_count(), n * d / 2);
      for (PointId v = 0; v < n; ++v) EXPECT_EQ(b.graph.graph().degree(v), d);
      EXPECT_TRUE(is_connected(b.graph.graph()));
    }
}

TEST(BuildRegular, Infeasible) {
  EXPECT_THROW(build_regular(5, 3, 1), Infeasible);
  EXPECT_THROW(build_regular(4, 4, 1), Infeasible);
  EXPECT_THROW(build_regular(10, 2, 1), PreconditionError);
}

TEST(BuildRegular, SeedDeterministic) {
  const auto a = build_regular(64, 8, 11);
  const auto b = build_regular(64, 8, 11);
  EXPECT_EQ(a.graph.graph().edges(), b.graph.graph().edges());
  EXPECT_EQ(a.accepted_seed, b.accepted_seed);
}

TEST(BuildRegular, MeetsSpectralThreshold) {
  const auto b = build_regular(256, 8, 2);
  ASSERT_TRUE(b.report.lambda2.has_value());
  EXPECT_LE(*b.report.lambda2, 2 * std::sqrt(7.0) + 0.75);
  EXPECT_GT(b.report.alpha_lower, 0.0);
}

TEST(RegularGraph, RejectsIrregular) {
  Graph g = complete(4);
  Graph h(4);
  h.add_edge(0, 1);
  h.add_edge(1, 2);
  h.add_edge(2, 3);
  EXPECT_THROW(RegularGraph(h, 2), NotRegular);
  EXPECT_NO_THROW(RegularGraph(g, 3));
}

TEST(Certify, K4Exhaustive) {
  const auto r = certify_expansion(RegularGraph(complete(4), 3), CertifyMode::Exhaustive);
  ASSERT_TRUE(r.alpha_exact.has_value());
  EXPECT_EQ(*r.alpha_exact, Rational(2, 3));
}

TEST(Certify, C8Exhaustive) {
  const auto r = certify_expansion(RegularGraph(cycle(8), 2), CertifyMode::Exhaustive);
  ASSERT_TRUE(r.alpha_exact.has_value());
  EXPECT_EQ(*r.alpha_exact, Rational(1, 4));
  EXPECT_EQ(r.witness.size(), 4u);
}

TEST(Certify, K4Spectral) {
  const auto r = certify_expansion(RegularGraph(complete(4), 3), CertifyMode::Spectral);
  ASSERT_TRUE(r.lambda2.has_value());
  EXPECT_NEAR(*r.lambda2, -1.0, 1e-9);
  EXPECT_NEAR(second_eigenvalue(cycle(8)), std::sqrt(2.0), 1e-9);
}

TEST(Certify, Disconnected) {
  Graph g(8);
  for (PointId i = 0; i < 4; ++i) g.add_edge(i, (i + 1) % 4);
  for (PointId i = 4; i < 8; ++i) g.add_edge(i, 4 + (i + 1) % 4);
  EXPECT_THROW(certify_expansion(RegularGraph(g, 2), CertifyMode::Spectral), DisconnectedGraph);
}

TEST(Certify, ExhaustiveMatchesReferenceAndDominatesSpectral) {
  for (std::size_t n : {6, 8, 10, 12, 14, 16})
    for (std::size_t d : {3, 4})
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        if (n * d % 2) continue;
        BuildOptions lax;
        lax.lambda_slack = 100;
        const auto b = build_regular(n, d, seed, lax);
        const auto ex = certify_expansion(b.graph, CertifyMode::Exhaustive);
        const auto sp = certify_expansion(b.graph, CertifyMode::Spectral);
        ASSERT_TRUE(ex.alpha_exact.has_value());
        EXPECT_EQ(*ex.alpha_exact, cut_ratio_reference(b.graph.graph(), d));
        EXPECT_GE(ex.alpha_lower, sp.alpha_lower) << "n=" << n << " d=" << d;
      }
}

TEST(BfsLevels, Examples) {
  const auto all = std::vector<PointId>{0, 1, 2, 3, 4, 5, 6, 7};
  EXPECT_EQ(bfs_levels(cycle(8), all).size(), 1u);
  const PointId root = 0;
  std::vector<std::size_t> sizes;
  for (const auto& l : bfs_levels(cycle(8), {&root, 1})) sizes.push_back(l.size());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2, 2, 2, 1}));
  sizes.clear();
  for (const auto& l : bfs_levels(complete(4), {&root, 1})) sizes.push_back(l.size());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 3}));
}

TEST(BfsLevels, PartitionAndAdjacentLevelEdges) {
  std::mt19937_64 rng(5);
  const auto b = build_regular(128, 8, 3);
  const Graph& g = b.graph.graph();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PointId> roots;
    for (PointId v = 0; v < 128; ++v)
      if (rng() % 10 == 0) roots.push_back(v);
    if (roots.empty()) roots.push_back(0);
    const auto levels = bfs_levels(g, roots);
    std::vector<int> level_of(128, -1);
    for (std::size_t i = 0; i < levels.size(); ++i)
      for (PointId v : levels[i]) {
        ASSERT_EQ(level_of[v], -1);
        level_of[v] = static_cast<int>(i);
      }
    for (int l : level_of) EXPECT_GE(l, 0);
    for (const auto& [u, v] : g.edges()) EXPECT_LE(std::abs(level_of[u] - level_of[v]), 1);
  }
}

TEST(BoundarySum, Examples) {
  const PointId one = 3;
  EXPECT_EQ(boundary_distance_sum(cycle(8), {&one, 1}), 1);
  const std::vector<PointId> arc{0, 1, 2, 3};
  EXPECT_EQ(boundary_distance_sum(cycle(8), arc), 6);
  const std::vector<PointId> all{0, 1, 2, 3};
  EXPECT_THROW(boundary_distance_sum(complete(4), all), PreconditionError);
  EXPECT_THROW(boundary_distance_sum(complete(4), {}), PreconditionError);
}

TEST(BoundarySum, MatchesPerVertexBfs) {
  std::mt19937_64 rng(9);
  const auto b = build_regular(64, 4, 2, BuildOptions{100, 64});
  for (int trial = 0; trial < 30; ++trial) {
    std::set<PointId> inside;
    const std::size_t k = 1 + rng() % 32;
    while (inside.size() < k) inside.insert(static_cast<PointId>(rng() % 64));
    const std::vector<PointId> u(inside.begin(), inside.end());
    EXPECT_EQ(boundary_distance_sum(b.graph.graph(), u), boundary_reference(b.graph.graph(), inside));
  }
}

TEST(LevelDecay, HoldsForCertifiedAlphaAndCanFail) {
  const auto b = build_regular(64, 8, 1);
  const PointId one = 7;
  EXPECT_TRUE(verify_level_decay(b.graph.graph(), {&one, 1}, b.report.alpha_lower));
  std::vector<PointId> half;
  for (PointId v = 0; v < 32; ++v) half.push_back(v);
  EXPECT_TRUE(verify_level_decay(b.graph.graph(), half, b.report.alpha_lower));
  EXPECT_FALSE(verify_level_decay(cycle(16), std::vector<PointId>{0, 1, 2, 3, 4, 5, 6, 7}, 0.9));
}
