#include <gtest/gtest.h>

#include <random>

#include "medianlab/errors.hpp"
#include "medianlab/harness.hpp"
#include "medianlab/metric.hpp"

using namespace medianlab;

namespace {

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (PointId i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph star_graph(std::size_t leaves) {
  Graph g(leaves + 1);
  for (PointId i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

Graph cycle_graph(std::size_t n) {
  Graph g(n);
  for (PointId i = 0; i < n; ++i) g.add_edge(i, static_cast<PointId>((i + 1) % n));
  return g;
}

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (PointId i = 0; i < n; ++i)
    for (PointId j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

// Reference all-pairs hop distances by Floyd-Warshall on the adjacency matrix.
std::vector<std::vector<std::int64_t>> floyd(const Graph& g) {
  const std::size_t n = g.size();
  const std::int64_t inf = 1 << 28;
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (PointId j : g.neighbors(static_cast<PointId>(i))) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

MetricTable units_table(const std::vector<std::vector<std::int64_t>>& rows) {
  MetricTable t(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j)
      t.set_directed(static_cast<PointId>(i), static_cast<PointId>(j), ExactDistance{rows[i][j]});
  return t;
}

}  // namespace

TEST(ExactDistance, OrderIsLexicographic) {
  EXPECT_LT(ExactDistance(0, 5), ExactDistance(1, 0));
  EXPECT_LT(ExactDistance(3, 1), ExactDistance(3, 2));
  EXPECT_EQ(ExactDistance(2, 1) + ExactDistance(1, 2), ExactDistance(3, 3));
  EXPECT_EQ(3 * ExactDistance::epsilon(), ExactDistance(0, 3));
  EXPECT_TRUE(ExactDistance::zero().is_zero());
  EXPECT_FALSE(ExactDistance::epsilon().is_zero());
}

TEST(ValidateMetric, SinglePoint) {
  EXPECT_TRUE(validate_metric(units_table({{0}})).empty());
}

TEST(ValidateMetric, PathIsValid) {
  EXPECT_TRUE(validate_metric(graph_metric(path_graph(4))).empty());
}

TEST(ValidateMetric, ReportsTriangleWitness) {
  const auto v = validate_metric(units_table({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}));
  ASSERT_FALSE(v.empty());
  bool found = false;
  for (const auto& x : v)
    if (x.kind == ViolationKind::Triangle && ((x.a == 0 && x.b == 1 && x.c == 2) || (x.a == 2 && x.b == 1 && x.c == 0)))
      found = true;
  EXPECT_TRUE(found);
}

TEST(ValidateMetric, ReportsOtherAxioms) {
  auto kinds = [](const MetricTable& t) {
    std::vector<ViolationKind> k;
    for (const auto& v : validate_metric(t)) k.push_back(v.kind);
    return k;
  };
  auto has = [](const std::vector<ViolationKind>& k, ViolationKind x) {
    return std::find(k.begin(), k.end(), x) != k.end();
  };
  EXPECT_TRUE(has(kinds(units_table({{1, 1}, {1, 0}})), ViolationKind::Identity));
  EXPECT_TRUE(has(kinds(units_table({{0, 0}, {0, 0}})), ViolationKind::Positivity));
  EXPECT_TRUE(has(kinds(units_table({{0, 1}, {2, 0}})), ViolationKind::Symmetry));
  EXPECT_TRUE(has(kinds(units_table({{0, -1}, {-1, 0}})), ViolationKind::Negative));
}

TEST(ValidateMetric, EpsilonAware) {
  MetricTable t(3);
  t.set(0, 1, ExactDistance::epsilon());
  t.set(1, 2, ExactDistance{2});
  t.set(0, 2, ExactDistance{2, 1});
  EXPECT_TRUE(validate_metric(t).empty());
  t.set(0, 2, ExactDistance{2, 2});
  EXPECT_FALSE(validate_metric(t).empty());
}

TEST(ValidateMetric, RespectsLimit) {
  MetricTable t(6);
  for (PointId i = 0; i < 6; ++i)
    for (PointId j = i + 1; j < 6; ++j) t.set(i, j, ExactDistance{(i == 0 && j == 5) ? 100 : 1});
  EXPECT_EQ(validate_metric(t, 1).size(), 1u);
  EXPECT_GT(validate_metric(t).size(), 1u);
}

TEST(GraphMetric, Examples) {
  EXPECT_EQ(graph_metric(cycle_graph(4)).at(0, 2), ExactDistance{2});
  const auto k4 = graph_metric(complete_graph(4));
  for (PointId i = 0; i < 4; ++i)
    for (PointId j = 0; j < 4; ++j) EXPECT_EQ(k4.at(i, j), ExactDistance{i == j ? 0 : 1});
  EXPECT_EQ(graph_metric(path_graph(4)).at(0, 3), ExactDistance{3});
}

TEST(GraphMetric, DisconnectedThrows) {
  Graph g(3);
  g.add_edge(0, 1);
  EXPECT_THROW(graph_metric(g), DisconnectedGraph);
}

TEST(GraphMetric, MatchesFloydWarshall) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Graph g = generate_graph(InstanceKind::RandomGraph, 5 + seed, seed);
    const auto ref = floyd(g);
    const auto t = graph_metric(g);
    for (PointId i = 0; i < g.size(); ++i)
      for (PointId j = 0; j < g.size(); ++j) ASSERT_EQ(t.at(i, j).units(), ref[i][j]);
  }
}

TEST(Graph, RejectsSelfLoops) {
  Graph g(2);
  EXPECT_THROW(g.add_edge(1, 1), PreconditionError);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(CountingOracle, CountsRepeats) {
  const MetricTable p4t = graph_metric(path_graph(4));
  TableSource src(p4t);
  CountingOracle oracle(src);
  for (int k = 0; k < 5; ++k) oracle.query(0, 1);
  oracle.query(2, 2);
  EXPECT_EQ(oracle.queries_made(), 6u);
  ASSERT_EQ(oracle.transcript().size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(oracle.transcript()[i].index, i + 1);
  EXPECT_EQ(oracle.transcript()[5].answer, ExactDistance::zero());
}

TEST(CountingOracle, OutOfRange) {
  const MetricTable p3t = graph_metric(path_graph(3));
  TableSource src(p3t);
  CountingOracle oracle(src);
  EXPECT_THROW(oracle.query(0, 3), QueryOutOfRange);
  EXPECT_EQ(oracle.queries_made(), 0u);
}

TEST(MedianCost, Examples) {
  const MetricTable p4t = graph_metric(path_graph(4));
  TableSource p4(p4t);
  CountingOracle o1(p4);
  EXPECT_EQ(median_cost(o1, 1, all_points(4)), ExactDistance{4});
  const MetricTable start = graph_metric(star_graph(3));
  TableSource star(start);
  CountingOracle o2(star);
  EXPECT_EQ(median_cost(o2, 0, all_points(4)), ExactDistance{3});
  const PointSet single{2};
  EXPECT_EQ(median_cost(o2, 2, single), ExactDistance::zero());
}

TEST(ExactMedian, Examples) {
  const MetricTable p4t = graph_metric(path_graph(4));
  TableSource p4(p4t);
  CountingOracle o1(p4);
  const auto r = exact_median(o1, all_points(4));
  EXPECT_EQ(r.point, 1u);
  EXPECT_EQ(r.cost, ExactDistance{4});
  EXPECT_EQ(o1.queries_made(), 6u);

  const MetricTable start = graph_metric(star_graph(3));
  TableSource star(start);
  CountingOracle o2(star);
  const auto s = exact_median(o2, all_points(4));
  EXPECT_EQ(s.point, 0u);
  EXPECT_EQ(s.cost, ExactDistance{3});

  const PointSet single{3};
  const auto t = exact_median(o2, single);
  EXPECT_EQ(t.point, 3u);
  EXPECT_TRUE(t.cost.is_zero());
}

TEST(ExactMedian, MatchesDirectTableScan) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto kind = static_cast<InstanceKind>(seed % 4);
    const std::size_t n = 3 + seed % 20;
    const MetricTable t = generate_instance(kind, n, seed);
    PointId best = 0;
    std::int64_t best_cost = INT64_MAX;
    for (PointId p = 0; p < n; ++p) {
      std::int64_t c = 0;
      for (PointId x = 0; x < n; ++x) c += t.at(p, x).units();
      if (c < best_cost) best_cost = c, best = p;
    }
    TableSource src(t);
    CountingOracle oracle(src);
    const auto r = exact_median(oracle, all_points(n));
    EXPECT_EQ(r.point, best);
    EXPECT_EQ(r.cost.units(), best_cost);
    EXPECT_EQ(oracle.queries_made(), n * (n - 1) / 2);
  }
}

TEST(AveragePairwise, Examples) {
  MetricTable two(2);
  two.set(0, 1, ExactDistance{2});
  TableSource s2(two);
  CountingOracle o2(s2);
  EXPECT_EQ(average_pairwise_distance(o2, all_points(2)).as_rational(), Rational(1));

  const PointSet single{0};
  EXPECT_EQ(average_pairwise_distance(o2, single).as_rational(), Rational(0));

  const MetricTable p4t = graph_metric(path_graph(4));
  TableSource p4(p4t);
  CountingOracle o4(p4);
  EXPECT_EQ(average_pairwise_distance(o4, all_points(4)).as_rational(), Rational(5, 4));
}

TEST(BfsDistances, Unreachable) {
  Graph g(3);
  g.add_edge(0, 1);
  const auto d = bfs_distances(g, 0);
  EXPECT_EQ(d[1], 1);
  EXPECT_EQ(d[2], -1);
}
