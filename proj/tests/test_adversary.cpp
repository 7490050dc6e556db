#include <gtest/gtest.h>

#include <deque>
#include <random>

#include "medianlab/adversary.hpp"
#include "medianlab/algorithms.hpp"
#include "medianlab/errors.hpp"
#include "medianlab/expander.hpp"

using namespace medianlab;

namespace {

RegularGraph k4() {
  Graph g(4);
  for (PointId i = 0; i < 4; ++i)
    for (PointId j = i + 1; j < 4; ++j) g.add_edge(i, j);
  return RegularGraph(g, 3);
}

// Straightforward adversary on a dense adjacency matrix: full BFS, path
// rebuilt from b through lowest-index predecessors, full ascending sweep.
class ReferenceAdversary {
 public:
  ReferenceAdversary(const Graph& expander, std::size_t cap)
      : n_(expander.size()), cap_(cap), present_(n_ * n_, 1), permanent_(n_ * n_, 0) {
    for (std::size_t v = 0; v < n_; ++v) present_[v * n_ + v] = 0;
    for (const auto& [u, v] : expander.edges()) mark(u, v);
  }

  std::int64_t answer(PointId a, PointId b) {
    std::vector<std::int64_t> dist(n_, -1);
    std::deque<PointId> queue{a};
    dist[a] = 0;
    while (!queue.empty()) {
      const PointId u = queue.front();
      queue.pop_front();
      for (PointId v = 0; v < n_; ++v)
        if (present_[u * n_ + v] && dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
    }
    path.assign(1, b);
    for (PointId cur = b; cur != a;) {
      for (PointId v = 0; v < n_; ++v)
        if (present_[cur * n_ + v] && dist[v] == dist[cur] - 1) {
          cur = v;
          break;
        }
      path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    for (std::size_t i = 0; i + 1 < path.size(); ++i) mark(path[i], path[i + 1]);
    for (PointId v = 0; v < n_; ++v) {
      std::size_t deg = 0;
      for (PointId w = 0; w < n_; ++w) deg += permanent_[v * n_ + w];
      if (deg > cap_)
        for (PointId w = 0; w < n_; ++w)
          if (!permanent_[v * n_ + w]) present_[v * n_ + w] = present_[w * n_ + v] = 0;
    }
    return dist[b];
  }

  bool present(PointId u, PointId v) const { return present_[u * n_ + v] != 0; }
  std::vector<PointId> path;

 private:
  void mark(PointId u, PointId v) { permanent_[u * n_ + v] = permanent_[v * n_ + u] = 1; }
  std::size_t n_, cap_;
  std::vector<char> present_, permanent_;
};

std::vector<std::pair<PointId, PointId>> random_queries(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<PointId, PointId>> out;
  for (std::size_t i = 0; i < count; ++i)
    out.emplace_back(static_cast<PointId>(rng() % n), static_cast<PointId>(rng() % n));
  return out;
}

// Half of the queries start at one of three hubs, so hubs get swept.
std::vector<std::pair<PointId, PointId>> skewed_queries(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<PointId, PointId>> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto a = static_cast<PointId>(rng() % 2 ? rng() % 3 : rng() % n);
    out.emplace_back(a, static_cast<PointId>(rng() % n));
  }
  return out;
}

}  // namespace

TEST(AdversaryConfig, ConstantCheck) {
  EXPECT_NO_THROW(Adversary(AdversaryConfig{4, 4, 3, 11}, k4()));
  EXPECT_THROW(Adversary(AdversaryConfig{4, 4, 3, 10}, k4()), BadConstant);
  EXPECT_EQ(minimum_cap(4, 4, 3), 11u);
  EXPECT_EQ(minimum_cap(64, 64, 8), 21u);
  EXPECT_EQ(minimum_cap(64, 65, 8), 21u);
}

TEST(AdversaryConfig, NotRegular) {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 0);
  g.add_edge(0, 2);
  EXPECT_THROW(RegularGraph(g, 3), NotRegular);
  EXPECT_THROW(Adversary(AdversaryConfig{4, 4, 2, 11}, k4()), NotRegular);
}

TEST(Adversary, FirstAnswersAndBudget) {
  Adversary adv(AdversaryConfig{4, 3, 3, 11}, k4());
  const auto before = adv.graph().permanent_edge_count();
  EXPECT_EQ(adv.answer(2, 2), 0);
  EXPECT_EQ(adv.graph().permanent_edge_count(), before);
  EXPECT_EQ(adv.rounds().back().newly_permanent, 0u);
  EXPECT_EQ(adv.answer(0, 3), 1);
  EXPECT_EQ(adv.answer(1, 2), 1);
  EXPECT_THROW(adv.answer(0, 1), BudgetExhausted);
}

TEST(Adversary, FirstQueryOnLargeGraphIsOne) {
  const auto e = build_regular(64, 8, 1);
  Adversary adv(AdversaryConfig{64, 10, 8, minimum_cap(64, 10, 8)}, e.graph);
  EXPECT_EQ(adv.answer(5, 60), 1);
}

TEST(Adversary, MatchesReferenceImplementation) {
  std::size_t swept = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const std::size_t n = 40 + 4 * seed;
    const std::size_t d = 3 + seed % 2;
    const auto e = build_regular(n, d, seed);
    const std::size_t q = n;
    // A small cap forces plenty of sweeping.
    const std::size_t cap = minimum_cap(n, q, d);
    Adversary adv(AdversaryConfig{n, q, d, cap}, e.graph);
    ReferenceAdversary ref(e.graph.graph(), cap);
    for (const auto& [a, b] : skewed_queries(n, q, seed)) {
      ASSERT_EQ(adv.answer(a, b), ref.answer(a, b));
      ASSERT_EQ(adv.rounds().back().path, ref.path);
      swept += adv.rounds().back().saturated.size();
    }
    for (PointId u = 0; u < n; ++u)
      for (PointId v = 0; v < n; ++v)
        if (u != v) ASSERT_EQ(adv.graph().has_edge(u, v), ref.present(u, v));
  }
  EXPECT_GT(swept, 0u);
}

TEST(Adversary, ConcentratedQueriesSaturate) {
  const auto e = build_regular(128, 4, 3);
  const std::size_t q = 200;
  Adversary adv(AdversaryConfig{128, q, 4, minimum_cap(128, q, 4)}, e.graph);
  ReferenceAdversary ref(e.graph.graph(), minimum_cap(128, q, 4));
  std::size_t swept = 0;
  for (std::size_t i = 0; i < q; ++i) {
    const PointId a = static_cast<PointId>(i % 3), b = static_cast<PointId>((i * 7 + 5) % 128);
    ASSERT_EQ(adv.answer(a, b), ref.answer(a, b));
    swept += adv.rounds().back().saturated.size();
  }
  EXPECT_GT(swept, 0u);
  EXPECT_TRUE(verify_path_discipline(adv));
  EXPECT_TRUE(verify_vertex_growth(adv));
  EXPECT_TRUE(verify_expander_embedded(adv));
  EXPECT_TRUE(verify_snapshot_log(adv));
}

TEST(Adversary, AnswersEqualSnapshotDistances) {
  const auto e = build_regular(24, 3, 5);
  const std::size_t q = 120;
  Adversary adv(AdversaryConfig{24, q, 3, minimum_cap(24, q, 3)}, e.graph);
  for (const auto& [a, b] : skewed_queries(24, q, 77)) adv.answer(a, b);
  for (std::size_t i = 0; i < q; ++i) {
    const auto& r = adv.rounds()[i];
    const auto dist = bfs_distances(adv.graph().snapshot(i), r.a);
    EXPECT_EQ(dist[r.b], r.answer) << "round " << i + 1;
  }
  // Snapshots shrink monotonically.
  for (std::size_t i = 1; i <= q; ++i) {
    const auto prev = adv.graph().snapshot(i - 1), cur = adv.graph().snapshot(i);
    for (const auto& [u, v] : cur.edges()) EXPECT_TRUE(prev.has_edge(u, v));
  }
}

TEST(Adversary, PadAndOverflow) {
  const auto e = build_regular(8, 3, 1);
  Adversary adv(AdversaryConfig{8, 10, 3, minimum_cap(8, 10, 3)}, e.graph);
  adv.answer(0, 1);
  adv.pad(4);
  EXPECT_EQ(adv.rounds_served(), 10u);
  for (std::size_t i = 1; i < 8; ++i) EXPECT_EQ(adv.rounds()[i].a, 4u);
  EXPECT_EQ(adv.rounds()[8].b, 5u);
  EXPECT_EQ(adv.rounds()[9].b, 5u);

  Adversary small(AdversaryConfig{8, 6, 3, minimum_cap(8, 6, 3)}, e.graph);
  EXPECT_THROW(small.pad(0), PadOverflow);
}

TEST(Certificate, ConsistencyAndMutation) {
  const auto e = build_regular(64, 8, 2);
  const std::size_t q = 64 + 63;
  Adversary adv(AdversaryConfig{64, q, 8, minimum_cap(64, q, 8)}, e.graph);
  for (const auto& [a, b] : random_queries(64, 64, 3)) adv.answer(a, b);
  const Certificate cert = adv.finalize(10);
  Transcript t = adv.transcript();
  EXPECT_TRUE(verify_consistency(cert, t));
  EXPECT_TRUE(verify_consistency(cert, {}));
  t[5].answer += ExactDistance{1};
  EXPECT_FALSE(verify_consistency(cert, t));
}

TEST(Certificate, PathDisciplineOnRandomGame) {
  const auto e = build_regular(64, 8, 4);
  Adversary fresh(AdversaryConfig{64, 64, 8, minimum_cap(64, 64, 8)}, e.graph);
  EXPECT_TRUE(verify_path_discipline(fresh));

  Adversary adv(AdversaryConfig{64, 64, 8, minimum_cap(64, 64, 8)}, e.graph);
  for (const auto& [a, b] : random_queries(64, 64, 11)) adv.answer(a, b);
  EXPECT_TRUE(verify_path_discipline(adv));
  bool single = false;
  for (const auto& r : adv.rounds()) single = single || r.newly_permanent == 1;
  EXPECT_TRUE(single);
}

TEST(Certificate, FieldsAreConsistent) {
  RandomQueryFuzzer fuzz(256, 5);
  GameOptions opts;
  const GameReport rep = play_adversary_game(fuzz, 256, 256, opts);
  const Certificate& c = rep.certificate;
  EXPECT_TRUE(rep.checks.all());
  EXPECT_EQ(c.ratio, Rational(c.z_star_cost, c.best_good_cost));
  for (PointId v = 0; v < 256; ++v) {
    const bool is_bad = std::binary_search(c.bad.begin(), c.bad.end(), v);
    EXPECT_EQ(is_bad, c.permanent_graph.degree(v) >= c.config.cap);
  }
  const auto [y, cost] = good_point_bound(c);
  EXPECT_EQ(y, c.best_good);
  EXPECT_EQ(cost, c.best_good_cost);
  std::int64_t z_cost = 0;
  for (PointId x = 0; x < 256; ++x) z_cost += c.distance(c.z_star, x);
  EXPECT_EQ(z_cost, c.z_star_cost);
}

TEST(GoodPointBound, NoPruning) {
  // With a large cap nothing is ever swept, so good vertices see everyone at
  // distance 1.
  const auto e = build_regular(16, 3, 1);
  Adversary adv(AdversaryConfig{16, 40, 3, 1000}, e.graph);
  for (const auto& [a, b] : random_queries(16, 10, 1)) adv.answer(a, b);
  const Certificate c = adv.finalize(0);
  EXPECT_EQ(good_point_bound(c).second, 15);
  EXPECT_EQ(c.ratio, Rational(1));
}

TEST(GoodPointBound, TwoPoints) {
  Graph g(2);
  g.add_edge(0, 1);
  Adversary adv(AdversaryConfig{2, 1, 1, minimum_cap(2, 1, 1)}, RegularGraph(g, 1));
  const Certificate c = adv.finalize(0);
  EXPECT_EQ(good_point_bound(c).second, 1);
}

TEST(Game, Deterministic) {
  for (const std::string name : {"exact", "pivot", "fuzzer", "sampling"}) {
    auto a1 = make_algorithm(name, 100, 3);
    auto a2 = make_algorithm(name, 100, 3);
    const auto r1 = play_adversary_game(*a1, 100, 100, GameOptions{});
    const auto r2 = play_adversary_game(*a2, 100, 100, GameOptions{});
    EXPECT_EQ(r1.transcript, r2.transcript) << name;
    EXPECT_EQ(r1.certificate.z_star, r2.certificate.z_star);
    EXPECT_EQ(r1.certificate.ratio, r2.certificate.ratio);
    EXPECT_TRUE(r1.checks.all()) << name;
  }
}

TEST(Game, BudgetGuard) {
  CallbackAlgorithm greedy("greedy", [](CountingOracle& o) {
    for (PointId x = 0; x < o.size(); ++x) o.query(0, x);
    return PointId{0};
  });
  EXPECT_THROW(play_adversary_game(greedy, 64, 10, GameOptions{}), BudgetExceeded);
}

TEST(Game, SampledCertificateAboveCap) {
  RandomQueryFuzzer fuzz(300, 1);
  GameOptions opts;
  opts.brute_force_cap = 100;
  const auto rep = play_adversary_game(fuzz, 300, 300, opts);
  EXPECT_FALSE(rep.certificate.full_metric);
  EXPECT_TRUE(rep.checks.consistency);
  EXPECT_TRUE(rep.checks.all());
}

TEST(Verifiers, DetectTampering) {
  const auto e = build_regular(32, 4, 6);
  const std::size_t q = 100;
  Adversary adv(AdversaryConfig{32, q, 4, minimum_cap(32, q, 4)}, e.graph);
  for (const auto& [a, b] : random_queries(32, 60, 4)) adv.answer(a, b);
  Certificate c = adv.finalize(3);
  EXPECT_TRUE(verify_ball_growth(c));
  // A cap of zero makes the ball bound sum (C+2)^h too small for this graph.
  c.config.cap = 0;
  EXPECT_FALSE(verify_ball_growth(c));
}
