#include "medianlab/metric.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include "medianlab/errors.hpp"

namespace medianlab {

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<PointId, PointId>> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

void Graph::add_edge(PointId u, PointId v) {
  require(u < adj_.size() && v < adj_.size(), "edge endpoint out of range");
  require(u != v, "self-loops are not allowed");
  auto insert = [](std::vector<PointId>& list, PointId x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it != list.end() && *it == x) return;
    list.insert(it, x);
  };
  insert(adj_[u], v);
  insert(adj_[v], u);
}

bool Graph::has_edge(PointId u, PointId v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (const auto& list : adj_) total += list.size();
  return total / 2;
}

std::vector<std::pair<PointId, PointId>> Graph::edges() const {
  std::vector<std::pair<PointId, PointId>> out;
  for (PointId u = 0; u < adj_.size(); ++u)
    for (PointId v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::vector<std::int64_t> bfs_distances(const Graph& g, PointId source) {
  std::vector<std::int64_t> dist(g.size(), -1);
  std::vector<PointId> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    PointId u = queue[head];
    for (PointId v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

void MetricTable::set(PointId a, PointId b, ExactDistance d) {
  dist_[std::size_t{a} * n_ + b] = d;
  dist_[std::size_t{b} * n_ + a] = d;
}

MetricTable MetricTable::from_units(const std::vector<std::vector<std::int64_t>>& rows) {
  MetricTable t(rows.size());
  for (PointId a = 0; a < rows.size(); ++a) {
    require(rows[a].size() == rows.size(), "metric table must be square");
    for (PointId b = 0; b < rows.size(); ++b) t.set_directed(a, b, ExactDistance{rows[a][b]});
  }
  return t;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Identity: return "identity";
    case ViolationKind::Positivity: return "positivity";
    case ViolationKind::Symmetry: return "symmetry";
    case ViolationKind::Triangle: return "triangle";
    case ViolationKind::Negative: return "negative";
  }
  return "unknown";
}

namespace {

// Packs (units, eps) into one integer whose sums and order agree with the
// lexicographic order, provided eps components are non-negative and the sum
// of any two stays below `scale`.
struct PackedTable {
  std::vector<std::int64_t> keys;
  bool ok = false;
};

PackedTable pack(const MetricTable& table) {
  PackedTable packed;
  const std::size_t n = table.size();
  std::int64_t max_eps = 0, max_units = 0;
  for (PointId a = 0; a < n; ++a)
    for (const auto& d : table.row(a)) {
      if (d.units() < 0 || d.eps_count() < 0) return packed;
      max_eps = std::max(max_eps, d.eps_count());
      max_units = std::max(max_units, d.units());
    }
  const std::int64_t scale = 2 * max_eps + 1;
  if (max_units > std::numeric_limits<std::int64_t>::max() / 4 / scale) return packed;
  packed.keys.resize(n * n);
  for (PointId a = 0; a < n; ++a) {
    auto row = table.row(a);
    for (PointId b = 0; b < n; ++b) packed.keys[std::size_t{a} * n + b] = row[b].units() * scale + row[b].eps_count();
  }
  packed.ok = true;
  return packed;
}

}  // namespace

std::vector<Violation> validate_metric(const MetricTable& table, std::size_t max_violations) {
  std::vector<Violation> out;
  const std::size_t n = table.size();
  auto push = [&](ViolationKind k, PointId a, PointId b, PointId c) {
    if (out.size() < max_violations) out.push_back({k, a, b, c});
  };

  for (PointId a = 0; a < n; ++a) {
    if (!table.at(a, a).is_zero()) push(ViolationKind::Identity, a, a, a);
    for (PointId b = 0; b < n; ++b) {
      const auto& d = table.at(a, b);
      if (d < ExactDistance::zero()) push(ViolationKind::Negative, a, b, b);
      if (a < b) {
        if (d != table.at(b, a)) push(ViolationKind::Symmetry, a, b, b);
        if (d <= ExactDistance::zero() || table.at(b, a) <= ExactDistance::zero())
          push(ViolationKind::Positivity, a, b, b);
      }
    }
  }

  // Triangle: d(a,c) <= d(a,b) + d(b,c). A packed row scan finds rows that
  // contain a violation; only those are re-scanned exactly.
  PackedTable packed = pack(table);
  for (PointId a = 0; a < n; ++a) {
    for (PointId b = 0; b < n; ++b) {
      if (b == a) continue;
      bool suspect = true;
      if (packed.ok) {
        const std::int64_t* row_a = packed.keys.data() + std::size_t{a} * n;
        const std::int64_t* row_b = packed.keys.data() + std::size_t{b} * n;
        const std::int64_t ab = row_a[b];
        std::int64_t bad = 0;
        for (std::size_t c = 0; c < n; ++c) bad |= static_cast<std::int64_t>(row_a[c] > ab + row_b[c]);
        suspect = bad != 0;
      }
      if (!suspect) continue;
      const auto& ab = table.at(a, b);
      for (PointId c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (table.at(a, c) > ab + table.at(b, c)) push(ViolationKind::Triangle, a, b, c);
      }
    }
  }
  return out;
}

MetricTable graph_metric(const Graph& g) {
  const std::size_t n = g.size();
  MetricTable t(n);
  for (PointId s = 0; s < n; ++s) {
    auto dist = bfs_distances(g, s);
    for (PointId v = 0; v < n; ++v) {
      if (dist[v] < 0) throw DisconnectedGraph("graph is disconnected: no path from " + std::to_string(s + 1) + " to " + std::to_string(v + 1));
      t.set_directed(s, v, ExactDistance{dist[v]});
    }
  }
  return t;
}

ExactDistance CountingOracle::query(PointId a, PointId b) {
  if (a >= source_->size() || b >= source_->size())
    throw QueryOutOfRange("query (" + std::to_string(a) + ", " + std::to_string(b) + ") outside a space of " +
                          std::to_string(source_->size()) + " points");
  ExactDistance answer = source_->distance(a, b);
  transcript_.push_back({transcript_.size() + 1, a, b, answer});
  return answer;
}

ExactDistance median_cost(CountingOracle& oracle, PointId p, std::span<const PointId> set) {
  ExactDistance total;
  for (PointId y : set) total += oracle.query(p, y);
  return total;
}

MedianResult exact_median(CountingOracle& oracle, std::span<const PointId> set) {
  require(!set.empty(), "exact_median needs a nonempty set");
  std::vector<ExactDistance> cost(set.size());
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      ExactDistance d = oracle.query(set[i], set[j]);
      cost[i] += d;
      cost[j] += d;
    }
  std::size_t best = 0;
  for (std::size_t i = 1; i < set.size(); ++i)
    if (cost[i] < cost[best] || (cost[i] == cost[best] && set[i] < set[best])) best = i;
  return {set[best], cost[best]};
}

Rational AverageDistance::as_rational() const {
  require(total.eps_count() == 0, "average with an infinitesimal part has no exact rational value");
  return Rational{total.units(), pairs};
}

AverageDistance average_pairwise_distance(CountingOracle& oracle, std::span<const PointId> set) {
  require(!set.empty(), "average_pairwise_distance needs a nonempty set");
  ExactDistance half;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j) half += oracle.query(set[i], set[j]);
  const auto s = static_cast<std::int64_t>(set.size());
  return {2 * half, s * s};
}

PointSet all_points(std::size_t n) {
  PointSet s(n);
  std::iota(s.begin(), s.end(), PointId{0});
  return s;
}

}  // namespace medianlab
