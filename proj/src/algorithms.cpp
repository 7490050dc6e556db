#include "medianlab/algorithms.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "medianlab/errors.hpp"
#include "medianlab/solvers.hpp"

namespace medianlab {

std::size_t ExactOnSubsetAlgorithm::subset_for_budget(std::size_t n, std::size_t budget) {
  std::size_t s = 1;
  while (s < n && (s + 1) * s / 2 <= budget) ++s;
  return s;
}

PointId ExactOnSubsetAlgorithm::run(CountingOracle& oracle) {
  const PointSet subset = all_points(subset_for_budget(oracle.size(), budget_));
  return exact_median(oracle, subset).point;
}

PointId PivotAlgorithm::run(CountingOracle& oracle) {
  const std::size_t s = std::clamp<std::size_t>(budget_ / 3, 1, oracle.size());
  return inner_pivot_tournament(oracle, all_points(s)).output;
}

PointId SamplingAlgorithm::run(CountingOracle& oracle) {
  const std::size_t k = std::clamp<std::size_t>(isqrt(budget_), 1, oracle.size());
  return sampling_on(oracle, all_points(oracle.size()), k, seed_).output;
}

PointId RandomQueryFuzzer::run(CountingOracle& oracle) {
  const std::size_t n = oracle.size();
  std::mt19937_64 rng(seed_);
  std::unordered_map<PointId, ExactDistance> observed;
  std::int64_t last = 0;
  for (std::size_t i = 0; i < budget_; ++i) {
    auto a = static_cast<PointId>(rng() % n);
    PointId b = a;
    if (n > 1 && rng() % 16 != 0) b = static_cast<PointId>((a + 1 + (rng() + static_cast<std::uint64_t>(last)) % (n - 1)) % n);
    ExactDistance d = oracle.query(a, b);
    last = d.units();
    observed[a] += d;
    observed[b] += d;
  }
  if (observed.empty()) return static_cast<PointId>(rng() % n);
  auto best = observed.begin();
  for (auto it = observed.begin(); it != observed.end(); ++it)
    if (it->second < best->second || (it->second == best->second && it->first < best->first)) best = it;
  return best->first;
}

PointId StreamAlgorithm::run(CountingOracle& oracle) {
  std::string line;
  while (std::getline(*in_, line)) {
    std::istringstream ss(line);
    std::string verb;
    if (!(ss >> verb)) continue;
    if (verb == "QUERY") {
      std::int64_t a = 0, b = 0;
      if (!(ss >> a >> b) || a < 1 || b < 1) throw ParseError("malformed QUERY line: " + line);
      ExactDistance d = oracle.query(static_cast<PointId>(a - 1), static_cast<PointId>(b - 1));
      *out_ << "ANSWER " << d.units() << '\n' << std::flush;
    } else if (verb == "OUTPUT") {
      std::int64_t z = 0;
      if (!(ss >> z) || z < 1 || static_cast<std::size_t>(z) > oracle.size()) throw ParseError("malformed OUTPUT line: " + line);
      return static_cast<PointId>(z - 1);
    } else {
      throw ParseError("unknown protocol verb: " + verb);
    }
  }
  throw ParseError("algorithm stream ended without OUTPUT");
}

std::unique_ptr<QueryAlgorithm> make_algorithm(const std::string& name, std::size_t budget, std::uint64_t seed) {
  if (name == "exact") return std::make_unique<ExactOnSubsetAlgorithm>(budget);
  if (name == "pivot") return std::make_unique<PivotAlgorithm>(budget);
  if (name == "sampling") return std::make_unique<SamplingAlgorithm>(budget, seed);
  if (name == "fuzzer") return std::make_unique<RandomQueryFuzzer>(budget, seed);
  throw PreconditionError("unknown algorithm: " + name);
}

}  // namespace medianlab
