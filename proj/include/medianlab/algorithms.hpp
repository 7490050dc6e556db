#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

#include "medianlab/metric.hpp"

namespace medianlab {

// A deterministic query algorithm for 1-median: it interrogates an oracle
// (possibly adaptively) and names an output point. The oracle's size() is
// the number of points the algorithm believes it is working with.
class QueryAlgorithm {
 public:
  virtual ~QueryAlgorithm() = default;
  virtual std::string name() const = 0;
  virtual PointId run(CountingOracle& oracle) = 0;
};

// Exact median of the largest prefix whose pairs fit in the budget.
class ExactOnSubsetAlgorithm final : public QueryAlgorithm {
 public:
  explicit ExactOnSubsetAlgorithm(std::size_t budget) : budget_(budget) {}
  std::string name() const override { return "exact"; }
  PointId run(CountingOracle& oracle) override;
  static std::size_t subset_for_budget(std::size_t n, std::size_t budget);

 private:
  std::size_t budget_;
};

// Pivot tournament on a prefix of size budget / 3.
class PivotAlgorithm final : public QueryAlgorithm {
 public:
  explicit PivotAlgorithm(std::size_t budget) : budget_(budget) {}
  std::string name() const override { return "pivot"; }
  PointId run(CountingOracle& oracle) override;

 private:
  std::size_t budget_;
};

// Sampling baseline with k candidates and k evaluation points, k^2 <= budget.
class SamplingAlgorithm final : public QueryAlgorithm {
 public:
  SamplingAlgorithm(std::size_t budget, std::uint64_t seed) : budget_(budget), seed_(seed) {}
  std::string name() const override { return "sampling"; }
  PointId run(CountingOracle& oracle) override;

 private:
  std::size_t budget_;
  std::uint64_t seed_;
};

// Issues exactly `budget` seeded pseudo-random queries whose choice depends
// on earlier answers, then outputs the point with the smallest observed
// answer sum among those it touched.
class RandomQueryFuzzer final : public QueryAlgorithm {
 public:
  RandomQueryFuzzer(std::size_t budget, std::uint64_t seed) : budget_(budget), seed_(seed) {}
  std::string name() const override { return "fuzzer"; }
  PointId run(CountingOracle& oracle) override;

 private:
  std::size_t budget_;
  std::uint64_t seed_;
};

class CallbackAlgorithm final : public QueryAlgorithm {
 public:
  using Fn = std::function<PointId(CountingOracle&)>;
  CallbackAlgorithm(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}
  std::string name() const override { return name_; }
  PointId run(CountingOracle& oracle) override { return fn_(oracle); }

 private:
  std::string name_;
  Fn fn_;
};

// Speaks the newline protocol: reads "QUERY a b" / "OUTPUT z" (1-based) from
// `in` and writes "ANSWER v" to `out`.
class StreamAlgorithm final : public QueryAlgorithm {
 public:
  StreamAlgorithm(std::istream& in, std::ostream& out) : in_(&in), out_(&out) {}
  std::string name() const override { return "extern"; }
  PointId run(CountingOracle& oracle) override;

 private:
  std::istream* in_;
  std::ostream* out_;
};

// Names: exact, pivot, sampling, fuzzer.
std::unique_ptr<QueryAlgorithm> make_algorithm(const std::string& name, std::size_t budget, std::uint64_t seed);

}  // namespace medianlab
