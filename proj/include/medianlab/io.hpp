#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "medianlab/adversary.hpp"
#include "medianlab/expander.hpp"
#include "medianlab/metric.hpp"
#include "medianlab/tame_sim.hpp"

namespace medianlab {

using json = nlohmann::json;

// Metric table text format: first line n, then n lines of lower-triangular
// integer distances. Line i (1-based) lists d(i,1..i-1), optionally followed
// by the diagonal 0. Writers always include the diagonal.
MetricTable read_metric(std::istream& in);
MetricTable read_metric_file(const std::string& path);
void write_metric(std::ostream& out, const MetricTable& table);

// Edge list: one "u v" pair per line, 1-based, '#' starts a comment. The
// vertex count is max id unless given.
Graph read_edge_list(std::istream& in, std::optional<std::size_t> n = std::nullopt);
Graph read_edge_list_file(const std::string& path, std::optional<std::size_t> n = std::nullopt);
void write_edge_list(std::ostream& out, const Graph& g);

json to_json(const ExactDistance& d);
ExactDistance distance_from_json(const json& j);
json to_json(const Transcript& t);
Transcript transcript_from_json(const json& j);
json to_json(const Rational& r);
Rational rational_from_json(const json& j);
json to_json(const ExpansionReport& r);

// Flat record of an adversary game, as emitted by the CLI.
struct GameSummary {
  std::size_t n = 0, q = 0, rounds = 0, d = 0, cap = 0;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::size_t algorithm_queries = 0;
  PointId z_star = 0;  // 1-based in JSON
  std::int64_t z_star_cost = 0;
  PointId best_good = 0;
  std::int64_t best_good_cost = 0;
  Rational ratio;
  std::size_t bad_size = 0;
  std::size_t max_perm_degree = 0;
  bool lower_bound_on_ratio = false;
  std::map<std::string, bool> checks;
  bool consistency = false;
  friend bool operator==(const GameSummary&, const GameSummary&) = default;
};

GameSummary summarize(const GameReport& report, std::size_t q_alg, std::uint64_t seed);
json to_json(const GameSummary& s);
GameSummary game_summary_from_json(const json& j);

json to_json(const LowerBoundReport& r);
LowerBoundReport lower_bound_report_from_json(const json& j);
bool operator==(const LowerBoundReport& a, const LowerBoundReport& b);

std::string lower_bound_csv_header();
std::string to_csv(const LowerBoundReport& r);

}  // namespace medianlab
