// medianlab: command-line front end for the 1-median query-complexity lab.
//
// Exit status is 0 iff every invariant checked during the run held, 1 if a
// check failed, and 2 on usage or input errors.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "medianlab/adversary.hpp"
#include "medianlab/algorithms.hpp"
#include "medianlab/errors.hpp"
#include "medianlab/expander.hpp"
#include "medianlab/harness.hpp"
#include "medianlab/io.hpp"
#include "medianlab/solvers.hpp"
#include "medianlab/tame_sim.hpp"

using namespace medianlab;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out = "json";
  std::size_t brute_force_cap = 4096;
};

MetricTable load_metric(const std::string& metric_path, const std::string& graph_path) {
  if (!metric_path.empty()) return read_metric_file(metric_path);
  if (!graph_path.empty()) return graph_metric(read_edge_list_file(graph_path));
  throw PreconditionError("one of --metric or --graph is required");
}

std::vector<std::size_t> parse_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoull(item));
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void emit(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream(path) << j.dump(2) << '\n';
  }
}

int run_solve(const Globals& g, const std::string& metric_path, const std::string& graph_path, const std::string& inner_name,
              std::uint64_t f_of_n) {
  const MetricTable metric = load_metric(metric_path, graph_path);
  const std::size_t n = metric.size();
  TableSource source(metric);
  CountingOracle oracle(source);
  auto inner = make_inner(inner_name, g.seed);
  const SolverResult res = restrict_and_solve(oracle, n, f_of_n, *inner);
  const std::size_t s = subset_size(n, f_of_n);

  CountingOracle scorer(source);
  const PointSet everyone = all_points(n);
  const ExactDistance cost = median_cost(scorer, res.output, everyone);
  json j{{"output", res.output + 1},
         {"queries", res.queries_used},
         {"cost", cost.units()},
         {"n", n},
         {"subset", s},
         {"f_of_n", f_of_n},
         {"inner", inner_name},
         {"nonadaptive", inner->nonadaptive()}};
  j["claimed_beta"] = res.claimed_beta ? to_json(*res.claimed_beta) : json(nullptr);
  bool ok = res.queries_used <= inner->query_bound(s);
  if (n <= g.brute_force_cap) {
    const auto opt = exact_median(scorer, everyone).cost;
    const PointSet subset = subset_schedule(n, s);
    const auto local = median_cost(scorer, res.output, subset).units();
    const auto local_opt = exact_median(scorer, subset).cost.units();
    const Rational beta = res.claimed_beta.value_or(local_opt > 0 ? Rational{local, local_opt} : Rational{1});
    const Rational ratio = opt.units() > 0 ? Rational{cost.units(), opt.units()} : Rational{1};
    const Rational bound = transfer_bound(beta, static_cast<std::int64_t>(n), static_cast<std::int64_t>(s));
    j["opt_cost"] = opt.units();
    j["ratio"] = boost::rational_cast<double>(ratio);
    j["bound"] = boost::rational_cast<double>(bound);
    j["beta"] = boost::rational_cast<double>(beta);
    j["bound_satisfied"] = ratio <= bound;
    ok = ok && ratio <= bound;
  } else {
    j["opt_cost"] = nullptr;
    j["ratio"] = nullptr;
    j["bound"] = res.claimed_beta
                     ? json(boost::rational_cast<double>(transfer_bound(*res.claimed_beta, static_cast<std::int64_t>(n),
                                                                        static_cast<std::int64_t>(s))))
                     : json(nullptr);
  }
  emit(j, "");
  return ok ? 0 : 1;
}

int run_adversary(const Globals& g, std::size_t n, std::size_t q, std::size_t d, std::optional<std::size_t> cap,
                  const std::string& algo, const std::string& report_path) {
  GameOptions opts;
  opts.d = d;
  opts.cap = cap;
  opts.seed = g.seed;
  opts.brute_force_cap = g.brute_force_cap;
  std::unique_ptr<QueryAlgorithm> alg;
  if (algo == "extern") {
    alg = std::make_unique<StreamAlgorithm>(std::cin, std::cout);
  } else {
    alg = make_algorithm(algo, q, g.seed);
  }
  GameReport report = play_adversary_game(*alg, n, q, opts);
  const GameSummary s = summarize(report, q, g.seed);
  if (algo == "extern" && report_path.empty()) {
    std::cerr << to_json(s).dump(2) << '\n';
  } else {
    emit(to_json(s), report_path);
  }
  return report.checks.all() ? 0 : 1;
}

std::size_t default_q(std::size_t n) {
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) / std::log2(static_cast<double>(n))));
}

int run_lowerbound(const Globals& g, std::size_t n, std::optional<std::size_t> q, std::size_t d,
                   const std::string& algo, const std::string& sweep) {
  LowerBoundOptions opts;
  opts.d = d;
  opts.seed = g.seed;
  auto one = [&](std::size_t nn, std::size_t qq) {
    std::unique_ptr<QueryAlgorithm> alg;
    if (algo == "extern") {
      alg = std::make_unique<StreamAlgorithm>(std::cin, std::cout);
    } else {
      alg = make_algorithm(algo, qq, g.seed);
    }
    return hard_instance_game(*alg, nn, qq, opts);
  };
  if (!sweep.empty()) {
    bool ok = true;
    std::vector<LowerBoundReport> reports;
    for (std::size_t nn : parse_list(sweep)) {
      reports.push_back(one(nn, q.value_or(default_q(nn))));
      ok = ok && reports.back().all_checks();
    }
    if (g.out == "json") {
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      emit(arr, "");
    } else {
      std::cout << lower_bound_csv_header() << '\n';
      for (const auto& r : reports) std::cout << to_csv(r) << '\n';
    }
    return ok ? 0 : 1;
  }
  require(n > 0, "--n is required");
  const LowerBoundReport r = one(n, q.value_or(default_q(n)));
  if (g.out == "csv") {
    std::cout << lower_bound_csv_header() << '\n' << to_csv(r) << '\n';
  } else if (algo == "extern") {
    std::cerr << to_json(r).dump(2) << '\n';
  } else {
    emit(to_json(r), "");
  }
  return r.all_checks() ? 0 : 1;
}

int run_expander(const Globals& g, std::size_t n, std::size_t d, const std::string& certify, const std::string& edges_out) {
  BuiltExpander built = build_regular(n, d, g.seed);
  ExpansionReport report = built.report;
  if (certify == "exhaustive") report = certify_expansion(built.graph, CertifyMode::Exhaustive);
  json j = to_json(report);
  j["attempts"] = built.attempts;
  j["accepted_seed"] = built.accepted_seed;
  j["n"] = n;
  j["d"] = d;
  j["edges"] = built.graph.graph().edge_count();
  if (!edges_out.empty()) {
    std::ofstream out(edges_out);
    write_edge_list(out, built.graph.graph());
  }
  emit(j, "");
  return 0;
}

int run_verify(const std::string& metric_path, const std::string& graph_path, const std::string& transcript_path) {
  const MetricTable metric = load_metric(metric_path, graph_path);
  const auto violations = validate_metric(metric, 20);
  json j{{"n", metric.size()}, {"valid", violations.empty()}};
  json list = json::array();
  for (const auto& v : violations)
    list.push_back({{"kind", to_string(v.kind)}, {"points", {v.a + 1, v.b + 1, v.c + 1}}});
  j["violations"] = list;
  bool ok = violations.empty();
  if (!transcript_path.empty()) {
    std::ifstream in(transcript_path);
    if (!in) throw ParseError("cannot open " + transcript_path);
    const Transcript t = transcript_from_json(json::parse(in));
    const bool replay = replay_verify(t, metric);
    j["replay"] = replay;
    ok = ok && replay;
  }
  emit(j, "");
  return ok ? 0 : 1;
}

int run_sweep(const Globals& g, const std::string& kinds, const std::string& n_list, std::size_t seeds,
              const std::string& inners) {
  std::vector<SweepConfig> configs;
  for (const auto& kind : split(kinds))
    for (std::size_t n : parse_list(n_list))
      for (std::uint64_t s = 0; s < seeds; ++s) {
        const auto root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
        std::vector<std::size_t> sizes{1, root, (n + 1) / 2, n};
        std::sort(sizes.begin(), sizes.end());
        sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
        for (std::size_t m : sizes)
          for (const auto& inner : split(inners))
            configs.push_back({parse_instance_kind(kind), n, g.seed + s, m, inner});
      }
  const auto rows = sweep_upper_bound(configs, g.brute_force_cap);
  bool ok = true;
  if (g.out == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"kind", to_string(r.config.kind)}, {"n", r.config.n}, {"seed", r.config.seed},
                     {"subset", r.config.subset}, {"inner", r.config.inner}, {"queries", r.queries},
                     {"ratio", boost::rational_cast<double>(r.ratio)}, {"bound", boost::rational_cast<double>(r.bound)},
                     {"bound_satisfied", r.bound_satisfied}});
      ok = ok && r.bound_satisfied;
    }
    emit(arr, "");
  } else {
    std::cout << sweep_csv_header() << '\n';
    for (const auto& r : rows) {
      std::cout << to_csv(r) << '\n';
      ok = ok && r.bound_satisfied;
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric 1-median selection under query budgets: solvers, adversary games and lower-bound instances"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--out", g.out, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--brute-force-cap", g.brute_force_cap, "Largest n for exact OPT")->capture_default_str();
  app.fallthrough();

  std::string metric_path, graph_path, inner = "exact", algo = "exact", certify = "spectral", edges_out, transcript_path,
                                        sweep, report_path, kinds = "random-graph,grid,star-path,table",
                                        n_list = "4,8,16,32,64", inners = "exact,pivot";
  std::uint64_t f_of_n = 1;
  std::size_t n = 0, d = 8, seeds = 5;
  std::optional<std::size_t> q, cap;

  auto* solve = app.add_subcommand("solve", "Subset-restricted 1-median on a metric file");
  solve->add_option("--metric", metric_path, "Metric table file");
  solve->add_option("--graph", graph_path, "Edge-list file (hop metric)");
  solve->add_option("--inner", inner, "Inner approximator")->check(CLI::IsMember({"exact", "pivot", "sampling"}));
  solve->add_option("--f-of-n", f_of_n, "Precomputed f(n)")->required();

  auto* adversary = app.add_subcommand("adversary", "Play an algorithm against the adaptive adversary");
  adversary->add_option("--n", n, "Number of points")->required();
  adversary->add_option("--q", q, "Algorithm query budget")->required();
  adversary->add_option("--d", d, "Expander degree")->capture_default_str();
  adversary->add_option("--C", cap, "Saturation threshold (default: smallest valid)");
  adversary->add_option("--algo", algo, "Algorithm")->check(CLI::IsMember({"exact", "pivot", "sampling", "fuzzer", "extern"}));
  adversary->add_option("--report", report_path, "Write the certificate JSON here");

  auto* lowerbound = app.add_subcommand("lowerbound", "Hard glued instance for a small query budget");
  lowerbound->add_option("--n", n, "Number of points");
  lowerbound->add_option("--q", q, "Query budget (default floor(n / log2 n))");
  lowerbound->add_option("--d", d, "Expander degree")->capture_default_str();
  lowerbound->add_option("--algo", algo, "Algorithm")->check(CLI::IsMember({"exact", "pivot", "sampling", "fuzzer", "extern"}));
  lowerbound->add_option("--sweep", sweep, "Comma-separated n values; emits one row per n");

  auto* expander = app.add_subcommand("expander", "Build and certify a random regular expander");
  expander->add_option("--n", n, "Number of vertices")->required();
  expander->add_option("--d", d, "Degree")->capture_default_str();
  expander->add_option("--certify", certify, "Certification")->check(CLI::IsMember({"spectral", "exhaustive"}));
  expander->add_option("--edges-out", edges_out, "Write the edge list here");

  auto* verify = app.add_subcommand("verify", "Validate a metric and optionally replay a transcript");
  verify->add_option("--metric", metric_path, "Metric table file");
  verify->add_option("--graph", graph_path, "Edge-list file (hop metric)");
  verify->add_option("--transcript", transcript_path, "Transcript JSON to replay");

  auto* sweep_cmd = app.add_subcommand("sweep", "Upper-bound ratio sweep against brute force");
  sweep_cmd->add_option("--kinds", kinds, "Instance kinds")->capture_default_str();
  sweep_cmd->add_option("--n-list", n_list, "Point counts")->capture_default_str();
  sweep_cmd->add_option("--seeds", seeds, "Seeds per (kind, n)")->capture_default_str();
  sweep_cmd->add_option("--inner", inners, "Inner approximators")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*solve) return run_solve(g, metric_path, graph_path, inner, f_of_n);
    if (*adversary) return run_adversary(g, n, *q, d, cap, algo, report_path);
    if (*lowerbound) return run_lowerbound(g, n, q, d, algo, sweep);
    if (*expander) return run_expander(g, n, d, certify, edges_out);
    if (*verify) return run_verify(metric_path, graph_path, transcript_path);
    if (*sweep_cmd) {
      if (g.out == "json" && !app.get_option("--out")->count()) g.out = "csv";
      return run_sweep(g, kinds, n_list, seeds, inners);
    }
  } catch (const std::exception& e) {
    std::cerr << "medianlab: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
