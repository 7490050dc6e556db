#include "medianlab/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "medianlab/errors.hpp"

namespace medianlab {

namespace {

// Next line that is not blank after stripping '#' comments.
bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

}  // namespace

MetricTable read_metric(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ParseError("metric file is empty");
  long long n = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> n) || n < 1) throw ParseError("first line must be a positive point count");
  }
  std::vector<std::string> rows;
  while (next_content_line(in, line)) rows.push_back(line);
  // Row 1 holds no off-diagonal entries and may be left out.
  const std::size_t offset = rows.size() + 1 == static_cast<std::size_t>(n) ? 1 : 0;
  if (rows.size() + offset != static_cast<std::size_t>(n))
    throw ParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(rows.size()));

  MetricTable t(static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto i = static_cast<PointId>(r + offset);
    std::istringstream ss(rows[r]);
    std::vector<std::int64_t> vals;
    std::int64_t v;
    while (ss >> v) vals.push_back(v);
    if (!ss.eof()) throw ParseError("non-integer entry in row " + std::to_string(i + 1));
    if (vals.size() == std::size_t{i} + 1) {
      if (vals.back() != 0) throw ParseError("diagonal entry of row " + std::to_string(i + 1) + " must be 0");
      vals.pop_back();
    }
    if (vals.size() != i) throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(vals.size()) + " entries");
    for (PointId j = 0; j < i; ++j) t.set(i, j, ExactDistance{vals[j]});
  }
  return t;
}

MetricTable read_metric_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_metric(in);
}

void write_metric(std::ostream& out, const MetricTable& t) {
  out << t.size() << '\n';
  for (PointId i = 0; i < t.size(); ++i) {
    for (PointId j = 0; j <= i; ++j) {
      const auto& d = t.at(i, j);
      require(d.eps_count() == 0, "the text format cannot hold infinitesimal distances");
      out << d.units() << (j == i ? '\n' : ' ');
    }
  }
}

Graph read_edge_list(std::istream& in, std::optional<std::size_t> n) {
  std::vector<std::pair<PointId, PointId>> edges;
  std::size_t max_id = 0;
  std::string line;
  while (next_content_line(in, line)) {
    std::istringstream ss(line);
    long long u = 0, v = 0;
    if (!(ss >> u >> v) || u < 1 || v < 1) throw ParseError("bad edge line: " + line);
    edges.emplace_back(static_cast<PointId>(u - 1), static_cast<PointId>(v - 1));
    max_id = std::max<std::size_t>(max_id, static_cast<std::size_t>(std::max(u, v)));
  }
  const std::size_t size = n.value_or(max_id);
  if (max_id > size) throw ParseError("edge endpoint exceeds the vertex count");
  return Graph::from_edges(size, edges);
}

Graph read_edge_list_file(const std::string& path, std::optional<std::size_t> n) {
  auto in = open_or_throw(path);
  return read_edge_list(in, n);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# " << g.size() << " vertices, " << g.edge_count() << " edges\n";
  for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
}

json to_json(const ExactDistance& d) { return json{{"units", d.units()}, {"eps_count", d.eps_count()}}; }

ExactDistance distance_from_json(const json& j) {
  if (j.is_number_integer()) return ExactDistance{j.get<std::int64_t>()};
  return ExactDistance{j.at("units").get<std::int64_t>(), j.value("eps_count", std::int64_t{0})};
}

json to_json(const Transcript& t) {
  json arr = json::array();
  for (const auto& e : t) arr.push_back({{"i", e.index}, {"a", e.a + 1}, {"b", e.b + 1}, {"answer", to_json(e.answer)}});
  return arr;
}

Transcript transcript_from_json(const json& j) {
  Transcript t;
  for (const auto& e : j) {
    const auto a = e.at("a").get<std::int64_t>(), b = e.at("b").get<std::int64_t>();
    if (a < 1 || b < 1) throw ParseError("transcript points are 1-based");
    t.push_back({e.at("i").get<std::size_t>(), static_cast<PointId>(a - 1), static_cast<PointId>(b - 1),
                 distance_from_json(e.at("answer"))});
  }
  return t;
}

json to_json(const Rational& r) { return json{{"num", r.numerator()}, {"den", r.denominator()}}; }

Rational rational_from_json(const json& j) { return Rational{j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()}; }

json to_json(const ExpansionReport& r) {
  json j{{"method", to_string(r.method)}, {"alpha_lower", r.alpha_lower}};
  j["lambda2"] = r.lambda2 ? json(*r.lambda2) : json(nullptr);
  j["alpha_exact"] = r.alpha_exact ? to_json(*r.alpha_exact) : json(nullptr);
  return j;
}

GameSummary summarize(const GameReport& report, std::size_t q_alg, std::uint64_t seed) {
  const auto& c = report.certificate;
  GameSummary s;
  s.n = report.config.n;
  s.q = q_alg;
  s.rounds = report.config.q;
  s.d = report.config.d;
  s.cap = report.config.cap;
  s.algorithm = report.algorithm;
  s.seed = seed;
  s.algorithm_queries = report.algorithm_queries;
  s.z_star = c.z_star;
  s.z_star_cost = c.z_star_cost;
  s.best_good = c.best_good;
  s.best_good_cost = c.best_good_cost;
  s.ratio = c.ratio;
  s.bad_size = c.bad.size();
  s.max_perm_degree = c.max_permanent_degree;
  s.lower_bound_on_ratio = c.lower_bound_on_ratio;
  const auto& k = report.checks;
  s.checks = {{"consistency", k.consistency},         {"expander_embedded", k.expander_embedded},
              {"snapshot_log", k.snapshot_log},       {"path_discipline", k.path_discipline},
              {"vertex_growth", k.vertex_growth},     {"max_degree", k.max_degree},
              {"few_bad", k.few_bad},                 {"ball_growth", k.ball_growth}};
  if (k.metric_valid) s.checks["metric_valid"] = *k.metric_valid;
  s.consistency = k.consistency;
  return s;
}

json to_json(const GameSummary& s) {
  return json{{"n", s.n},
              {"q", s.q},
              {"rounds", s.rounds},
              {"d", s.d},
              {"C", s.cap},
              {"algo", s.algorithm},
              {"seed", s.seed},
              {"algorithm_queries", s.algorithm_queries},
              {"z_star", s.z_star + 1},
              {"z_star_cost", s.z_star_cost},
              {"best_good", {{"vertex", s.best_good + 1}, {"cost", s.best_good_cost}}},
              {"ratio", boost::rational_cast<double>(s.ratio)},
              {"ratio_exact", to_json(s.ratio)},
              {"bad_size", s.bad_size},
              {"max_perm_degree", s.max_perm_degree},
              {"lower_bound_on_ratio", s.lower_bound_on_ratio},
              {"checks", s.checks},
              {"consistency", s.consistency}};
}

GameSummary game_summary_from_json(const json& j) {
  GameSummary s;
  s.n = j.at("n");
  s.q = j.at("q");
  s.rounds = j.at("rounds");
  s.d = j.at("d");
  s.cap = j.at("C");
  s.algorithm = j.at("algo");
  s.seed = j.at("seed");
  s.algorithm_queries = j.at("algorithm_queries");
  s.z_star = j.at("z_star").get<PointId>() - 1;
  s.z_star_cost = j.at("z_star_cost");
  s.best_good = j.at("best_good").at("vertex").get<PointId>() - 1;
  s.best_good_cost = j.at("best_good").at("cost");
  s.ratio = rational_from_json(j.at("ratio_exact"));
  s.bad_size = j.at("bad_size");
  s.max_perm_degree = j.at("max_perm_degree");
  s.lower_bound_on_ratio = j.at("lower_bound_on_ratio");
  s.checks = j.at("checks").get<std::map<std::string, bool>>();
  s.consistency = j.at("consistency");
  return s;
}

json to_json(const LowerBoundReport& r) {
  return json{{"n", r.n},
              {"q", r.q},
              {"m", r.m},
              {"d", r.d},
              {"C", r.cap},
              {"algo", r.algorithm},
              {"z_star", r.z_star + 1},
              {"y", r.y + 1},
              {"z_to_y", r.z_to_y},
              {"cost_z", to_json(r.cost_z)},
              {"cost_y", to_json(r.cost_y)},
              {"ratio", r.ratio_value},
              {"ratio_exact", to_json(r.ratio)},
              {"log2_n", r.log2_n},
              {"f_hat", r.f_hat},
              {"bad_size", r.bad_size},
              {"max_perm_degree", r.max_permanent_degree},
              {"expander_attempts", r.expander_attempts},
              {"checks", r.checks}};
}

LowerBoundReport lower_bound_report_from_json(const json& j) {
  LowerBoundReport r;
  r.n = j.at("n");
  r.q = j.at("q");
  r.m = j.at("m");
  r.d = j.at("d");
  r.cap = j.at("C");
  r.algorithm = j.at("algo");
  r.z_star = j.at("z_star").get<PointId>() - 1;
  r.y = j.at("y").get<PointId>() - 1;
  r.z_to_y = j.at("z_to_y");
  r.cost_z = distance_from_json(j.at("cost_z"));
  r.cost_y = distance_from_json(j.at("cost_y"));
  r.ratio_value = j.at("ratio");
  r.ratio = rational_from_json(j.at("ratio_exact"));
  r.log2_n = j.at("log2_n");
  r.f_hat = j.at("f_hat");
  r.bad_size = j.at("bad_size");
  r.max_permanent_degree = j.at("max_perm_degree");
  r.expander_attempts = j.at("expander_attempts");
  r.checks = j.at("checks").get<std::map<std::string, bool>>();
  return r;
}

bool operator==(const LowerBoundReport& a, const LowerBoundReport& b) {
  return a.n == b.n && a.q == b.q && a.m == b.m && a.d == b.d && a.cap == b.cap && a.algorithm == b.algorithm &&
         a.z_star == b.z_star && a.y == b.y && a.z_to_y == b.z_to_y && a.cost_z == b.cost_z && a.cost_y == b.cost_y &&
         a.ratio == b.ratio && a.ratio_value == b.ratio_value && a.log2_n == b.log2_n && a.f_hat == b.f_hat &&
         a.bad_size == b.bad_size && a.max_permanent_degree == b.max_permanent_degree &&
         a.expander_attempts == b.expander_attempts && a.checks == b.checks;
}

std::string lower_bound_csv_header() { return "n,q,ratio,log_n,f_hat"; }

std::string to_csv(const LowerBoundReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << r.n << ',' << r.q << ',' << r.ratio_value << ',' << r.log2_n << ',' << r.f_hat;
  return os.str();
}

}  // namespace medianlab
