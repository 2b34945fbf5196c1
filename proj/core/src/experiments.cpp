#include "congest/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <cstdlib>
#include <map>
#include <set>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "congest/graph_io.hpp"

namespace congest {

namespace {

std::vector<std::uint8_t> parse_bits(const std::string& spec, std::size_t count,
                                     std::uint64_t seed, std::uint64_t salt) {
  if (spec == "ones") return std::vector<std::uint8_t>(count, 1);
  if (spec == "zeros") return std::vector<std::uint8_t>(count, 0);
  if (spec == "random") {
    Rng rng(derive_seed(seed, salt));
    std::vector<std::uint8_t> bits(count);
    for (auto& b : bits) b = rng.next_u64() & 1;
    return bits;
  }
  return hex_to_bits(spec, count);
}

std::vector<std::pair<int, int>> circulant_edges(int n,
                                                 const std::vector<int>& offs) {
  std::set<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int d : offs) {
      int v = (u + d) % n;
      if (u != v) edges.emplace(std::min(u, v), std::max(u, v));
    }
  return {edges.begin(), edges.end()};
}

std::vector<std::uint64_t> seq_ids(int n) {
  std::vector<std::uint64_t> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = static_cast<std::uint64_t>(i) + 1;
  return ids;
}

}  // namespace

LbInstance build_instance(const std::string& family, const Params& params,
                          std::uint64_t seed) {
  if (family == "mvc-exact" || family == "mds-exact") {
    int k = static_cast<int>(param_long(params, "k", 2));
    int l = static_cast<int>(param_long(params, "l", 2));
    std::size_t len = static_cast<std::size_t>(k) * k;
    auto x = parse_bits(param_str(params, "x", "random"), len, seed, 1);
    auto y = parse_bits(param_str(params, "y", "random"), len, seed, 2);
    return family == "mvc-exact" ? mvc_exact_family(k, l, x, y)
                                 : mds_exact_family(k, l, x, y);
  }
  if (family == "mds-crossing") {
    int n = static_cast<int>(param_long(params, "n", 3));
    std::size_t len = static_cast<std::size_t>(n) * n;
    auto x = parse_bits(param_str(params, "x", "random"), len, seed, 1);
    auto y = parse_bits(param_str(params, "y", "random"), len, seed, 2);
    return mds_crossing_graph(n, x, y);
  }
  if (family == "mds-fixed")
    return mds_fixed_member(static_cast<int>(param_long(params, "n", 4)));
  if (family == "mvc-base")
    return mvc_base_graph(static_cast<int>(param_long(params, "t", 4)),
                          static_cast<int>(param_long(params, "c", 1)));
  if (family == "maxis-base") {
    auto [num, den] = param_fraction(params, "eps", 1, 3);
    return maxis_base_graph(static_cast<int>(param_long(params, "t", 3)), num,
                            den);
  }
  if (family == "maxm-lb") {
    auto [num, den] = param_fraction(params, "eps", 1, 2);
    return maxm_lb_graph(static_cast<int>(param_long(params, "n", 14)), num,
                         den, seed);
  }
  throw std::invalid_argument("unknown family: " + family);
}

PortGraph build_graph(const std::string& generator, const Params& params,
                      std::uint64_t seed) {
  PortGraph g;
  if (generator == "gnp") {
    int n = static_cast<int>(param_long(params, "n", 16));
    double p = param_double(params, "p", 0.5);
    return gen_gnp(n, p, seed);
  } else if (generator == "gnp-clogn") {
    int n = static_cast<int>(param_long(params, "n", 256));
    double c = param_double(params, "c", 40.0);
    double p = std::min(1.0, c * std::log(static_cast<double>(n)) / n);
    return gen_gnp(n, p, seed);
  } else if (generator == "file") {
    g = load_graph(param_str(params, "path", ""));
  } else if (generator == "circulant") {
    int n = static_cast<int>(param_long(params, "n", 8));
    std::vector<int> offs;
    std::stringstream ss(param_str(params, "offsets", "1"));
    std::string tok;
    while (std::getline(ss, tok, '+')) offs.push_back(std::stoi(tok));
    g = PortGraph::build(seq_ids(n), circulant_edges(n, offs));
  } else if (generator == "complete") {
    int n = static_cast<int>(param_long(params, "n", 4));
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    g = PortGraph::build(seq_ids(n), e);
  } else if (generator == "star") {
    int n = static_cast<int>(param_long(params, "n", 5));
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v < n; ++v) e.emplace_back(0, v);
    g = PortGraph::build(seq_ids(n), e);
  } else if (generator == "path") {
    int n = static_cast<int>(param_long(params, "n", 4));
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v < n; ++v) e.emplace_back(v - 1, v);
    g = PortGraph::build(seq_ids(n), e);
  } else if (generator == "empty") {
    g = PortGraph::build(seq_ids(static_cast<int>(param_long(params, "n", 4))),
                         {});
  } else {
    // lower-bound families double as graph sources
    g = build_instance(generator, params, seed).graph;
  }
  if (param_long(params, "randomize-ids", 0))
    g = assign_ids(g, derive_seed(seed, 0xA1), 
                   static_cast<std::uint64_t>(param_long(params, "id-universe", 0)));
  if (param_long(params, "randomize-ports", 0))
    g = assign_ports(g, derive_seed(seed, 0xA2));
  return g;
}

std::string ResultRow::csv_header() {
  return "name,seed,n,m,params,messages,bits,rounds,size,opt,ratio,valid,"
         "failed";
}

std::string ResultRow::csv_row() const {
  std::ostringstream os;
  os << name << ',' << seed << ',' << n << ',' << m << ',' << params << ','
     << messages << ',' << bits << ',' << rounds << ',' << size << ',' << opt
     << ',';
  if (opt > 0)
    os << ratio;
  else
    os << "";
  os << ',' << (valid ? 1 : 0) << ',' << (failed ? 1 : 0);
  return os.str();
}

std::uint64_t spec_config_hash(const ExperimentSpec& spec) {
  std::ostringstream os;
  os << spec.name << '|' << spec.generator << '|' << spec.algorithm << '|'
     << spec.round_cap << '|' << spec.with_oracle;
  for (const auto& [k, v] : spec.gen_params) os << '|' << k << '=' << v;
  for (const auto& [k, v] : spec.algo_params) os << '|' << k << '=' << v;
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

ResultRow run_one(const ExperimentSpec& spec, std::uint64_t seed,
                  const std::string& params_field) {
  ResultRow row;
  row.name = spec.name;
  row.seed = seed;
  row.params = params_field;

  PortGraph g = build_graph(spec.generator, spec.gen_params, seed);
  row.n = g.n();
  row.m = g.m();

  const AlgorithmInfo& algo = algorithm_by_name(spec.algorithm);
  SimConfig cfg;
  cfg.knowledge = algo.knowledge;
  cfg.bandwidth = algo.bandwidth;
  cfg.seed = seed;
  cfg.round_cap = spec.round_cap > 0 ? spec.round_cap
                                     : algo.round_cap(g, spec.algo_params);

  SimResult res;
  try {
    res = run(g, algo.make(g, spec.algo_params), cfg);
  } catch (const BandwidthViolation& ex) {
    row.failed = true;
    row.params += ";error=" + std::string(ex.what());
    return row;
  }
  row.messages = res.messages;
  row.bits = res.bits;
  row.rounds = res.rounds;

  RunOutcome outcome =
      extract_outcome(spec.algorithm, spec.algo_params, g, res);
  row.size = outcome.solution.size();
  row.valid = outcome.valid;
  row.failed = outcome.failed;

  if (spec.with_oracle) {
    Problem prob = algorithm_problem(spec.algorithm, spec.algo_params);
    Solution opt = solve(prob, g, spec.guard);
    row.opt = opt.size();
    if (row.opt > 0)
      row.ratio =
          static_cast<double>(row.size) / static_cast<double>(row.opt);
  }
  return row;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec,
                                      int workers) {
  if (spec.seeds.empty()) throw std::invalid_argument("empty seed list");
  {
    std::set<std::uint64_t> uniq(spec.seeds.begin(), spec.seeds.end());
    if (uniq.size() != spec.seeds.size())
      throw std::invalid_argument("seeds must be distinct");
  }
  char hash_hex[32];
  std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                static_cast<unsigned long long>(spec_config_hash(spec)));
  std::string params_field = "alg=" + spec.algorithm;
  for (const auto& [k, v] : spec.gen_params) params_field += ";" + k + "=" + v;
  for (const auto& [k, v] : spec.algo_params)
    params_field += ";" + k + "=" + v;
  params_field += ";cfg=" + std::string(hash_hex);

  std::vector<ResultRow> rows(spec.seeds.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < spec.seeds.size(); ++i)
      rows[i] = run_one(spec, spec.seeds[i], params_field);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= spec.seeds.size()) return;
      rows[i] = run_one(spec, spec.seeds[i], params_field);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return rows;
}

void write_rows_csv(const std::string& path,
                    const std::vector<ResultRow>& rows) {
  bool need_header = true;
  {
    std::ifstream probe(path);
    if (probe && probe.peek() != std::ifstream::traits_type::eof())
      need_header = false;
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open " + path);
  if (need_header) {
    out << "# congest-results v1\n" << ResultRow::csv_header() << "\n";
  }
  for (const auto& r : rows) out << r.csv_row() << "\n" << std::flush;
}

int worker_count_from_env() {
  const char* v = std::getenv("CONGEST_WORKERS");
  if (!v) return 1;
  int n = std::atoi(v);
  return n < 1 ? 1 : n;
}

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& n_msgs,
                       const std::string& model) {
  std::set<double> distinct;
  for (auto& [n, m] : n_msgs) distinct.insert(n);
  if (distinct.size() < 3)
    throw std::invalid_argument(
        "scaling fit needs at least 3 distinct scale points");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double count = static_cast<double>(n_msgs.size());
  for (auto& [n, m] : n_msgs) {
    double x = std::log(n), y = std::log(std::max(1.0, m));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  ScalingFit fit;
  fit.model = model;
  fit.exponent = (count * sxy - sx * sy) / (count * sxx - sx * sx);

  auto curve = [&](double n) -> double {
    if (model == "n") return n;
    if (model == "n*log^2") return n * std::pow(std::log(n), 2);
    if (model == "n^2") return n * n;
    if (model == "n^3") return n * n * n;
    throw std::invalid_argument("unknown model: " + model);
  };
  double num = 0, den = 0;
  for (auto& [n, m] : n_msgs) {
    num += curve(n) * m;
    den += curve(n) * curve(n);
  }
  fit.coeff = den > 0 ? num / den : 0;
  for (auto& [n, m] : n_msgs)
    fit.points.push_back({n, m, fit.coeff * curve(n)});
  return fit;
}

std::vector<std::pair<double, double>> scaling_points_from_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::map<double, std::pair<double, long>> acc;  // n -> (sum msgs, count)
  int n_col = -1, msg_col = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (n_col < 0) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "n") n_col = static_cast<int>(i);
        if (cells[i] == "messages") msg_col = static_cast<int>(i);
      }
      if (n_col < 0 || msg_col < 0)
        throw std::runtime_error("missing n/messages columns in " + path);
      continue;
    }
    double n = std::stod(cells[n_col]);
    double m = std::stod(cells[msg_col]);
    acc[n].first += m;
    acc[n].second += 1;
  }
  std::vector<std::pair<double, double>> pts;
  for (auto& [n, sm] : acc) pts.emplace_back(n, sm.first / sm.second);
  return pts;
}

}  // namespace congest
