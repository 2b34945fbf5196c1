#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "congest/experiments.hpp"
#include "congest/graph_io.hpp"
#include "congest/verify.hpp"
#include "json.hpp"

namespace {

using namespace congest;

Params parse_kv(const std::vector<std::string>& kvs) {
  Params p;
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("expected key=value, got: " + kv);
    p[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return p;
}

std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto dash = tok.find("..");
    if (dash != std::string::npos) {
      std::uint64_t lo = std::stoull(tok.substr(0, dash));
      std::uint64_t hi = std::stoull(tok.substr(dash + 2));
      for (std::uint64_t v = lo; v <= hi; ++v) seeds.push_back(v);
    } else if (!tok.empty()) {
      seeds.push_back(std::stoull(tok));
    }
  }
  return seeds;
}

int cmd_generate(const std::string& family, const Params& params,
                 std::uint64_t seed, const std::string& out) {
  if (family == "gnp" || family == "gnp-clogn" || family == "circulant" ||
      family == "complete" || family == "star" || family == "path" ||
      family == "empty") {
    PortGraph g = build_graph(family, params, seed);
    save_graph(g, out + ".pg");
    std::cout << "wrote " << out << ".pg (n=" << g.n() << " m=" << g.m()
              << ")\n";
    return 0;
  }
  LbInstance inst = build_instance(family, params, seed);
  save_instance(inst, out);
  std::cout << "wrote " << out << ".pg + " << out << ".json (n="
            << inst.graph.n() << " m=" << inst.graph.m() << ", predicted "
            << problem_name(inst.predicted.problem) << " "
            << (inst.predicted.cmp == '<'   ? "<="
                : inst.predicted.cmp == '>' ? ">="
                                            : "=")
            << " " << inst.predicted.value << ")\n";
  return 0;
}

int cmd_verify(const std::vector<std::string>& bases, bool strict, int guard,
               int crossings) {
  OracleGuard og;
  if (guard > 0) og = OracleGuard{guard, guard, guard};
  int failures = 0, refusals = 0;
  for (const auto& base : bases) {
    LbInstance inst = load_instance(base);
    try {
      VerifyReport rep = verify_instance(inst, og);
      std::cout << (rep.pass ? "pass  " : "FAIL  ") << base << "  "
                << rep.detail << "\n";
      if (!rep.pass) ++failures;
      if (rep.pass && crossings > 0 && inst.family == "mds_fixed_member") {
        // also confirm the gap on crossed variants
        const int n = std::stoi(inst.params.at("n"));
        int done = 0;
        for (int i = 1; i <= n && done < crossings; ++i) {
          EdgeRef e = EdgeRef::of(inst.graph, i - 1,
                                  /* a2^i */ n + (i % n));
          for (const auto& e2 : eligible_crossings(inst, e)) {
            PortGraph crossed = cross_edges(inst.graph, e, e2);
            Solution s = exact_mds(crossed, og);
            bool ok = s.size() <= 4;
            std::cout << (ok ? "pass  " : "FAIL  ") << base << "  crossing "
                      << done << ": mds=" << s.size() << " (expected <= 4)\n";
            if (!ok) ++failures;
            if (++done >= crossings) break;
          }
        }
      }
    } catch (const OracleSizeError& ex) {
      std::cout << "refused  " << base << "  " << ex.what() << "\n";
      ++refusals;
    }
  }
  if (failures > 0) return 1;
  if (refusals > 0 && strict) return 1;
  return 0;
}

int cmd_solve(const std::string& problem, const std::string& path, int guard) {
  PortGraph g = load_graph(path);
  OracleGuard og;
  if (guard > 0) og = OracleGuard{guard, guard, guard};
  Solution s = solve(problem_from_name(problem), g, og);
  nlohmann::json j;
  j["problem"] = problem;
  j["size"] = s.size();
  j["valid"] = solution_valid(g, s);
  if (s.problem == Problem::MaxM) {
    auto edges = nlohmann::json::array();
    for (const auto& e : s.edges)
      edges.push_back({g.id(e[0]), g.id(e[1])});
    j["edges"] = edges;
  } else {
    auto verts = nlohmann::json::array();
    for (int v : s.vertices) verts.push_back(g.id(v));
    j["vertices"] = verts;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_run(ExperimentSpec spec, const std::string& csv,
            const std::string& trace_path, int workers) {
  auto rows = run_experiment(spec, workers);
  if (!csv.empty())
    write_rows_csv(csv, rows);
  else {
    std::cout << ResultRow::csv_header() << "\n";
    for (const auto& r : rows) std::cout << r.csv_row() << "\n";
  }
  int bad = 0;
  for (const auto& r : rows)
    if (!r.valid || r.failed) ++bad;
  if (!trace_path.empty()) {
    // re-run the first seed with tracing and dump the message log
    PortGraph g = build_graph(spec.generator, spec.gen_params, spec.seeds[0]);
    const AlgorithmInfo& algo = algorithm_by_name(spec.algorithm);
    SimConfig cfg;
    cfg.knowledge = algo.knowledge;
    cfg.bandwidth = algo.bandwidth;
    cfg.seed = spec.seeds[0];
    cfg.round_cap = spec.round_cap > 0 ? spec.round_cap
                                       : algo.round_cap(g, spec.algo_params);
    cfg.record_trace = true;
    SimResult res = run(g, algo.make(g, spec.algo_params), cfg);
    std::ofstream out(trace_path);
    out << res.trace_jsonl();
    std::cerr << "trace for seed " << spec.seeds[0] << " -> " << trace_path
              << " (" << res.csv_row() << ")\n";
  }
  return bad > 0 ? 1 : 0;
}

int cmd_scaling(const std::string& csv, const std::string& model,
                const std::string& out) {
  auto pts = scaling_points_from_csv(csv);
  ScalingFit fit = fit_scaling(pts, model);
  std::ostringstream body;
  body << "n,messages,fitted\n";
  for (const auto& p : fit.points)
    body << p[0] << ',' << p[1] << ',' << p[2] << "\n";
  if (out.empty())
    std::cout << body.str();
  else {
    std::ofstream f(out);
    f << body.str();
  }
  std::printf("model=%s coeff=%.6g exponent=%.4f\n", fit.model.c_str(),
              fit.coeff, fit.exponent);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"message-complexity workbench for distributed graph "
               "optimization"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a key=value file");

  // generate
  auto* gen = app.add_subcommand("generate", "write a graph/instance file");
  std::string g_family, g_out = "instance";
  std::vector<std::string> g_params;
  std::uint64_t g_seed = 1;
  gen->add_option("--family", g_family, "family or generator name")
      ->required();
  gen->add_option("--param,-P", g_params, "key=value (repeatable)");
  gen->add_option("--k", [&](const auto& v) { g_params.push_back("k=" + v[0]); return true; }, "shorthand for -P k=");
  gen->add_option("--l", [&](const auto& v) { g_params.push_back("l=" + v[0]); return true; }, "shorthand for -P l=");
  gen->add_option("--n", [&](const auto& v) { g_params.push_back("n=" + v[0]); return true; }, "shorthand for -P n=");
  gen->add_option("--t", [&](const auto& v) { g_params.push_back("t=" + v[0]); return true; }, "shorthand for -P t=");
  gen->add_option("--c", [&](const auto& v) { g_params.push_back("c=" + v[0]); return true; }, "shorthand for -P c=");
  gen->add_option("--x", [&](const auto& v) { g_params.push_back("x=" + v[0]); return true; }, "shorthand for -P x=");
  gen->add_option("--y", [&](const auto& v) { g_params.push_back("y=" + v[0]); return true; }, "shorthand for -P y=");
  gen->add_option("--eps", [&](const auto& v) { g_params.push_back("eps=" + v[0]); return true; }, "shorthand for -P eps=");
  gen->add_option("--p", [&](const auto& v) { g_params.push_back("p=" + v[0]); return true; }, "shorthand for -P p=");
  gen->add_option("--seed", g_seed, "generator seed");
  gen->add_option("--out", g_out, "output base path");

  // verify
  auto* ver = app.add_subcommand("verify", "check predicted optima exactly");
  std::vector<std::string> v_bases;
  bool v_strict = false;
  int v_guard = 0, v_crossings = 0;
  ver->add_option("instances", v_bases, "instance base paths")->required();
  ver->add_flag("--strict", v_strict, "treat size-guard refusals as failures");
  ver->add_option("--guard", v_guard, "override oracle size guards");
  ver->add_option("--crossings", v_crossings,
                  "also check this many crossed variants (mds-fixed)");

  // solve
  auto* sol = app.add_subcommand("solve", "exact oracle on a graph file");
  std::string s_problem, s_path;
  int s_guard = 0;
  sol->add_option("--problem", s_problem, "mvc|mds|maxis|maxm")->required();
  sol->add_option("graph", s_path, "graph file (.pg)")->required();
  sol->add_option("--guard", s_guard, "override oracle size guards");

  // run
  auto* runc = app.add_subcommand("run", "run an algorithm across seeds");
  ExperimentSpec spec;
  std::vector<std::string> r_gen_params, r_algo_params;
  std::vector<std::string> r_seeds;
  std::string r_csv, r_trace;
  bool r_oracle = false;
  int r_guard = 0;
  runc->add_option("--name", spec.name, "experiment name");
  runc->add_option("--generator", spec.generator,
                   "graph source (gnp, gnp-clogn, circulant, file, "
                   "mvc-exact, ...)")
      ->required();
  runc->add_option("--gen,-G", r_gen_params, "generator key=value");
  runc->add_option("--algorithm", spec.algorithm, "registry name")
      ->required();
  runc->add_option("--algo,-A", r_algo_params, "algorithm key=value");
  runc->add_option("--seeds", r_seeds, "comma list and ranges, e.g. 1..10");
  runc->add_option("--round-cap", spec.round_cap, "override the round cap");
  runc->add_flag("--oracle", r_oracle, "also compute the exact optimum");
  runc->add_option("--guard", r_guard, "oracle size guard override");
  runc->add_option("--csv", r_csv, "append rows to this CSV file");
  runc->add_option("--dump-trace", r_trace,
                   "write the first seed's message trace (JSON lines)");

  // scaling-report
  auto* sca = app.add_subcommand("scaling-report",
                                 "fit message counts against n");
  std::string c_csv, c_model = "n", c_out;
  sca->add_option("--csv", c_csv, "results CSV")->required();
  sca->add_option("--model", c_model, "n | n*log^2 | n^2 | n^3");
  sca->add_option("--out", c_out, "write (n,messages,fitted) CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_generate(g_family, parse_kv(g_params), g_seed, g_out);
    if (ver->parsed()) return cmd_verify(v_bases, v_strict, v_guard,
                                         v_crossings);
    if (sol->parsed()) return cmd_solve(s_problem, s_path, s_guard);
    if (runc->parsed()) {
      spec.gen_params = parse_kv(r_gen_params);
      spec.algo_params = parse_kv(r_algo_params);
      std::string joined;
      for (const auto& s : r_seeds.empty() ? std::vector<std::string>{"1"}
                                           : r_seeds)
        joined += (joined.empty() ? "" : ",") + s;
      spec.seeds = parse_seeds(joined);
      spec.with_oracle = r_oracle;
      if (r_guard > 0) spec.guard = OracleGuard{r_guard, r_guard, r_guard};
      return cmd_run(spec, r_csv, r_trace, worker_count_from_env());
    }
    if (sca->parsed()) return cmd_scaling(c_csv, c_model, c_out);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
