#include "congest/registry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "congest/programs/ball_growing.hpp"
#include "congest/programs/gather_all.hpp"
#include "congest/programs/greedy_mis.hpp"
#include "congest/programs/matching.hpp"

namespace congest {

double param_double(const Params& p, const std::string& key, double dflt) {
  auto it = p.find(key);
  return it == p.end() ? dflt : std::stod(it->second);
}

long param_long(const Params& p, const std::string& key, long dflt) {
  auto it = p.find(key);
  return it == p.end() ? dflt : std::stol(it->second);
}

std::string param_str(const Params& p, const std::string& key,
                      const std::string& dflt) {
  auto it = p.find(key);
  return it == p.end() ? dflt : it->second;
}

std::pair<long, long> param_fraction(const Params& p, const std::string& key,
                                     long num_dflt, long den_dflt) {
  auto it = p.find(key);
  if (it == p.end()) return {num_dflt, den_dflt};
  const std::string& s = it->second;
  auto slash = s.find('/');
  if (slash != std::string::npos)
    return {std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1))};
  // decimal: scale to a fraction over a power of ten
  double v = std::stod(s);
  long den = 1;
  while (std::abs(v * den - std::round(v * den)) > 1e-9 && den < 100000000)
    den *= 10;
  return {static_cast<long>(std::round(v * den)), den};
}

namespace {

GreedyMisConfig mis_config(const PortGraph& g, const Params& p) {
  GreedyMisConfig cfg;
  cfg.n = g.n();
  cfg.p = param_double(p, "p", 0.5);
  cfg.q_override = param_double(p, "q", 0.0);
  cfg.iters_per_phase = static_cast<int>(param_long(p, "iters", 15));
  cfg.tmis_factor = static_cast<int>(param_long(p, "tmis-factor", 40));
  return cfg;
}

std::vector<AlgorithmInfo> build_registry() {
  std::vector<AlgorithmInfo> algos;

  algos.push_back(AlgorithmInfo{
      "ball-growing",
      "iterated exact-ball decomposition, (1+eps) guarantee",
      Knowledge::KT0,
      Bandwidth::congest(),
      {"problem", "eps"},
      [](const PortGraph& g, const Params& p) {
        BallGrowingConfig cfg;
        cfg.n = g.n();
        cfg.problem = problem_from_name(param_str(p, "problem", "maxis"));
        std::tie(cfg.eps_num, cfg.eps_den) = param_fraction(p, "eps", 1, 2);
        cfg.radius_cap = static_cast<int>(param_long(p, "radius-cap", 0));
        return ball_growing_program(cfg);
      },
      [](const PortGraph& g, const Params&) {
        long n = g.n(), m = g.m();
        return 1000 + 40 * n * (n + m);
      }});

  algos.push_back(AlgorithmInfo{
      "greedy-mis",
      "phased randomized greedy MIS for G(n,p)",
      Knowledge::KT0,
      Bandwidth::congest(),
      {"p"},
      [](const PortGraph& g, const Params& p) {
        return greedy_mis_program(mis_config(g, p));
      },
      [](const PortGraph& g, const Params& p) {
        return mis_config(g, p).total_rounds() + 2;
      }});

  algos.push_back(AlgorithmInfo{
      "propose-matching",
      "one-shot propose-accept matching",
      Knowledge::KT0,
      Bandwidth::congest(),
      {},
      [](const PortGraph&, const Params& p) {
        ProposeMatchingConfig cfg;
        cfg.alpha = param_double(p, "alpha", 0.5);
        cfg.estimate_degrees = param_long(p, "estimate", 0) != 0;
        return propose_matching_program(cfg);
      },
      [](const PortGraph&, const Params&) { return 8L; }});

  algos.push_back(AlgorithmInfo{
      "rotation-matching",
      "random-walk path growth with rotations; alternate-edge matching",
      Knowledge::KT0,
      Bandwidth::congest(),
      {},
      [](const PortGraph& g, const Params& p) {
        RotationMatchingConfig cfg;
        cfg.n = g.n();
        cfg.start_id = static_cast<std::uint64_t>(param_long(p, "start-id", 1));
        cfg.budget_factor = param_double(p, "budget-factor", 12.0);
        return rotation_matching_program(cfg);
      },
      [](const PortGraph& g, const Params& p) {
        RotationMatchingConfig cfg;
        cfg.n = g.n();
        cfg.budget_factor = param_double(p, "budget-factor", 12.0);
        return 20 * cfg.step_budget() + 100 * g.n() + 1000;
      }});

  algos.push_back(AlgorithmInfo{
      "gather-all",
      "gather the topology at the min-ID node, solve exactly, broadcast",
      Knowledge::KT0,
      Bandwidth::congest(),
      {"problem"},
      [](const PortGraph& g, const Params& p) {
        GatherAllConfig cfg;
        cfg.n = g.n();
        cfg.problem = problem_from_name(param_str(p, "problem", "mvc"));
        std::uint64_t maxid = 0;
        for (int u = 0; u < g.n(); ++u) maxid = std::max(maxid, g.id(u));
        cfg.id_max = maxid;
        int guard = static_cast<int>(param_long(p, "guard", 64));
        cfg.guard = OracleGuard{guard, guard, guard};
        return gather_all_program(cfg);
      },
      [](const PortGraph& g, const Params&) {
        return 100 + 4L * g.n() + 6L * g.m();
      }});

  return algos;
}

}  // namespace

const std::vector<AlgorithmInfo>& algorithm_registry() {
  static const std::vector<AlgorithmInfo> algos = build_registry();
  return algos;
}

const AlgorithmInfo& algorithm_by_name(const std::string& name) {
  for (const auto& a : algorithm_registry())
    if (a.name == name) return a;
  throw std::invalid_argument("unknown algorithm: " + name);
}

Problem algorithm_problem(const std::string& name, const Params& params) {
  if (name == "ball-growing" || name == "gather-all")
    return problem_from_name(param_str(params, "problem", "maxis"));
  if (name == "greedy-mis") {
    std::string d = param_str(params, "derive", "maxis");
    return problem_from_name(d);
  }
  if (name == "propose-matching" || name == "rotation-matching")
    return Problem::MaxM;
  throw std::invalid_argument("unknown algorithm: " + name);
}

namespace {

std::vector<int> flagged_vertices(const std::vector<NodeOutput>& outs) {
  std::vector<int> v;
  for (std::size_t i = 0; i < outs.size(); ++i)
    if (outs[i].in_solution && *outs[i].in_solution)
      v.push_back(static_cast<int>(i));
  return v;
}

}  // namespace

RunOutcome extract_outcome(const std::string& algorithm, const Params& params,
                           const PortGraph& g, const SimResult& res) {
  RunOutcome out;
  out.failed = res.timed_out;
  if (res.timed_out) out.failure = "timeout";
  for (const auto& o : res.outputs) {
    if (o.note.find("failed:") != std::string::npos) {
      out.failed = true;
      out.failure = o.note;
    }
    if (o.note == "unconverged") {
      out.failed = true;
      out.failure = "unconverged";
    }
  }

  const Problem prob = algorithm_problem(algorithm, params);
  if (prob == Problem::MaxM) {
    auto edges = matching_from_outputs(g, res.outputs);
    out.solution.problem = Problem::MaxM;
    if (!edges) {
      out.failed = true;
      out.failure = "inconsistent matching outputs";
      out.valid = false;
      return out;
    }
    out.solution.edges = *edges;
    out.valid = solution_valid(g, out.solution);
    return out;
  }

  std::vector<int> flagged = flagged_vertices(res.outputs);
  if (algorithm == "greedy-mis") {
    // outputs are the MIS; the solution may be a derived one
    bool mis_ok = is_maximal_independent_set(g, flagged);
    bool replay_ok = false;
    if (mis_ok && !out.failed) {
      try {
        replay_ok = replay_sequential_greedy(g, res.outputs) == flagged;
      } catch (const std::exception&) {
        replay_ok = false;
      }
    }
    if (!mis_ok || !replay_ok) {
      out.failed = true;
      out.failure = !mis_ok ? "output is not a maximal independent set"
                            : "sequential replay mismatch";
    }
    out.solution.problem = prob;
    out.solution.vertices =
        mis_ok ? derived_from_mis(g, flagged, prob) : flagged;
    out.valid = mis_ok && solution_valid(g, out.solution);
    return out;
  }

  out.solution.problem = prob;
  out.solution.vertices = std::move(flagged);
  out.valid = solution_valid(g, out.solution);
  return out;
}

}  // namespace congest
