#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "congest/oracles.hpp"
#include "congest/port_graph.hpp"
#include "congest/sim.hpp"

namespace congest {

using Params = std::map<std::string, std::string>;

// Everything the CLI needs to run an algorithm by name: which models it
// assumes, which config keys it requires, and how to build node programs
// for a given graph.  `n` and similar globally-known quantities are baked
// into the factory here; they are not part of a node's local knowledge.
struct AlgorithmInfo {
  std::string name;
  std::string summary;
  Knowledge knowledge = Knowledge::KT0;
  Bandwidth bandwidth = Bandwidth::congest();
  std::vector<std::string> required_keys;
  std::function<ProgramFactory(const PortGraph&, const Params&)> make;
  std::function<long(const PortGraph&, const Params&)> round_cap;
};

const std::vector<AlgorithmInfo>& algorithm_registry();
const AlgorithmInfo& algorithm_by_name(const std::string& name);

// The problem an algorithm's outputs solve under the given params
// (greedy-mis depends on its `derive` key).
Problem algorithm_problem(const std::string& name, const Params& params);

struct RunOutcome {
  Solution solution;
  bool valid = false;
  bool failed = false;
  std::string failure;
};

// Interprets per-node outputs as a Solution for the algorithm's problem,
// re-checks validity independently, and collects failure flags (timeouts,
// budget exhaustion, unconverged inner runs, inconsistent matchings).
RunOutcome extract_outcome(const std::string& algorithm, const Params& params,
                           const PortGraph& g, const SimResult& res);

double param_double(const Params& p, const std::string& key, double dflt);
long param_long(const Params& p, const std::string& key, long dflt);
std::string param_str(const Params& p, const std::string& key,
                      const std::string& dflt);
// parses "a/b" or a decimal into an exact fraction
std::pair<long, long> param_fraction(const Params& p, const std::string& key,
                                     long num_dflt, long den_dflt);

}  // namespace congest
