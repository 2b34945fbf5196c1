#pragma once

#include <cstdint>
#include <vector>

#include "congest/oracles.hpp"
#include "congest/port_graph.hpp"
#include "congest/sim.hpp"

namespace congest {

struct GreedyMisConfig {
  int n = 0;        // node count known to all nodes
  double p = 0.0;   // edge probability (or an upper-bound surrogate)
  double q_override = 0.0;  // > 0 forces the activation base probability
  int iters_per_phase = 15;
  int tmis_factor = 40;        // inner budget = tmis_factor * ceil(ln n)
  std::uint64_t rho_max = 0;   // inner-ID space; default n^3

  double q() const;            // min(1, 100 ln(n) / (p n)) unless overridden
  int phases() const;          // ceil(log2(1/q)), 0 when q >= 1
  long tmis_rounds() const;
  long block_rounds() const { return tmis_rounds() + 2; }
  long total_rounds() const {
    return (static_cast<long>(phases()) * iters_per_phase + 1) *
           block_rounds();
  }
};

// Phased randomized-greedy MIS: undecided nodes activate with doubling
// probability q_i = 2^(i-1) q, the active subgraph runs inner-ID greedy
// MIS, and winners announce to all neighbors.  The last phase activates
// every remaining undecided node.  Output: in_solution plus a replay key
// "phase:iter:rho" in note ("unconverged" when the inner budget ran out).
ProgramFactory greedy_mis_program(const GreedyMisConfig& cfg);

// Extracts each node's (phase, iter, rho, id) key from a finished run and
// replays plain sequential greedy MIS in that order.  The distributed
// output must match exactly.
std::vector<int> replay_sequential_greedy(const PortGraph& g,
                                          const std::vector<NodeOutput>& outs);

std::vector<int> mis_from_outputs(const std::vector<NodeOutput>& outs);
bool is_maximal_independent_set(const PortGraph& g,
                                const std::vector<int>& set);

// Solutions derived from a maximal independent set: the set itself for
// MaxIS, the set for MDS (maximality implies domination), the complement
// for MVC.
std::vector<int> derived_from_mis(const PortGraph& g,
                                  const std::vector<int>& mis, Problem p);

}  // namespace congest
