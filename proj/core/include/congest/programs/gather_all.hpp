#pragma once

#include "congest/oracles.hpp"
#include "congest/sim.hpp"

namespace congest {

struct GatherAllConfig {
  int n = 0;                  // node count, known to all nodes
  Problem problem = Problem::MVC;
  std::uint64_t id_max = 0;   // ID universe bound (default n)
  OracleGuard guard;          // local exact solves at every node
};

// The trivial exact baseline: elect the minimum-ID node per component,
// gather the whole topology at it over a BFS tree, broadcast the edge list
// back down, and let every node solve the instance locally.  Outputs carry
// the solution membership and (in `note`) the full gathered edge list.
ProgramFactory gather_all_program(const GatherAllConfig& cfg);

}  // namespace congest
