#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "congest/port_graph.hpp"
#include "congest/sim.hpp"

namespace congest {

struct ProposeMatchingConfig {
  // Proposal probability.  When `estimate_degrees` is set, alpha is ignored
  // and each node derives alpha = 1/(2*rhat) from a one-round degree
  // exchange on its first port (a local estimate of max/min degree).
  double alpha = 0.5;
  bool estimate_degrees = false;
};

// One-shot propose-accept matching: each node proposes a random incident
// edge with probability alpha; a proposal is accepted iff it is the only
// proposal touching the target.  2 communication rounds (3 with the degree
// exchange), at most one proposal + one acceptance per node.
ProgramFactory propose_matching_program(const ProposeMatchingConfig& cfg);

struct RotationMatchingConfig {
  int n = 0;                   // node count known to all nodes
  std::uint64_t start_id = 1;  // the node that seeds the path
  double budget_factor = 12.0;  // step budget = ceil(factor * n * ln n)
  long step_budget() const;
};

// Random-walk path growth with rotations: the head extends along a random
// incident edge; landing on the path rotates it (the displaced segment is
// re-oriented by a sweep along its length).  Once the path spans all nodes
// and the head neighbors the start node the cycle is closed and alternate
// edges are output as a perfect (n even) or near-perfect matching.
// Exhausting the step budget flags the run as failed; outputs stay empty.
ProgramFactory rotation_matching_program(const RotationMatchingConfig& cfg);

// Matched edges from per-node outputs: an edge counts iff both endpoints
// name it (by chosen port or by chosen neighbor ID).  Returns nullopt if
// the outputs are inconsistent (some node names a non-reciprocating edge).
std::optional<std::vector<std::array<int, 2>>> matching_from_outputs(
    const PortGraph& g, const std::vector<NodeOutput>& outs);

}  // namespace congest
