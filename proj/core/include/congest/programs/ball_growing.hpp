#pragma once

#include <cstdint>

#include "congest/oracles.hpp"
#include "congest/sim.hpp"

namespace congest {

struct BallGrowingConfig {
  int n = 0;  // node count, known to all nodes
  Problem problem = Problem::MaxIS;
  long eps_num = 1, eps_den = 2;  // epsilon as an exact fraction
  int radius_cap = 0;             // 0: ceil(log n / log(1+eps)) + 1
  std::uint64_t id_max = 0;       // ID universe bound (default n)

  int default_radius_cap() const;
};

// Iterated ball growing: a spanning forest is built per component, the
// lowest-ID active node grows a ball until the in-ball optimum stops
// improving by the (1+eps) factor, commits the exact in-ball solution, and
// deletes the gathered ball from the remaining graph.  Local computations
// are exact searches on the gathered subgraph, so n <= 64.
//
// Per problem: MaxIS keeps a maximum independent set of the inner ball,
// MVC the complement inside the deleted region, MDS a minimum set of
// in-or-next-to-ball vertices dominating the ball (only the inner ball is
// deleted), MaxM a maximum matching of the inner ball.
ProgramFactory ball_growing_program(const BallGrowingConfig& cfg);

}  // namespace congest
