#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "congest/port_graph.hpp"

namespace congest {

enum class Problem { MVC, MDS, MaxIS, MaxM };

std::string problem_name(Problem p);
Problem problem_from_name(const std::string& s);

// A problem-tagged witness: vertex set for VC/DS/IS (node indices,
// sorted), edge set for matchings.
struct Solution {
  Problem problem = Problem::MVC;
  std::vector<int> vertices;
  std::vector<std::array<int, 2>> edges;

  long size() const {
    return problem == Problem::MaxM ? static_cast<long>(edges.size())
                                    : static_cast<long>(vertices.size());
  }
};

// Independent validity re-check (never trusts the search that produced the
// witness).
bool solution_valid(const PortGraph& g, const Solution& s);

// Practical size guards: exact search is the point, scalability is not.
// Hard cap 64 regardless (bitmask representation).
struct OracleGuard {
  int mvc_max = 40;
  int mds_max = 30;
  int maxis_max = 40;
};

class OracleSizeError : public std::runtime_error {
 public:
  explicit OracleSizeError(const std::string& what)
      : std::runtime_error(what) {}
};

// Exact optima with lexicographically smallest witnesses (by sorted node
// index list), so reports are reproducible.
Solution exact_mvc(const PortGraph& g, const OracleGuard& guard = {});
Solution exact_mds(const PortGraph& g, const OracleGuard& guard = {});
Solution exact_maxis(const PortGraph& g, const OracleGuard& guard = {});
// Maximum-cardinality matching on general graphs (blossom contraction);
// no size guard needed at desk scale.
Solution exact_maxm(const PortGraph& g);

Solution solve(Problem p, const PortGraph& g, const OracleGuard& guard = {});

// Minimum-size S with S subseteq allowed and targets subseteq N[S];
// vertex sets given as sorted index lists.  Exhaustive (lex-min witness).
std::vector<int> min_dominators(const PortGraph& g,
                                const std::vector<int>& targets,
                                const std::vector<int>& allowed);

}  // namespace congest
