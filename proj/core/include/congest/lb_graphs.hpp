#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "congest/oracles.hpp"
#include "congest/port_graph.hpp"

namespace congest {

// Several generator families only pin a one-sided bound, so the predicted
// optimum carries a comparator: '=' exact, '<' means <=, '>' means >=.
struct PredictedOpt {
  Problem problem = Problem::MVC;
  char cmp = '=';
  long value = 0;
  std::string tag;  // which gap/claim predicts the value
};

struct LbInstance {
  PortGraph graph;
  std::string family;
  std::map<std::string, std::string> params;
  std::vector<std::uint8_t> x, y;  // input bit-vectors (may be empty)
  std::vector<std::string> role;   // per node: A1/B2/t/f/u/X/Y/..., see gen
  std::vector<int> sep_part;       // per node: 1..l separation part, 0 none
  PredictedOpt predicted;
};

// Bit-vector convention used throughout: x has k*k entries indexed
// row-major, x[(i-1)*k + (j-1)] for row i, column j, both 1-based.
// "Bit position h of index i" means bit h-1 (LSB first) of i-1.

// Clique-rows + cycle-gadget family whose minimum vertex cover is exactly
// 4k + 2*l*log2(k) - 4 iff x and y intersect (share a common 1).
// Requires k a power of two, l even >= 2, |x| = |y| = k^2.
LbInstance mvc_exact_family(int k, int l, const std::vector<std::uint8_t>& x,
                            const std::vector<std::uint8_t>& y);

// Independent-rows variant with 3-vertex cycle cells; minimum dominating
// set is <= 2*l*log2(k) + 2 iff x and y intersect, >= that +1 otherwise.
LbInstance mds_exact_family(int k, int l, const std::vector<std::uint8_t>& x,
                            const std::vector<std::uint8_t>& y);

// 6n+2-vertex construction with a 4-vs-5 dominating set gap controlled by
// the intersection of x and y (|x| = |y| = n^2).
LbInstance mds_crossing_graph(int n, const std::vector<std::uint8_t>& x,
                              const std::vector<std::uint8_t>& y);

// The fixed member of the family above: A-side is the circulant n/2-regular
// bipartite graph, B-side its complement (y = ~x), so the dominating set
// has size >= 5 while many port-preserving crossings drop it to <= 4.
LbInstance mds_fixed_member(int n);

// For an A1-A2 edge e of mds_fixed_member, every oriented partner edge e2
// such that cross_edges(g, e, e2) yields an intersecting member (exact
// minimum dominating set <= 4).
std::vector<EdgeRef> eligible_crossings(const LbInstance& inst,
                                        const EdgeRef& e);

// Two disjoint copies of the complete tripartite-path X-Y-Z with
// |X| = |Z| = t, |Y| = t/(4c); optimum cover is Y u Y' of size t/(2c).
LbInstance mvc_base_graph(int t, int c);

// Same shape with |Y| = |Y'| = eps*t; maximum independent set is
// X u Z u X' u Z' of size 4t.  eps given as a fraction, eps_num/eps_den;
// eps*t must be a positive integer.
LbInstance maxis_base_graph(int t, long eps_num, long eps_den);

// Two cliques-with-fringes halves joined by a planted perfect matching of
// size n ("valuable" edges); IDs are a uniform random permutation of [2n]
// and ports are uniform.  gamma = eps/7; requires floor(gamma*n) >= 1.
LbInstance maxm_lb_graph(int n, long eps_num, long eps_den,
                         std::uint64_t seed);

struct SeparationReport {
  bool only_x_side = false;   // perturbing x changes only V1 x V1 edges
  bool only_y_side = false;   // perturbing y changes only Vl x Vl edges
  bool local_cuts = false;    // every edge stays within adjacent parts
  bool predicted_ok = false;  // oracle agrees with the predicted optimum
  bool oracle_skipped = false;  // size guard refused the exact solve
  long oracle_value = -1;
  std::string detail;
  bool pass() const {
    return only_x_side && only_y_side && local_cuts &&
           (predicted_ok || oracle_skipped);
  }
};

// Checks the four separated-family properties of a generated instance
// (mvc_exact_family / mds_exact_family only).
SeparationReport check_separation(const LbInstance& inst,
                                  const OracleGuard& guard = {});

// Instance file = graph file (<base>.pg) + JSON sidecar (<base>.json).
std::string instance_sidecar_json(const LbInstance& inst);
void save_instance(const LbInstance& inst, const std::string& base_path);
LbInstance load_instance(const std::string& base_path);

std::string bits_to_hex(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> hex_to_bits(const std::string& hex,
                                      std::size_t count);

}  // namespace congest
