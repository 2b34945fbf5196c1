#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "congest/rng.hpp"

namespace congest {

// A port-numbered undirected graph.  Nodes are addressed internally by
// index 0..n-1 and carry distinct integer IDs.  The incident edges of each
// node are numbered by ports 1..deg; adj(u)[p-1] names the neighbor reached
// through port p and the port used on the far side.
//
// Values are immutable after construction and safe to share across threads.
class PortGraph {
 public:
  struct Half {
    int neighbor = -1;    // node index on the far side
    int their_port = -1;  // port number at the far side
  };

  PortGraph() = default;

  // Builds a graph from an edge list over node indices.  Ports are assigned
  // in edge insertion order.  Throws on self-loops, parallel edges, bad
  // indices or duplicate IDs.
  static PortGraph build(std::vector<std::uint64_t> ids,
                         const std::vector<std::pair<int, int>>& edges);

  // Builds with an explicit port table: adj[u][p-1] = (neighbor, far port).
  static PortGraph build_with_ports(std::vector<std::uint64_t> ids,
                                    std::vector<std::vector<Half>> adj);

  int n() const { return static_cast<int>(adj_.size()); }
  long m() const { return static_cast<long>(edges_.size()); }
  int degree(int u) const { return static_cast<int>(adj_[u].size()); }
  std::uint64_t id(int u) const { return ids_[u]; }
  const std::vector<std::uint64_t>& ids() const { return ids_; }

  const Half& at(int u, int port) const { return adj_[u][port - 1]; }
  const std::vector<Half>& adj(int u) const { return adj_[u]; }

  int max_degree() const;
  int min_degree() const;

  bool has_edge(int u, int v) const;
  // Port of u on the edge {u,v}; -1 if absent.
  int port_towards(int u, int v) const;

  // Canonical edge list: sorted by (min index, max index); edge_index is
  // the position in this list.
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  long edge_index(int u, int v) const;  // -1 if absent

  std::optional<int> index_of_id(std::uint64_t id) const;

  // Full invariant check (port permutations, symmetry, simple graph,
  // distinct IDs).  Throws std::runtime_error on the first violation.
  void validate() const;

  bool same_edge_set(const PortGraph& other) const;

 private:
  std::vector<std::uint64_t> ids_;
  std::vector<std::vector<Half>> adj_;
  std::vector<std::array<int, 2>> edges_;
  std::unordered_map<std::uint64_t, long> edge_idx_;
  std::unordered_map<std::uint64_t, int> id_idx_;

  static std::uint64_t pair_key(int u, int v);
  void rebuild_index();
  friend PortGraph cross_edges(const PortGraph&, const struct EdgeRef&,
                               const struct EdgeRef&);
  friend PortGraph assign_ports(const PortGraph&, std::uint64_t);
  friend PortGraph assign_ids(const PortGraph&, std::uint64_t,
                              std::uint64_t);
};

// A reference to one edge of a specific PortGraph, with an orientation:
// crossing {u,v} with {u2,v2} joins u-u2 and v-v2.
struct EdgeRef {
  int u = -1, v = -1;
  int pu = -1, pv = -1;  // ports at u and v

  static EdgeRef of(const PortGraph& g, int u, int v);
};

// G(n,p): every unordered pair occurs independently with probability p.
// IDs and ports are then assigned with sub-seeds derived from `seed`.
// Requires n >= 1 and 0 < p <= 1.
PortGraph gen_gnp(int n, double p, std::uint64_t seed);

// Reassigns node IDs as a uniformly random permutation of 1..universe
// (universe = n by default); structure unchanged.
PortGraph assign_ids(const PortGraph& g, std::uint64_t seed,
                     std::uint64_t universe = 0);

// Redraws every node's port permutation independently and uniformly;
// adjacency unchanged.
PortGraph assign_ports(const PortGraph& g, std::uint64_t seed);

// Port-preserving crossing: removes e={u,v}, e2={u2,v2} and adds {u,u2}
// (ports pu,pu2) and {v,v2} (ports pv,pv2).  Endpoints must be pairwise
// distinct and the replacement edges must not already exist.
PortGraph cross_edges(const PortGraph& g, const EdgeRef& e,
                      const EdgeRef& e2);

}  // namespace congest
