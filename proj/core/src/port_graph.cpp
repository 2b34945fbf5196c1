#include "congest/port_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace congest {

std::uint64_t PortGraph::pair_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

PortGraph PortGraph::build(std::vector<std::uint64_t> ids,
                           const std::vector<std::pair<int, int>>& edges) {
  PortGraph g;
  const int n = static_cast<int>(ids.size());
  if (n < 1) throw std::invalid_argument("graph must have n >= 1 nodes");
  g.ids_ = std::move(ids);
  g.adj_.assign(n, {});
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop rejected");
    if (!seen.insert(pair_key(u, v)).second)
      throw std::invalid_argument("parallel edge rejected");
    g.adj_[u].push_back({v, static_cast<int>(g.adj_[v].size()) + 1});
    g.adj_[v].push_back({u, static_cast<int>(g.adj_[u].size())});
  }
  g.rebuild_index();
  g.validate();
  return g;
}

PortGraph PortGraph::build_with_ports(std::vector<std::uint64_t> ids,
                                      std::vector<std::vector<Half>> adj) {
  if (ids.size() != adj.size())
    throw std::invalid_argument("ids/adjacency size mismatch");
  if (ids.empty()) throw std::invalid_argument("graph must have n >= 1 nodes");
  PortGraph g;
  g.ids_ = std::move(ids);
  g.adj_ = std::move(adj);
  g.rebuild_index();
  g.validate();
  return g;
}

void PortGraph::rebuild_index() {
  edges_.clear();
  edge_idx_.clear();
  id_idx_.clear();
  for (int u = 0; u < n(); ++u) {
    id_idx_[ids_[u]] = u;
    for (const Half& h : adj_[u])
      if (u < h.neighbor) edges_.push_back({u, h.neighbor});
  }
  std::sort(edges_.begin(), edges_.end());
  for (long i = 0; i < static_cast<long>(edges_.size()); ++i)
    edge_idx_[pair_key(edges_[i][0], edges_[i][1])] = i;
}

int PortGraph::max_degree() const {
  int d = 0;
  for (int u = 0; u < n(); ++u) d = std::max(d, degree(u));
  return d;
}

int PortGraph::min_degree() const {
  int d = n() > 0 ? degree(0) : 0;
  for (int u = 1; u < n(); ++u) d = std::min(d, degree(u));
  return d;
}

bool PortGraph::has_edge(int u, int v) const {
  return edge_idx_.count(pair_key(u, v)) > 0;
}

int PortGraph::port_towards(int u, int v) const {
  for (int p = 1; p <= degree(u); ++p)
    if (adj_[u][p - 1].neighbor == v) return p;
  return -1;
}

long PortGraph::edge_index(int u, int v) const {
  auto it = edge_idx_.find(pair_key(u, v));
  return it == edge_idx_.end() ? -1 : it->second;
}

std::optional<int> PortGraph::index_of_id(std::uint64_t id) const {
  auto it = id_idx_.find(id);
  if (it == id_idx_.end()) return std::nullopt;
  return it->second;
}

void PortGraph::validate() const {
  std::unordered_set<std::uint64_t> ids_seen;
  for (int u = 0; u < n(); ++u)
    if (!ids_seen.insert(ids_[u]).second)
      throw std::runtime_error("duplicate node ID");
  std::unordered_set<std::uint64_t> pairs;
  for (int u = 0; u < n(); ++u) {
    for (int p = 1; p <= degree(u); ++p) {
      const Half& h = adj_[u][p - 1];
      if (h.neighbor < 0 || h.neighbor >= n())
        throw std::runtime_error("neighbor index out of range");
      if (h.neighbor == u) throw std::runtime_error("self-loop");
      if (h.their_port < 1 || h.their_port > degree(h.neighbor))
        throw std::runtime_error("far port out of range");
      const Half& back = adj_[h.neighbor][h.their_port - 1];
      if (back.neighbor != u || back.their_port != p)
        throw std::runtime_error("port symmetry violated");
      if (u < h.neighbor && !pairs.insert(pair_key(u, h.neighbor)).second)
        throw std::runtime_error("parallel edge");
    }
  }
}

bool PortGraph::same_edge_set(const PortGraph& other) const {
  return n() == other.n() && ids_ == other.ids_ && edges_ == other.edges_;
}

EdgeRef EdgeRef::of(const PortGraph& g, int u, int v) {
  int pu = g.port_towards(u, v);
  if (pu < 0) throw std::invalid_argument("EdgeRef: no such edge");
  return EdgeRef{u, v, pu, g.at(u, pu).their_port};
}

PortGraph gen_gnp(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_gnp: n must be >= 1");
  if (!(p > 0.0) || p > 1.0)
    throw std::invalid_argument("gen_gnp: p must be in (0, 1]");
  Rng rng(derive_seed(seed, 0x676e70 /* "gnp" */));
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (p >= 1.0 || rng.bernoulli(p)) edges.emplace_back(u, v);
  std::vector<std::uint64_t> ids(n);
  for (int u = 0; u < n; ++u) ids[u] = static_cast<std::uint64_t>(u) + 1;
  PortGraph g = PortGraph::build(std::move(ids), edges);
  g = assign_ids(g, derive_seed(seed, 0x696473 /* "ids" */));
  g = assign_ports(g, derive_seed(seed, 0x706f72 /* "por" */));
  return g;
}

PortGraph assign_ids(const PortGraph& g, std::uint64_t seed,
                     std::uint64_t universe) {
  const int n = g.n();
  if (universe == 0) universe = static_cast<std::uint64_t>(n);
  if (universe < static_cast<std::uint64_t>(n))
    throw std::invalid_argument("assign_ids: universe smaller than n");
  Rng rng(seed);
  std::vector<std::uint64_t> ids;
  if (universe == static_cast<std::uint64_t>(n)) {
    ids.resize(n);
    for (int i = 0; i < n; ++i) ids[i] = static_cast<std::uint64_t>(i) + 1;
    rng.shuffle(ids);
  } else {
    // Distinct draws from 1..universe; fine for universe >> n.
    std::unordered_set<std::uint64_t> used;
    while (static_cast<int>(ids.size()) < n) {
      std::uint64_t v = rng.below(universe) + 1;
      if (used.insert(v).second) ids.push_back(v);
    }
  }
  PortGraph out = g;
  out.ids_ = std::move(ids);
  out.rebuild_index();
  return out;
}

PortGraph assign_ports(const PortGraph& g, std::uint64_t seed) {
  PortGraph out = g;
  // Draw a uniform permutation of [deg(u)] per node, then rewire the
  // symmetric far-port references.
  std::vector<std::vector<int>> newport(g.n());  // old port -> new port
  for (int u = 0; u < g.n(); ++u) {
    const int d = g.degree(u);
    std::vector<int> perm(d);
    for (int i = 0; i < d; ++i) perm[i] = i + 1;
    Rng rng(derive_seed(seed, g.id(u)));
    rng.shuffle(perm);
    newport[u] = std::move(perm);
  }
  for (int u = 0; u < g.n(); ++u) {
    const int d = g.degree(u);
    std::vector<PortGraph::Half> slots(d);
    for (int p = 1; p <= d; ++p) {
      PortGraph::Half h = g.adj_[u][p - 1];
      h.their_port = newport[h.neighbor][h.their_port - 1];
      slots[newport[u][p - 1] - 1] = h;
    }
    out.adj_[u] = std::move(slots);
  }
  out.validate();
  return out;
}

PortGraph cross_edges(const PortGraph& g, const EdgeRef& e,
                      const EdgeRef& e2) {
  const int u = e.u, v = e.v, u2 = e2.u, v2 = e2.v;
  if (u == v || u == u2 || u == v2 || v == u2 || v == v2 || u2 == v2)
    throw std::invalid_argument("cross_edges: endpoints must be distinct");
  auto check = [&](const EdgeRef& r) {
    if (r.u < 0 || r.u >= g.n() || r.v < 0 || r.v >= g.n() || r.pu < 1 ||
        r.pu > g.degree(r.u) || g.at(r.u, r.pu).neighbor != r.v ||
        g.at(r.u, r.pu).their_port != r.pv)
      throw std::invalid_argument("cross_edges: stale edge reference");
  };
  check(e);
  check(e2);
  if (g.has_edge(u, u2) || g.has_edge(v, v2))
    throw std::invalid_argument(
        "cross_edges: replacement edge already present");
  PortGraph out = g;
  out.adj_[u][e.pu - 1] = {u2, e2.pu};
  out.adj_[u2][e2.pu - 1] = {u, e.pu};
  out.adj_[v][e.pv - 1] = {v2, e2.pv};
  out.adj_[v2][e2.pv - 1] = {v, e.pv};
  out.rebuild_index();
  out.validate();
  return out;
}

}  // namespace congest
