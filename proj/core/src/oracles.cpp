#include "congest/oracles.hpp"

#include <algorithm>
#include <bit>
#include <queue>

namespace congest {

std::string problem_name(Problem p) {
  switch (p) {
    case Problem::MVC: return "mvc";
    case Problem::MDS: return "mds";
    case Problem::MaxIS: return "maxis";
    case Problem::MaxM: return "maxm";
  }
  return "?";
}

Problem problem_from_name(const std::string& s) {
  if (s == "mvc") return Problem::MVC;
  if (s == "mds") return Problem::MDS;
  if (s == "maxis") return Problem::MaxIS;
  if (s == "maxm") return Problem::MaxM;
  throw std::invalid_argument("unknown problem: " + s);
}

bool solution_valid(const PortGraph& g, const Solution& s) {
  std::vector<char> in(g.n(), 0);
  for (int v : s.vertices) {
    if (v < 0 || v >= g.n() || in[v]) return false;
    in[v] = 1;
  }
  switch (s.problem) {
    case Problem::MVC:
      for (const auto& e : g.edges())
        if (!in[e[0]] && !in[e[1]]) return false;
      return true;
    case Problem::MDS:
      for (int u = 0; u < g.n(); ++u) {
        if (in[u]) continue;
        bool dominated = false;
        for (const auto& h : g.adj(u))
          if (in[h.neighbor]) {
            dominated = true;
            break;
          }
        if (!dominated) return false;
      }
      return true;
    case Problem::MaxIS:
      for (const auto& e : g.edges())
        if (in[e[0]] && in[e[1]]) return false;
      return true;
    case Problem::MaxM: {
      std::vector<char> touched(g.n(), 0);
      for (const auto& e : s.edges) {
        if (!g.has_edge(e[0], e[1])) return false;
        if (touched[e[0]] || touched[e[1]]) return false;
        touched[e[0]] = touched[e[1]] = 1;
      }
      return true;
    }
  }
  return false;
}

namespace {

using Mask = std::uint64_t;

struct MaskGraph {
  int n;
  std::vector<Mask> nbr;   // open neighborhoods
  std::vector<Mask> cnbr;  // closed neighborhoods
  Mask all;

  explicit MaskGraph(const PortGraph& g) : n(g.n()) {
    nbr.assign(n, 0);
    for (const auto& e : g.edges()) {
      nbr[e[0]] |= Mask(1) << e[1];
      nbr[e[1]] |= Mask(1) << e[0];
    }
    cnbr.resize(n);
    for (int v = 0; v < n; ++v) cnbr[v] = nbr[v] | (Mask(1) << v);
    all = n == 64 ? ~Mask(0) : (Mask(1) << n) - 1;
  }
};

void check_guard(const PortGraph& g, int limit, const char* what) {
  if (g.n() > 64)
    throw OracleSizeError(std::string(what) +
                          ": graphs above 64 nodes are not supported");
  if (g.n() > limit)
    throw OracleSizeError(std::string(what) + ": " + std::to_string(g.n()) +
                          " nodes exceeds the size guard (" +
                          std::to_string(limit) + "); raise OracleGuard "
                          "explicitly if the instance is known to be easy");
}

int popcnt(Mask m) { return std::popcount(m); }

// ---- MaxIS ----------------------------------------------------------

struct IsSolver {
  const MaskGraph& mg;
  int best = 0;

  explicit IsSolver(const MaskGraph& m) : mg(m) {}

  // True iff the subgraph induced by P has an independent set of size k.
  bool exists(Mask P, int k) {
    if (k <= 0) return true;
    for (;;) {
      if (popcnt(P) < k) return false;
      // vertices isolated within P are always taken
      Mask forced = 0;
      Mask scan = P;
      while (scan) {
        int v = std::countr_zero(scan);
        scan &= scan - 1;
        if ((mg.nbr[v] & P) == 0) forced |= Mask(1) << v;
      }
      if (forced) {
        k -= popcnt(forced);
        P &= ~forced;
        if (k <= 0) return true;
        continue;
      }
      break;
    }
    // branch on a max-degree vertex of G[P]
    int pick = -1, dmax = -1;
    Mask scan = P;
    while (scan) {
      int v = std::countr_zero(scan);
      scan &= scan - 1;
      int d = popcnt(mg.nbr[v] & P);
      if (d > dmax) {
        dmax = d;
        pick = v;
      }
    }
    if (exists(P & ~mg.cnbr[pick], k - 1)) return true;
    return exists(P & ~(Mask(1) << pick), k);
  }

  int optimum(Mask P) {
    int lo = 0;
    while (exists(P, lo + 1)) ++lo;
    return lo;
  }
};

std::vector<int> lexmin_is_witness(const MaskGraph& mg, Mask P, int size,
                                   const std::vector<int>& order) {
  IsSolver s(mg);
  std::vector<int> out;
  int need = size;
  for (int v : order) {
    if (need == 0) break;
    if (!(P & (Mask(1) << v))) continue;
    if (s.exists(P & ~mg.cnbr[v], need - 1)) {
      out.push_back(v);
      P &= ~mg.cnbr[v];
      --need;
    } else {
      P &= ~(Mask(1) << v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- MVC ------------------------------------------------------------

struct VcSolver {
  const MaskGraph& mg;
  explicit VcSolver(const MaskGraph& m) : mg(m) {}

  // Greedy maximal matching size: a lower bound on VC of G[P].
  int matching_lb(Mask P) {
    int lb = 0;
    Mask alive = P;
    Mask scan = P;
    while (scan) {
      int v = std::countr_zero(scan);
      scan &= scan - 1;
      if (!(alive & (Mask(1) << v))) continue;
      Mask cand = mg.nbr[v] & alive & ~(Mask(1) << v);
      if (cand) {
        int w = std::countr_zero(cand);
        alive &= ~(Mask(1) << v);
        alive &= ~(Mask(1) << w);
        ++lb;
      }
    }
    return lb;
  }

  // True iff G[P] has a vertex cover of size <= k.
  bool exists(Mask P, int k) {
    // drop vertices with no remaining edges
    for (;;) {
      Mask drop = 0;
      Mask scan = P;
      while (scan) {
        int v = std::countr_zero(scan);
        scan &= scan - 1;
        if ((mg.nbr[v] & P) == 0) drop |= Mask(1) << v;
      }
      if (!drop) break;
      P &= ~drop;
    }
    if (P == 0) return k >= 0;
    if (k <= 0) return false;
    if (matching_lb(P) > k) return false;
    // degree-1 rule: if v has a single neighbor u, taking u is optimal
    Mask scan = P;
    while (scan) {
      int v = std::countr_zero(scan);
      scan &= scan - 1;
      Mask nv = mg.nbr[v] & P;
      if (popcnt(nv) == 1) {
        int u = std::countr_zero(nv);
        return exists(P & ~(Mask(1) << u) & ~(Mask(1) << v), k - 1);
      }
    }
    // branch on a max-degree vertex
    int pick = -1, dmax = -1;
    scan = P;
    while (scan) {
      int v = std::countr_zero(scan);
      scan &= scan - 1;
      int d = popcnt(mg.nbr[v] & P);
      if (d > dmax) {
        dmax = d;
        pick = v;
      }
    }
    if (exists(P & ~(Mask(1) << pick), k - 1)) return true;
    // pick excluded: all its neighbors go into the cover
    Mask nb = mg.nbr[pick] & P;
    return exists(P & ~nb & ~(Mask(1) << pick), k - popcnt(nb));
  }

  int optimum(Mask P) {
    int k = 0;
    while (!exists(P, k)) ++k;
    return k;
  }
};

// Lex-min optimum vertex cover via "is v in some optimum cover" tests.
std::vector<int> lexmin_vc_witness(const MaskGraph& mg, int size,
                                   const std::vector<int>& order) {
  VcSolver s(mg);
  std::vector<int> out;
  Mask P = mg.all;
  int need = size;
  for (int v : order) {
    if (need == 0) break;
    if ((mg.nbr[v] & P) == 0) continue;  // covers nothing anymore
    if (s.exists(P & ~(Mask(1) << v), need - 1)) {
      out.push_back(v);
      P &= ~(Mask(1) << v);
      --need;
    }
    // otherwise no optimal completion uses v; leave its edges to others
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- MDS / min dominators --------------------------------------------

struct DomSolver {
  const MaskGraph& mg;
  std::vector<int> cand;         // allowed vertices, ascending
  std::vector<Mask> suffix_cov;  // union of cnbr over cand[i..]
  Mask goal;

  DomSolver(const MaskGraph& m, Mask targets, Mask allowed,
            const std::vector<int>& order)
      : mg(m) {
    goal = m.all;  // "covered" includes non-targets from the start
    base_cover = m.all & ~targets;
    for (int v : order)
      if (allowed & (Mask(1) << v)) cand.push_back(v);
    suffix_cov.assign(cand.size() + 1, 0);
    for (int i = static_cast<int>(cand.size()) - 1; i >= 0; --i)
      suffix_cov[i] = suffix_cov[i + 1] | mg.cnbr[cand[i]];
  }

  Mask base_cover = 0;
  std::vector<int> found;

  bool rec(std::size_t start, int slots, Mask covered,
           std::vector<int>& chosen) {
    if (covered == goal) {
      found = chosen;
      return true;
    }
    if (slots == 0) return false;
    if ((covered | suffix_cov[start]) != goal) return false;
    for (std::size_t i = start; i < cand.size(); ++i) {
      if (static_cast<int>(cand.size() - i) < slots) break;
      int v = cand[i];
      chosen.push_back(v);
      if (rec(i + 1, slots - 1, covered | mg.cnbr[v], chosen)) return true;
      chosen.pop_back();
    }
    return false;
  }

  // Smallest k and its lex-min witness.
  std::vector<int> solve() {
    // greedy upper bound
    int ub = 0;
    {
      Mask covered = base_cover;
      while (covered != goal) {
        int bestv = -1, bestgain = -1;
        for (int v : cand) {
          int gain = popcnt(mg.cnbr[v] & ~covered);
          if (gain > bestgain) {
            bestgain = gain;
            bestv = v;
          }
        }
        if (bestv < 0 || bestgain == 0)
          throw std::invalid_argument("targets cannot be dominated");
        covered |= mg.cnbr[bestv];
        ++ub;
      }
    }
    for (int k = 0; k <= ub; ++k) {
      std::vector<int> chosen;
      if (rec(0, k, base_cover, chosen)) return found;
    }
    return found;  // unreachable: ub always succeeds
  }
};

Mask mask_of(const std::vector<int>& vs) {
  Mask m = 0;
  for (int v : vs) m |= Mask(1) << v;
  return m;
}

// Witness tie-breaks scan nodes in ID order so reports do not depend on
// internal index labeling.
std::vector<int> id_order(const PortGraph& g) {
  std::vector<int> order(g.n());
  for (int i = 0; i < g.n(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return g.id(a) < g.id(b); });
  return order;
}

}  // namespace

Solution exact_maxis(const PortGraph& g, const OracleGuard& guard) {
  check_guard(g, guard.maxis_max, "exact_maxis");
  MaskGraph mg(g);
  IsSolver s(mg);
  int alpha = s.optimum(mg.all);
  Solution sol;
  sol.problem = Problem::MaxIS;
  sol.vertices = lexmin_is_witness(mg, mg.all, alpha, id_order(g));
  return sol;
}

Solution exact_mvc(const PortGraph& g, const OracleGuard& guard) {
  check_guard(g, guard.mvc_max, "exact_mvc");
  MaskGraph mg(g);
  VcSolver s(mg);
  int tau = s.optimum(mg.all);
  Solution sol;
  sol.problem = Problem::MVC;
  sol.vertices = lexmin_vc_witness(mg, tau, id_order(g));
  return sol;
}

Solution exact_mds(const PortGraph& g, const OracleGuard& guard) {
  check_guard(g, guard.mds_max, "exact_mds");
  MaskGraph mg(g);
  DomSolver s(mg, mg.all, mg.all, id_order(g));
  Solution sol;
  sol.problem = Problem::MDS;
  sol.vertices = s.solve();
  std::sort(sol.vertices.begin(), sol.vertices.end());
  return sol;
}

// Candidate preference is the index order of `g`: callers that care about
// which minimum witness comes back arrange their node order accordingly.
std::vector<int> min_dominators(const PortGraph& g,
                                const std::vector<int>& targets,
                                const std::vector<int>& allowed) {
  if (g.n() > 64)
    throw OracleSizeError("min_dominators: graphs above 64 nodes unsupported");
  MaskGraph mg(g);
  std::vector<int> order(g.n());
  for (int i = 0; i < g.n(); ++i) order[i] = i;
  DomSolver s(mg, mask_of(targets), mask_of(allowed), order);
  return s.solve();
}

// ---- maximum matching (blossom contraction) ---------------------------

namespace {

struct Blossom {
  int n;
  std::vector<std::vector<int>> adj;
  std::vector<int> match, parent, base;
  std::vector<char> used, blossom;

  explicit Blossom(const PortGraph& g) : n(g.n()) {
    adj.resize(n);
    for (const auto& e : g.edges()) {
      adj[e[0]].push_back(e[1]);
      adj[e[1]].push_back(e[0]);
    }
    match.assign(n, -1);
  }

  int lca(int a, int b) {
    std::vector<char> seen(n, 0);
    for (;;) {
      a = base[a];
      seen[a] = 1;
      if (match[a] == -1) break;
      a = parent[match[a]];
    }
    for (;;) {
      b = base[b];
      if (seen[b]) return b;
      b = parent[match[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base[v] != b) {
      blossom[base[v]] = 1;
      blossom[base[match[v]]] = 1;
      parent[v] = child;
      child = match[v];
      v = parent[match[v]];
    }
  }

  int find_path(int root) {
    used.assign(n, 0);
    parent.assign(n, -1);
    base.resize(n);
    for (int i = 0; i < n; ++i) base[i] = i;
    used[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : adj[v]) {
        if (base[v] == base[to] || match[v] == to) continue;
        if (to == root || (match[to] != -1 && parent[match[to]] != -1)) {
          // odd cycle: contract the blossom
          int curbase = lca(v, to);
          blossom.assign(n, 0);
          mark_path(v, curbase, to);
          mark_path(to, curbase, v);
          for (int i = 0; i < n; ++i)
            if (blossom[base[i]]) {
              base[i] = curbase;
              if (!used[i]) {
                used[i] = 1;
                q.push(i);
              }
            }
        } else if (parent[to] == -1) {
          parent[to] = v;
          if (match[to] == -1) return to;  // augmenting path found
          used[match[to]] = 1;
          q.push(match[to]);
        }
      }
    }
    return -1;
  }

  void run() {
    for (int v = 0; v < n; ++v) {
      if (match[v] != -1) continue;
      int u = find_path(v);
      while (u != -1) {
        int pv = parent[u], ppv = match[pv];
        match[u] = pv;
        match[pv] = u;
        u = ppv;
      }
    }
  }
};

}  // namespace

Solution exact_maxm(const PortGraph& g) {
  Blossom b(g);
  b.run();
  Solution sol;
  sol.problem = Problem::MaxM;
  for (int v = 0; v < g.n(); ++v)
    if (b.match[v] > v) sol.edges.push_back({v, b.match[v]});
  std::sort(sol.edges.begin(), sol.edges.end());
  return sol;
}

Solution solve(Problem p, const PortGraph& g, const OracleGuard& guard) {
  switch (p) {
    case Problem::MVC: return exact_mvc(g, guard);
    case Problem::MDS: return exact_mds(g, guard);
    case Problem::MaxIS: return exact_maxis(g, guard);
    case Problem::MaxM: return exact_maxm(g);
  }
  throw std::invalid_argument("bad problem");
}

}  // namespace congest
