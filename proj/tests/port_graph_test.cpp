#include <cmath>
#include <set>

#include "congest/graph_io.hpp"
#include "congest/lb_graphs.hpp"
#include "congest/port_graph.hpp"
#include "doctest.h"

using namespace congest;

namespace {

PortGraph cycle4() {
  return PortGraph::build({1, 2, 3, 4}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

}  // namespace

TEST_CASE("gen_gnp with p=1 yields the complete graph") {
  PortGraph g = gen_gnp(5, 1.0, 99);
  CHECK(g.n() == 5);
  CHECK(g.m() == 10);
  g.validate();
}

TEST_CASE("gen_gnp parameter errors") {
  CHECK_THROWS_AS(gen_gnp(5, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_gnp(5, -0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_gnp(5, 1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_gnp(0, 0.5, 1), std::invalid_argument);
  CHECK(gen_gnp(1, 0.5, 1).n() == 1);  // single node, no edges
}

TEST_CASE("gen_gnp edge count concentrates around its expectation") {
  const int n = 1024;
  const double p = 40.0 * std::log(n) / n;
  const double expect = p * n * (n - 1) / 2.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    PortGraph g = gen_gnp(n, p, seed);
    CHECK(g.m() >= 0.9 * expect);
    CHECK(g.m() <= 1.1 * expect);
  }
}

TEST_CASE("gen_gnp is deterministic per seed") {
  PortGraph a = gen_gnp(64, 0.23, 7);
  PortGraph b = gen_gnp(64, 0.23, 7);
  CHECK(write_graph(a) == write_graph(b));
  PortGraph c = gen_gnp(64, 0.23, 8);
  CHECK(write_graph(a) != write_graph(c));
}

TEST_CASE("assign_ids keeps structure and is deterministic") {
  PortGraph g = gen_gnp(30, 0.3, 5);
  PortGraph a = assign_ids(g, 11);
  PortGraph b = assign_ids(g, 11);
  CHECK(write_graph(a) == write_graph(b));
  CHECK(a.edges() == g.edges());
  std::set<std::uint64_t> ids(a.ids().begin(), a.ids().end());
  CHECK(ids.size() == 30);
  CHECK(*ids.begin() == 1);
  CHECK(*ids.rbegin() == 30);
}

TEST_CASE("assign_ids draws a uniform permutation") {
  // node 0 receives ID 1 with frequency 1/n over seeds
  const int n = 100, trials = 2000;
  int hits = 0;
  for (int s = 1; s <= trials; ++s)
    if (assign_ids(gen_gnp(n, 0.02, 1), s).id(0) == 1) ++hits;
  double freq = static_cast<double>(hits) / trials;
  double sigma = std::sqrt((1.0 / n) * (1.0 - 1.0 / n) / trials);
  CHECK(std::abs(freq - 1.0 / n) <= 3 * sigma + 1e-12);
}

TEST_CASE("assign_ids supports a larger ID universe") {
  PortGraph g = assign_ids(gen_gnp(20, 0.3, 5), 3, 20uLL * 20 * 20);
  std::set<std::uint64_t> seen;
  for (int u = 0; u < g.n(); ++u) {
    CHECK(g.id(u) >= 1);
    CHECK(g.id(u) <= 8000);
    seen.insert(g.id(u));
  }
  CHECK(seen.size() == 20);
}

TEST_CASE("assign_ports keeps port symmetry and degree-1 ports fixed") {
  PortGraph star = PortGraph::build({1, 2, 3, 4, 5},
                                    {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  for (std::uint64_t s = 1; s <= 40; ++s) {
    PortGraph g = assign_ports(star, s);
    g.validate();
    for (int leaf = 1; leaf <= 4; ++leaf) CHECK(g.degree(leaf) == 1);
  }
}

TEST_CASE("assign_ports draws uniform permutations") {
  // in K_{1,4}, a fixed leaf ends up on center port 1 with frequency 1/4
  PortGraph star = PortGraph::build({1, 2, 3, 4, 5},
                                    {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const int trials = 2000;
  int hits = 0;
  for (int s = 1; s <= trials; ++s)
    if (assign_ports(star, s).at(0, 1).neighbor == 1) ++hits;
  double freq = static_cast<double>(hits) / trials;
  double sigma = std::sqrt(0.25 * 0.75 / trials);
  CHECK(std::abs(freq - 0.25) <= 3 * sigma);
}

TEST_CASE("cross_edges on a 4-cycle preserves degrees") {
  PortGraph g = cycle4();
  EdgeRef e = EdgeRef::of(g, 0, 1);   // {a,b}
  EdgeRef e2 = EdgeRef::of(g, 2, 3);  // {c,d}
  PortGraph crossed = cross_edges(g, e, e2);
  CHECK(crossed.has_edge(0, 2));
  CHECK(crossed.has_edge(1, 3));
  CHECK(!crossed.has_edge(0, 1));
  for (int u = 0; u < 4; ++u) CHECK(crossed.degree(u) == 2);
  // ports at the four endpoints are preserved
  CHECK(crossed.port_towards(0, 2) == e.pu);
  CHECK(crossed.port_towards(2, 0) == e2.pu);
  CHECK(crossed.port_towards(1, 3) == e.pv);
  CHECK(crossed.port_towards(3, 1) == e2.pv);
}

TEST_CASE("crossing twice with swapped pairing restores the edge set") {
  PortGraph g = gen_gnp(16, 0.4, 3);
  // find an eligible pair
  for (const auto& a : g.edges()) {
    for (const auto& b : g.edges()) {
      int u = a[0], v = a[1], u2 = b[0], v2 = b[1];
      if (u == u2 || u == v2 || v == u2 || v == v2) continue;
      if (g.has_edge(u, u2) || g.has_edge(v, v2)) continue;
      PortGraph once = cross_edges(g, EdgeRef::of(g, u, v),
                                   EdgeRef::of(g, u2, v2));
      PortGraph twice = cross_edges(once, EdgeRef::of(once, u, u2),
                                    EdgeRef::of(once, v, v2));
      CHECK(twice.same_edge_set(g));
      return;
    }
  }
  FAIL("no eligible crossing pair found");
}

TEST_CASE("cross_edges rejects shared endpoints and parallel results") {
  PortGraph g = cycle4();
  CHECK_THROWS_AS(cross_edges(g, EdgeRef::of(g, 0, 1), EdgeRef::of(g, 1, 2)),
                  std::invalid_argument);
  PortGraph p5 = PortGraph::build({1, 2, 3, 4, 5},
                                  {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 2}});
  // crossing {0,1} with {2,3} would recreate existing edge {0,2}
  CHECK_THROWS_AS(cross_edges(p5, EdgeRef::of(p5, 0, 1),
                              EdgeRef::of(p5, 2, 3)),
                  std::invalid_argument);
}

TEST_CASE("crossing a fixed member lands back in the same family") {
  LbInstance inst = mds_fixed_member(4);
  const int n = 4;
  EdgeRef e = EdgeRef::of(inst.graph, 0, n + 1);  // a1^1 - a2^2
  auto partners = eligible_crossings(inst, e);
  REQUIRE(!partners.empty());
  PortGraph crossed = cross_edges(inst.graph, e, partners.front());
  // recover the flipped bit-vector from the crossed A-side edges
  std::vector<std::uint8_t> x2(16, 0);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (crossed.has_edge(i - 1, n + j - 1)) x2[(i - 1) * n + (j - 1)] = 1;
  LbInstance regen = mds_crossing_graph(n, x2, inst.y);
  CHECK(regen.graph.same_edge_set(crossed));
}

TEST_CASE("gnp degree bounds hold with rare exceptions") {
  const int n = 1024;
  const double p = 16.0 * std::log(n) / n;
  int failures = 0;
  for (std::uint64_t s = 1; s <= 100; ++s) {
    PortGraph g = gen_gnp(n, p, s);
    bool ok = g.min_degree() >= n * p / 4 &&
              g.max_degree() <= std::max(5 * n * p, 12 * std::log(n));
    if (!ok) ++failures;
  }
  CHECK(failures <= 5);
}

TEST_CASE("validate catches corrupted structures") {
  CHECK_THROWS(PortGraph::build({1, 1}, {{0, 1}}));      // duplicate IDs
  CHECK_THROWS(PortGraph::build({1, 2}, {{0, 0}}));      // self loop
  CHECK_THROWS(PortGraph::build({1, 2}, {{0, 1}, {1, 0}}));  // parallel
}
