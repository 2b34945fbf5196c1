#include <cmath>

#include "congest/experiments.hpp"
#include "congest/oracles.hpp"
#include "congest/programs/matching.hpp"
#include "congest/registry.hpp"
#include "doctest.h"

using namespace congest;

namespace {

SimResult run_propose(const PortGraph& g, double alpha, std::uint64_t seed) {
  ProposeMatchingConfig cfg;
  cfg.alpha = alpha;
  SimConfig sc;
  sc.seed = seed;
  sc.round_cap = 8;
  return run(g, propose_matching_program(cfg), sc);
}

}  // namespace

TEST_CASE("single-edge proposals match unless both stay silent") {
  PortGraph k2 = PortGraph::build({1, 2}, {{0, 1}});
  const int trials = 2000;
  int matched = 0;
  for (int s = 1; s <= trials; ++s) {
    SimResult r = run_propose(k2, 0.5, s);
    auto edges = matching_from_outputs(k2, r.outputs);
    REQUIRE(edges.has_value());
    CHECK(edges->size() <= 1);
    matched += edges->empty() ? 0 : 1;
  }
  // matched with probability 3/4: all outcomes except double silence
  double freq = static_cast<double>(matched) / trials;
  double sigma = std::sqrt(0.75 * 0.25 / trials);
  CHECK(std::abs(freq - 0.75) <= 3 * sigma);
}

TEST_CASE("expected size on a cubic graph meets the degree-ratio bound") {
  PortGraph g = build_graph("circulant", {{"n", "16"}, {"offsets", "1+8"}}, 1);
  REQUIRE(g.min_degree() == 3);
  REQUIRE(g.max_degree() == 3);
  const int trials = 2000;
  long total = 0;
  for (int s = 1; s <= trials; ++s) {
    SimResult r = run_propose(g, 0.5, s);
    auto edges = matching_from_outputs(g, r.outputs);
    REQUIRE(edges.has_value());
    CHECK(solution_valid(g, Solution{Problem::MaxM, {}, *edges}));
    total += static_cast<long>(edges->size());
  }
  double mean = static_cast<double>(total) / trials;
  CHECK(mean >= 16.0 / 8.0);  // n / (8 r^2) with r = 1, well below the mean
}

TEST_CASE("silent limit produces the empty matching") {
  PortGraph g = gen_gnp(20, 0.4, 3);
  SimResult r = run_propose(g, 0.0, 1);
  auto edges = matching_from_outputs(g, r.outputs);
  REQUIRE(edges.has_value());
  CHECK(edges->empty());
  CHECK(r.messages == 0);
}

TEST_CASE("round and message budgets") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    PortGraph g = gen_gnp(40, 0.2, s);
    SimResult r = run_propose(g, 0.5, s);
    CHECK(r.rounds <= 3);
    CHECK(r.messages <= 2u * 40);
    auto edges = matching_from_outputs(g, r.outputs);
    REQUIRE(edges.has_value());
    CHECK(solution_valid(g, Solution{Problem::MaxM, {}, *edges}));
  }
}

TEST_CASE("degree-exchange mode estimates alpha locally") {
  PortGraph g = gen_gnp(40, 0.3, 6);
  ProposeMatchingConfig cfg;
  cfg.estimate_degrees = true;
  SimConfig sc;
  sc.seed = 4;
  SimResult r = run(g, propose_matching_program(cfg), sc);
  CHECK(r.rounds <= 4);
  CHECK(r.messages <= 3u * 40);  // degree round + proposals + accepts
  auto edges = matching_from_outputs(g, r.outputs);
  REQUIRE(edges.has_value());
  CHECK(solution_valid(g, Solution{Problem::MaxM, {}, *edges}));
}

TEST_CASE("path walker finds a Hamilton cycle of the complete graph") {
  PortGraph k4 = build_graph("complete", {{"n", "4"}}, 1);
  RotationMatchingConfig cfg;
  cfg.n = 4;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    SimConfig sc;
    sc.seed = s;
    sc.round_cap = 100000;
    SimResult r = run(k4, rotation_matching_program(cfg), sc);
    auto edges = matching_from_outputs(k4, r.outputs);
    REQUIRE(edges.has_value());
    CHECK(edges->size() == 2);
    CHECK(solution_valid(k4, Solution{Problem::MaxM, {}, *edges}));
  }
}

TEST_CASE("near-perfect matchings on odd random graphs") {
  const int n = 51;
  const double p = std::min(1.0, 40.0 * std::log(n) / n);
  PortGraph g = gen_gnp(n, p, 12);
  RotationMatchingConfig cfg;
  cfg.n = n;
  SimConfig sc;
  sc.seed = 3;
  sc.round_cap = 20 * cfg.step_budget() * 4;
  SimResult r = run(g, rotation_matching_program(cfg), sc);
  auto edges = matching_from_outputs(g, r.outputs);
  REQUIRE(edges.has_value());
  CHECK(edges->size() == (n - 1) / 2);
}

TEST_CASE("walker failures are flagged, outputs stay a valid matching") {
  // an adversarially tiny budget forces the failure path
  PortGraph g = gen_gnp(64, 0.3, 5);
  RotationMatchingConfig cfg;
  cfg.n = 64;
  cfg.budget_factor = 0.01;
  SimConfig sc;
  sc.seed = 1;
  sc.round_cap = 100000;
  SimResult r = run(g, rotation_matching_program(cfg), sc);
  RunOutcome out = extract_outcome("rotation-matching", {}, g, r);
  CHECK(out.failed);
  CHECK(out.solution.edges.empty());
}

TEST_CASE("tiny cases: one and two nodes") {
  PortGraph single = build_graph("empty", {{"n", "1"}}, 1);
  RotationMatchingConfig c1;
  c1.n = 1;
  SimResult r1 = run(single, rotation_matching_program(c1), {});
  CHECK(r1.messages == 0);
  PortGraph pair = PortGraph::build({1, 2}, {{0, 1}});
  RotationMatchingConfig c2;
  c2.n = 2;
  SimConfig sc2;
  sc2.bandwidth = Bandwidth::congest(16);  // the token outgrows log2(2) bits
  SimResult r2 = run(pair, rotation_matching_program(c2), sc2);
  auto edges = matching_from_outputs(pair, r2.outputs);
  REQUIRE(edges.has_value());
  CHECK(edges->size() == 1);
}
