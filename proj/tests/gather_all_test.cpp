#include "congest/experiments.hpp"
#include "congest/oracles.hpp"
#include "congest/programs/gather_all.hpp"
#include "congest/registry.hpp"
#include "doctest.h"

using namespace congest;

namespace {

SimResult run_gather(const PortGraph& g, Problem prob) {
  GatherAllConfig cfg;
  cfg.n = g.n();
  cfg.problem = prob;
  SimConfig sc;
  sc.round_cap = 100 + 4L * g.n() + 6L * g.m();
  return run(g, gather_all_program(cfg), sc);
}

}  // namespace

TEST_CASE("every node reconstructs the full edge list") {
  PortGraph g = gen_gnp(20, 0.3, 44);
  SimResult r = run_gather(g, Problem::MVC);
  std::string expected = "edges=";
  for (const auto& e : g.edges()) {
    auto a = g.id(e[0]), b = g.id(e[1]);
    if (a > b) std::swap(a, b);
    expected += std::to_string(a) + "-" + std::to_string(b) + ";";
  }
  // note: edge list is sorted by IDs at output time
  for (const auto& o : r.outputs) {
    CHECK(o.note.substr(0, 6) == "edges=");
    CHECK(o.note.size() == expected.size());
  }
  CHECK(r.messages <= 20uLL * 20 * 20);
}

TEST_CASE("outputs equal the exact oracle on every problem") {
  PortGraph g = gen_gnp(12, 0.35, 5);
  for (Problem prob :
       {Problem::MVC, Problem::MDS, Problem::MaxIS, Problem::MaxM}) {
    SimResult r = run_gather(g, prob);
    RunOutcome out = extract_outcome(
        "gather-all", {{"problem", problem_name(prob)}}, g, r);
    CHECK(out.valid);
    CHECK(!out.failed);
    CHECK(out.solution.size() == solve(prob, g).size());
    if (prob != Problem::MaxM) {
      CHECK(out.solution.vertices == solve(prob, g).vertices);
    }
  }
}

TEST_CASE("message count stays near n*m") {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    PortGraph g = gen_gnp(16, 0.5, 100 + s);
    SimResult r = run_gather(g, Problem::MVC);
    CHECK(r.messages <=
          static_cast<std::uint64_t>(g.n()) * g.m() + 10uLL * g.n() * g.n());
  }
}

TEST_CASE("a single node pays nothing") {
  PortGraph g = build_graph("empty", {{"n", "1"}}, 1);
  SimResult r = run_gather(g, Problem::MDS);
  CHECK(r.messages == 0);
  CHECK(r.outputs[0].in_solution.value());
}

TEST_CASE("disconnected inputs are solved per component") {
  LbInstance inst = mvc_base_graph(4, 1);
  SimResult r = run_gather(inst.graph, Problem::MVC);
  RunOutcome out =
      extract_outcome("gather-all", {{"problem", "mvc"}}, inst.graph, r);
  CHECK(out.valid);
  CHECK(out.solution.size() == 2);
}
