#include <sstream>

#include "congest/graph_io.hpp"
#include "congest/lb_graphs.hpp"
#include "congest/programs/basic.hpp"
#include "congest/sim.hpp"
#include "doctest.h"

using namespace congest;

namespace {

std::string fingerprint(const SimResult& r) {
  std::ostringstream os;
  os << r.csv_row() << '|' << r.rounds;
  for (const auto& o : r.outputs) os << '|' << o.encode();
  for (auto v : r.per_round_messages) os << ' ' << v;
  os << '|' << r.trace_jsonl();
  return os.str();
}

// sends own ID (as bytes) everywhere in round 1, echoes digest of inbox
struct IdTattler final : NodeProgram {
  std::uint64_t id_ = 0;
  int degree_ = 0;
  std::uint64_t digest_ = 0;
  void init(const NodeInfo& info, Rng&) override {
    id_ = info.id;
    degree_ = info.degree;
  }
  Wake step(RoundCtx& ctx) override {
    for (const auto& in : ctx.inbox())
      digest_ = digest_ * 1099511628211ULL + in.sender_id + in.port;
    if (ctx.round() == 1) {
      for (int p = 1; p <= degree_; ++p)
        ctx.send(p, std::string(1, static_cast<char>(id_ & 0x7f)));
      return Wake::next();
    }
    return Wake::halt();
  }
  NodeOutput output() const override {
    NodeOutput o;
    o.note = std::to_string(digest_);
    return o;
  }
};

struct Oversender final : NodeProgram {
  int degree_ = 0;
  void init(const NodeInfo& info, Rng&) override { degree_ = info.degree; }
  Wake step(RoundCtx& ctx) override {
    if (degree_ > 0) ctx.send(1, std::string(1000, 'x'));
    return Wake::halt();
  }
  NodeOutput output() const override { return {}; }
};

struct NeverHalts final : NodeProgram {
  void init(const NodeInfo&, Rng&) override {}
  Wake step(RoundCtx&) override { return Wake::next(); }
  NodeOutput output() const override { return {}; }
};

}  // namespace

TEST_CASE("silent program: zero messages, one round") {
  PortGraph g = gen_gnp(10, 0.5, 1);
  SimResult r = run(g, silent_program(), {});
  CHECK(r.messages == 0);
  CHECK(r.bits == 0);
  CHECK(r.rounds == 1);
  CHECK(!r.timed_out);
  CHECK(r.utilized_count() == 0);
}

TEST_CASE("one-bit flood on K3 sends six messages in round 1") {
  PortGraph k3 = PortGraph::build({1, 2, 3}, {{0, 1}, {1, 2}, {0, 2}});
  SimResult r = run(k3, flood_one_bit_program(), {});
  CHECK(r.messages == 6);
  CHECK(r.per_round_messages.at(0) == 6);
  CHECK(r.bits == 6);  // empty payload costs one bit
  CHECK(r.utilized_count() == 3);
  for (const auto& o : r.outputs) CHECK(o.note == "recv=2");
}

TEST_CASE("identical runs are bit-identical including the trace") {
  PortGraph g = gen_gnp(20, 0.3, 4);
  SimConfig cfg;
  cfg.seed = 17;
  cfg.record_trace = true;
  std::string first =
      fingerprint(run(g, random_fsm_program(5, 4, 3), cfg));
  for (int i = 0; i < 5; ++i)
    CHECK(fingerprint(run(g, random_fsm_program(5, 4, 3), cfg)) == first);
}

TEST_CASE("KT0 round-1 behavior ignores neighbor identities") {
  // same structure, same IDs at a fixed node, different neighbor IDs
  std::vector<std::pair<int, int>> edges = {{0, 1}, {0, 2}, {0, 3}, {2, 3},
                                            {1, 4}, {3, 4}};
  PortGraph g1 = PortGraph::build({7, 1, 2, 3, 4}, edges);
  PortGraph g2 = PortGraph::build({7, 4, 3, 1, 2}, edges);
  SimConfig cfg;
  cfg.seed = 5;
  cfg.record_trace = true;
  SimResult r1 = run(g1, random_fsm_program(9, 3, 2), cfg);
  SimResult r2 = run(g2, random_fsm_program(9, 3, 2), cfg);
  auto round1_sends = [&](const SimResult& r) {
    std::ostringstream os;
    for (const auto& t : r.trace)
      if (t.round == 2 && t.src_id == 7)
        os << t.src_port << ':' << t.payload << ';';
    return os.str();
  };
  CHECK(round1_sends(r1) == round1_sends(r2));
}

TEST_CASE("KT1 exposes neighbor IDs by port") {
  struct Probe final : NodeProgram {
    NodeInfo info_;
    void init(const NodeInfo& info, Rng&) override { info_ = info; }
    Wake step(RoundCtx&) override { return Wake::halt(); }
    NodeOutput output() const override {
      NodeOutput o;
      for (auto id : info_.neighbor_ids) o.note += std::to_string(id) + ",";
      return o;
    }
  };
  PortGraph g = PortGraph::build({5, 6, 7}, {{0, 1}, {0, 2}});
  SimConfig cfg;
  cfg.knowledge = Knowledge::KT1;
  SimResult r = run(
      g, [] { return std::make_unique<Probe>(); }, cfg);
  CHECK(r.outputs[0].note == "6,7,");
  SimConfig kt0;
  SimResult r0 = run(
      g, [] { return std::make_unique<Probe>(); }, kt0);
  CHECK(r0.outputs[0].note.empty());
}

TEST_CASE("engine stamps sender IDs on delivery") {
  PortGraph g = PortGraph::build({3, 9}, {{0, 1}});
  SimResult r = run(
      g, [] { return std::make_unique<IdTattler>(); }, {});
  CHECK(r.outputs[0].note != "0");
  CHECK(r.outputs[1].note != "0");
}

TEST_CASE("CONGEST bandwidth violations name node, round and port") {
  PortGraph g = PortGraph::build({1, 2}, {{0, 1}});
  try {
    run(g, [] { return std::make_unique<Oversender>(); }, {});
    FAIL("expected a bandwidth violation");
  } catch (const BandwidthViolation& ex) {
    CHECK(ex.round == 1);
    CHECK(ex.port == 1);
    std::string what = ex.what();
    CHECK(what.find("node") != std::string::npos);
  }
  SimConfig local;
  local.bandwidth = Bandwidth::local();
  CHECK_NOTHROW(run(g, [] { return std::make_unique<Oversender>(); }, local));
}

TEST_CASE("non-halting programs time out at the round cap") {
  PortGraph g = gen_gnp(4, 1.0, 1);
  SimConfig cfg;
  cfg.round_cap = 50;
  SimResult r = run(
      g, [] { return std::make_unique<NeverHalts>(); }, cfg);
  CHECK(r.timed_out);
  CHECK(r.rounds == 50);
}

TEST_CASE("accounting invariants") {
  PortGraph g = gen_gnp(24, 0.3, 9);
  SimResult r = run(g, random_fsm_program(3, 5, 3), {});
  CHECK(r.bits >= r.messages);
  CHECK(r.utilized_count() <= r.messages);
  std::uint64_t sum = 0;
  for (auto v : r.per_round_messages) sum += v;
  CHECK(sum == r.messages);
}

TEST_CASE("crossing check: silent programs always pass") {
  PortGraph g = gen_gnp(12, 0.5, 2);
  for (const auto& a : g.edges())
    for (const auto& b : g.edges()) {
      int u = a[0], v = a[1], u2 = b[0], v2 = b[1];
      if (u == u2 || u == v2 || v == u2 || v == v2) continue;
      if (g.has_edge(u, u2) || g.has_edge(v, v2)) continue;
      auto rep = run_pair_crossing_check(g, EdgeRef::of(g, u, v),
                                         EdgeRef::of(g, u2, v2),
                                         silent_program(), {});
      CHECK(rep.status == CrossingCheckReport::Status::Pass);
      return;
    }
  FAIL("no eligible pair");
}

TEST_CASE("crossing check: flooding programs are vacuous") {
  PortGraph g = gen_gnp(12, 0.5, 2);
  for (const auto& a : g.edges())
    for (const auto& b : g.edges()) {
      int u = a[0], v = a[1], u2 = b[0], v2 = b[1];
      if (u == u2 || u == v2 || v == u2 || v == v2) continue;
      if (g.has_edge(u, u2) || g.has_edge(v, v2)) continue;
      auto rep = run_pair_crossing_check(g, EdgeRef::of(g, u, v),
                                         EdgeRef::of(g, u2, v2),
                                         flood_one_bit_program(), {});
      CHECK(rep.status == CrossingCheckReport::Status::Vacuous);
      return;
    }
  FAIL("no eligible pair");
}

TEST_CASE("trace dump format is JSON lines with hex payloads") {
  PortGraph g = PortGraph::build({1, 2}, {{0, 1}});
  SimConfig cfg;
  cfg.record_trace = true;
  SimResult r = run(
      g, [] { return std::make_unique<IdTattler>(); }, cfg);
  std::string dump = r.trace_jsonl();
  CHECK(dump.find("\"round\":2") != std::string::npos);
  CHECK(dump.find("\"src\":1") != std::string::npos);
  CHECK(dump.find("\"payload\":\"01\"") != std::string::npos);
  CHECK(SimResult::csv_header() ==
        "rounds,messages,bits,utilized_edges,timed_out");
}
