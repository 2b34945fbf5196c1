#include "congest/sim.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "congest/bits.hpp"

namespace congest {

long Bandwidth::bit_limit(int n) const {
  if (kind == Kind::Local) return -1;
  return static_cast<long>(congest_factor) * bits_for(std::max(n, 2) - 1);
}

void RoundCtx::send(int port, std::string payload) {
  if (port < 1 || port > degree_)
    throw std::runtime_error("send: port out of range");
  if ((*port_used_)[port - 1])
    throw std::runtime_error("send: one message per port per round");
  (*port_used_)[port - 1] = 1;
  outbox_->emplace_back(port, std::move(payload));
}

std::string NodeOutput::encode() const {
  std::string s;
  s += in_solution ? (*in_solution ? "s1" : "s0") : "s-";
  s += ";p";
  s += chosen_port ? std::to_string(*chosen_port) : "-";
  s += ";n";
  s += chosen_neighbor ? std::to_string(*chosen_neighbor) : "-";
  s += ";";
  s += note;
  return s;
}

std::uint64_t SimResult::utilized_count() const {
  std::uint64_t c = 0;
  for (auto v : utilized) c += v;
  return c;
}

std::string SimResult::csv_header() {
  return "rounds,messages,bits,utilized_edges,timed_out";
}

std::string SimResult::csv_row() const {
  std::ostringstream os;
  os << rounds << ',' << messages << ',' << bits << ',' << utilized_count()
     << ',' << (timed_out ? 1 : 0);
  return os.str();
}

namespace {
std::string hex_encode(const std::string& s) {
  static const char* d = "0123456789abcdef";
  std::string out;
  out.reserve(s.size() * 2);
  for (unsigned char c : s) {
    out += d[c >> 4];
    out += d[c & 15];
  }
  return out;
}
}  // namespace

std::string SimResult::trace_jsonl() const {
  std::ostringstream os;
  for (const auto& t : trace)
    os << "{\"round\":" << t.round << ",\"src\":" << t.src_id
       << ",\"src_port\":" << t.src_port << ",\"dst\":" << t.dst_id
       << ",\"dst_port\":" << t.dst_port << ",\"payload\":\""
       << hex_encode(t.payload) << "\"}\n";
  return os.str();
}

BandwidthViolation::BandwidthViolation(std::uint64_t node_id_, long round_,
                                       int port_, long payload_bits,
                                       long limit_bits)
    : std::runtime_error("bandwidth violation: node " +
                         std::to_string(node_id_) + " round " +
                         std::to_string(round_) + " port " +
                         std::to_string(port_) + " sent " +
                         std::to_string(payload_bits) + " bits (limit " +
                         std::to_string(limit_bits) + ")"),
      node_id(node_id_),
      round(round_),
      port(port_) {}

struct EngineAccess {
  static void fill(RoundCtx& ctx, long round, std::vector<Incoming>&& inbox,
                   Rng* rng, std::vector<std::pair<int, std::string>>* outbox,
                   int degree, std::vector<std::uint8_t>* port_used) {
    ctx.round_ = round;
    ctx.inbox_ = std::move(inbox);
    ctx.rng_ = rng;
    ctx.outbox_ = outbox;
    ctx.degree_ = degree;
    ctx.port_used_ = port_used;
  }
};

namespace {

// A message of k payload bytes costs 8k bits; an empty payload still
// transmits one bit of signal.
inline std::uint64_t message_bits(const std::string& payload) {
  return payload.empty() ? 1 : 8 * payload.size();
}

struct NodeState {
  std::unique_ptr<NodeProgram> program;
  std::unique_ptr<Rng> rng;
  Wake wake = Wake::next();
  std::vector<Incoming> inbox;
};

}  // namespace

SimResult run(const PortGraph& g, const ProgramFactory& make,
              const SimConfig& cfg) {
  const int n = g.n();
  if (cfg.round_cap < 1) throw std::invalid_argument("round cap must be >= 1");
  const long limit = cfg.bandwidth.bit_limit(n);

  std::vector<NodeState> nodes(n);
  for (int u = 0; u < n; ++u) {
    NodeInfo info;
    info.id = g.id(u);
    info.degree = g.degree(u);
    info.knowledge = cfg.knowledge;
    if (cfg.knowledge == Knowledge::KT1) {
      info.neighbor_ids.resize(g.degree(u));
      for (int p = 1; p <= g.degree(u); ++p)
        info.neighbor_ids[p - 1] = g.id(g.at(u, p).neighbor);
    }
    nodes[u].program = make();
    nodes[u].rng = std::make_unique<Rng>(derive_seed(cfg.seed, g.id(u)));
    nodes[u].program->init(info, *nodes[u].rng);
  }

  SimResult res;
  res.utilized.assign(g.m(), 0);

  // Event-driven round loop: only nodes with something to do are stepped,
  // and rounds in which nothing happens are skipped outright.  `agenda`
  // holds this round's steppers; `sched` holds future timed wakes (lazily
  // invalidated); message deliveries always wake the receiver next round.
  long round = 0;
  std::vector<int> agenda, next_agenda;
  std::vector<long> enqueued(n, 0);
  std::priority_queue<std::pair<long, int>, std::vector<std::pair<long, int>>,
                      std::greater<>>
      sched;
  for (int u = 0; u < n; ++u) {
    agenda.push_back(u);
    enqueued[u] = 1;
  }
  long agenda_round = 1;

  std::vector<std::pair<int, std::string>> outbox;
  std::vector<std::uint8_t> port_used;
  struct Delivery {
    int dst;
    Incoming msg;
  };
  std::vector<Delivery> deliveries;

  while (!agenda.empty()) {
    if (agenda_round > cfg.round_cap) {
      res.timed_out = true;
      round = cfg.round_cap;
      break;
    }
    round = agenda_round;
    deliveries.clear();

    for (int u : agenda) {
      NodeState& st = nodes[u];
      if (st.wake.kind == Wake::Kind::Halt) continue;

      RoundCtx ctx;
      outbox.clear();
      port_used.assign(g.degree(u), 0);
      EngineAccess::fill(ctx, round, std::move(st.inbox), st.rng.get(),
                         &outbox, g.degree(u), &port_used);
      st.inbox.clear();

      try {
        st.wake = st.program->step(ctx);
      } catch (const BandwidthViolation&) {
        throw;
      } catch (const std::exception& ex) {
        throw std::runtime_error("node " + std::to_string(g.id(u)) +
                                 " round " + std::to_string(round) + ": " +
                                 ex.what());
      }

      for (auto& [port, payload] : outbox) {
        if (limit >= 0 && static_cast<long>(message_bits(payload)) > limit)
          throw BandwidthViolation(g.id(u), round, port,
                                   static_cast<long>(message_bits(payload)),
                                   limit);
        const auto& h = g.at(u, port);
        res.messages += 1;
        res.bits += message_bits(payload);
        if (static_cast<long>(res.per_round_messages.size()) < round)
          res.per_round_messages.resize(round, 0);
        res.per_round_messages[round - 1] += 1;
        res.utilized[g.edge_index(u, h.neighbor)] = 1;
        if (cfg.record_trace)
          res.trace.push_back({round + 1, g.id(u), port, g.id(h.neighbor),
                               h.their_port, payload});
        deliveries.push_back(
            {h.neighbor, Incoming{h.their_port, g.id(u), std::move(payload)}});
      }
    }

    next_agenda.clear();
    auto enqueue = [&](int u) {
      if (enqueued[u] != round + 1) {
        enqueued[u] = round + 1;
        next_agenda.push_back(u);
      }
    };
    for (int u : agenda)
      if (nodes[u].wake.kind == Wake::Kind::NextRound) enqueue(u);
    for (auto& d : deliveries) {
      NodeState& st = nodes[d.dst];
      if (st.wake.kind == Wake::Kind::Halt) continue;  // dropped
      st.inbox.push_back(std::move(d.msg));
      enqueue(d.dst);
    }
    for (int u : agenda) {
      const Wake& w = nodes[u].wake;
      if (w.kind == Wake::Kind::OnMessageOrRound)
        sched.emplace(std::max(w.round, round + 1), u);
    }

    if (!next_agenda.empty()) {
      agenda_round = round + 1;
    } else {
      // idle: jump to the earliest valid timed wake
      agenda_round = -1;
      while (!sched.empty()) {
        auto [r, u] = sched.top();
        const Wake& w = nodes[u].wake;
        if (w.kind != Wake::Kind::OnMessageOrRound ||
            std::max(w.round, static_cast<long>(1)) > r ||
            enqueued[u] == r) {
          sched.pop();
          continue;
        }
        agenda_round = r;
        break;
      }
      if (agenda_round < 0) break;  // all quiet: done
    }
    // pull timed wakes due exactly at the chosen round
    while (!sched.empty() && sched.top().first <= agenda_round) {
      auto [r, u] = sched.top();
      sched.pop();
      const Wake& w = nodes[u].wake;
      if (w.kind != Wake::Kind::OnMessageOrRound) continue;
      if (enqueued[u] == agenda_round) continue;
      if (std::max(w.round, static_cast<long>(1)) <= agenda_round) {
        enqueued[u] = agenda_round;
        next_agenda.push_back(u);
      }
    }
    agenda.swap(next_agenda);
  }

  res.rounds = round;
  res.outputs.resize(n);
  for (int u = 0; u < n; ++u) res.outputs[u] = nodes[u].program->output();
  return res;
}

CrossingCheckReport run_pair_crossing_check(const PortGraph& g,
                                            const EdgeRef& e,
                                            const EdgeRef& e2,
                                            const ProgramFactory& make,
                                            const SimConfig& cfg) {
  CrossingCheckReport rep;
  rep.base = run(g, make, cfg);
  long ie = g.edge_index(e.u, e.v);
  long ie2 = g.edge_index(e2.u, e2.v);
  if (ie < 0 || ie2 < 0) throw std::invalid_argument("edge not in graph");
  if (rep.base.utilized[ie] || rep.base.utilized[ie2]) {
    rep.status = CrossingCheckReport::Status::Vacuous;
    rep.detail = "traffic on a crossed edge";
    return rep;
  }
  PortGraph crossed = cross_edges(g, e, e2);
  SimResult other = run(crossed, make, cfg);
  for (int u = 0; u < g.n(); ++u) {
    if (!(rep.base.outputs[u] == other.outputs[u])) {
      rep.status = CrossingCheckReport::Status::Fail;
      rep.detail = "output mismatch at node id " + std::to_string(g.id(u));
      return rep;
    }
  }
  rep.status = CrossingCheckReport::Status::Pass;
  return rep;
}

}  // namespace congest
