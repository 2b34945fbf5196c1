#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "congest/port_graph.hpp"
#include "congest/rng.hpp"

namespace congest {

// Initial knowledge handed to node programs.
//   KT0: own ID, own degree, port list 1..deg.
//   KT1: additionally the neighbor ID behind every port.
enum class Knowledge { KT0, KT1 };

struct Bandwidth {
  enum class Kind { Congest, Local };
  Kind kind = Kind::Congest;
  int congest_factor = 8;  // limit = factor * ceil(log2 n) bits

  static Bandwidth congest(int factor = 8) {
    return Bandwidth{Kind::Congest, factor};
  }
  static Bandwidth local() { return Bandwidth{Kind::Local, 0}; }

  // -1 means unbounded.
  long bit_limit(int n) const;
};

struct NodeInfo {
  std::uint64_t id = 0;
  int degree = 0;
  Knowledge knowledge = Knowledge::KT0;
  std::vector<std::uint64_t> neighbor_ids;  // by port; empty under KT0
};

struct Incoming {
  int port = 0;
  // The engine stamps every delivered message with the sender's ID: a node
  // learns who sits behind a port the first time it hears from them.
  std::uint64_t sender_id = 0;
  std::string payload;
};

struct NodeOutput {
  std::optional<bool> in_solution;
  std::optional<int> chosen_port;
  std::optional<std::uint64_t> chosen_neighbor;
  std::string note;  // free-form: status flags, encoded data
  bool operator==(const NodeOutput&) const = default;
  std::string encode() const;
};

// What to do after a step.  Any incoming message always wakes a sleeping
// (non-halted) node; `until` additionally schedules a wake at a fixed round.
// A halted node neither steps nor receives again.
struct Wake {
  enum class Kind { NextRound, OnMessage, OnMessageOrRound, Halt };
  Kind kind = Kind::NextRound;
  long round = 0;

  static Wake next() { return {Kind::NextRound, 0}; }
  static Wake on_message() { return {Kind::OnMessage, 0}; }
  static Wake until(long r) { return {Kind::OnMessageOrRound, r}; }
  static Wake halt() { return {Kind::Halt, 0}; }
};

class RoundCtx {
 public:
  long round() const { return round_; }
  const std::vector<Incoming>& inbox() const { return inbox_; }
  Rng& rng() { return *rng_; }

  // At most one message per port per round.
  void send(int port, std::string payload);

 private:
  friend struct EngineAccess;
  long round_ = 0;
  std::vector<Incoming> inbox_;
  Rng* rng_ = nullptr;
  std::vector<std::pair<int, std::string>>* outbox_ = nullptr;
  int degree_ = 0;
  std::vector<std::uint8_t>* port_used_ = nullptr;
};

class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual void init(const NodeInfo& info, Rng& rng) = 0;
  virtual Wake step(RoundCtx& ctx) = 0;
  virtual NodeOutput output() const = 0;
};

using ProgramFactory = std::function<std::unique_ptr<NodeProgram>()>;

struct SimConfig {
  Knowledge knowledge = Knowledge::KT0;
  Bandwidth bandwidth = Bandwidth::congest();
  std::uint64_t seed = 0;
  long round_cap = 1'000'000;
  bool record_trace = false;
};

struct TraceRecord {
  long round = 0;  // round in which the message was delivered
  std::uint64_t src_id = 0;
  int src_port = 0;
  std::uint64_t dst_id = 0;
  int dst_port = 0;
  std::string payload;
  bool operator==(const TraceRecord&) const = default;
};

struct SimResult {
  long rounds = 0;
  bool timed_out = false;
  std::uint64_t messages = 0;
  std::uint64_t bits = 0;
  std::vector<std::uint64_t> per_round_messages;  // index round-1
  std::vector<std::uint8_t> utilized;             // per edge index
  std::vector<NodeOutput> outputs;                // per node index
  std::vector<TraceRecord> trace;

  std::uint64_t utilized_count() const;
  static std::string csv_header();
  std::string csv_row() const;
  // JSON-lines, one record per delivered message (payload hex-encoded).
  std::string trace_jsonl() const;
};

class BandwidthViolation : public std::runtime_error {
 public:
  BandwidthViolation(std::uint64_t node_id, long round, int port,
                     long payload_bits, long limit_bits);
  std::uint64_t node_id;
  long round;
  int port;
};

// Executes the synchronous round loop: messages sent in round r are
// delivered in round r+1.  Deterministic for fixed inputs; per-node private
// seeds are derived from (cfg.seed, node ID).
SimResult run(const PortGraph& g, const ProgramFactory& make,
              const SimConfig& cfg);

// Runs `make` on g; if neither e nor e2 carried a message, re-runs on
// cross_edges(g, e, e2) and compares per-node outputs.
struct CrossingCheckReport {
  enum class Status { Pass, Fail, Vacuous } status;
  std::string detail;
  SimResult base;  // result on g
};

CrossingCheckReport run_pair_crossing_check(const PortGraph& g,
                                            const EdgeRef& e,
                                            const EdgeRef& e2,
                                            const ProgramFactory& make,
                                            const SimConfig& cfg);

}  // namespace congest
