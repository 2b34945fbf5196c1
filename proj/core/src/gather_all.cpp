#include "congest/programs/gather_all.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "congest/bits.hpp"

namespace congest {

namespace {

enum Tag : int { kRace = 0, kAdopt = 1, kRecord = 2, kCount = 3, kUpDone = 4 };

struct Gather final : NodeProgram {
  explicit Gather(const GatherAllConfig& cfg) : cfg_(cfg) {
    if (cfg_.id_max == 0) cfg_.id_max = static_cast<std::uint64_t>(cfg_.n);
    id_bits_ = bits_for(cfg_.id_max);
    dist_bits_ = bits_for(static_cast<std::uint64_t>(cfg_.n));
    count_bits_ = bits_for(static_cast<std::uint64_t>(cfg_.n) *
                           static_cast<std::uint64_t>(cfg_.n));
  }

  GatherAllConfig cfg_;
  int id_bits_, dist_bits_, count_bits_;

  std::uint64_t my_id_ = 0;
  int degree_ = 0;
  std::vector<std::uint64_t> nbr_id_;  // by port, 0 until learned
  std::uint64_t best_root_ = 0;
  long best_dist_ = 0;
  int parent_port_ = 0;
  bool announce_pending_ = false;
  std::vector<int> children_;
  bool is_leader_ = false;

  std::deque<std::pair<std::uint64_t, std::uint64_t>> upq_;
  std::size_t children_done_ = 0;
  bool up_done_sent_ = false;
  bool bcast_started_ = false;

  long m_total_ = -1;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edge_list_;
  std::deque<std::string> fwdq_;  // raw payloads to relay downward

  NodeOutput out_;

  long adopt_round() const { return cfg_.n + 4; }

  void init(const NodeInfo& info, Rng&) override {
    my_id_ = info.id;
    degree_ = info.degree;
    nbr_id_.assign(degree_, 0);
    best_root_ = my_id_;
    best_dist_ = 0;
  }

  std::string race_msg() const {
    BitWriter w;
    w.put(kRace, 3);
    w.put(best_root_, id_bits_);
    w.put(static_cast<std::uint64_t>(best_dist_), dist_bits_);
    return w.take();
  }

  std::string record_msg(std::uint64_t a, std::uint64_t b) const {
    BitWriter w;
    w.put(kRecord, 3);
    w.put(a, id_bits_);
    w.put(b, id_bits_);
    return w.take();
  }

  void finish() {
    std::sort(edge_list_.begin(), edge_list_.end());
    out_.note = "edges=";
    for (const auto& [a, b] : edge_list_)
      out_.note += std::to_string(a) + "-" + std::to_string(b) + ";";
    // rebuild the component graph and solve it locally
    std::vector<std::uint64_t> ids;
    for (const auto& [a, b] : edge_list_) {
      ids.push_back(a);
      ids.push_back(b);
    }
    ids.push_back(my_id_);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::map<std::uint64_t, int> idx;
    for (std::size_t i = 0; i < ids.size(); ++i)
      idx[ids[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : edge_list_) edges.emplace_back(idx[a], idx[b]);
    PortGraph g = PortGraph::build(ids, edges);
    Solution sol = solve(cfg_.problem, g, cfg_.guard);
    const int me = idx[my_id_];
    if (cfg_.problem == Problem::MaxM) {
      out_.in_solution = false;
      for (const auto& e : sol.edges)
        if (e[0] == me || e[1] == me) {
          out_.in_solution = true;
          out_.chosen_neighbor = g.id(e[0] == me ? e[1] : e[0]);
        }
    } else {
      out_.in_solution =
          std::binary_search(sol.vertices.begin(), sol.vertices.end(), me);
    }
  }

  Wake step(RoundCtx& ctx) override {
    const long r = ctx.round();

    for (const auto& in : ctx.inbox()) {
      BitReader rd(in.payload);
      switch (rd.get(3)) {
        case kRace: {
          std::uint64_t root = rd.get(id_bits_);
          long dist = static_cast<long>(rd.get(dist_bits_));
          nbr_id_[in.port - 1] = in.sender_id;
          if (root < best_root_ ||
              (root == best_root_ && dist + 1 < best_dist_)) {
            best_root_ = root;
            best_dist_ = dist + 1;
            parent_port_ = in.port;
            announce_pending_ = true;
          }
          break;
        }
        case kAdopt:
          children_.push_back(in.port);
          break;
        case kUpDone:
          ++children_done_;
          break;
        case kRecord: {
          std::uint64_t a = rd.get(id_bits_);
          std::uint64_t b = rd.get(id_bits_);
          if (in.port == parent_port_ && !is_leader_) {
            // broadcast from the root: keep and relay downward
            edge_list_.emplace_back(a, b);
            fwdq_.push_back(in.payload);
          } else if (is_leader_) {
            edge_list_.emplace_back(a, b);
          } else {
            upq_.emplace_back(a, b);  // child upload: relay toward the root
          }
          break;
        }
        case kCount: {
          m_total_ = static_cast<long>(rd.get(count_bits_));
          fwdq_.push_back(in.payload);
          break;
        }
      }
    }

    if (r == 1) {
      for (int p = 1; p <= degree_; ++p) ctx.send(p, race_msg());
      announce_pending_ = false;
      return Wake::next();
    }
    if (r <= cfg_.n + 3) {
      if (announce_pending_) {
        for (int p = 1; p <= degree_; ++p) ctx.send(p, race_msg());
        announce_pending_ = false;
      }
      return Wake::next();
    }
    if (r == adopt_round()) {
      is_leader_ = best_root_ == my_id_;
      if (!is_leader_) {
        BitWriter w;
        w.put(kAdopt, 3);
        ctx.send(parent_port_, w.take());
      }
      for (int p = 1; p <= degree_; ++p)
        if (nbr_id_[p - 1] > my_id_)
          upq_.emplace_back(my_id_, nbr_id_[p - 1]);
      return Wake::next();
    }

    // upload phase: one record per round toward the root
    if (!up_done_sent_) {
      if (!upq_.empty()) {
        auto [a, b] = upq_.front();
        upq_.pop_front();
        if (is_leader_)
          edge_list_.emplace_back(a, b);
        else
          ctx.send(parent_port_, record_msg(a, b));
        return Wake::next();
      }
      if (children_done_ == children_.size()) {
        up_done_sent_ = true;
        if (!is_leader_) {
          BitWriter w;
          w.put(kUpDone, 3);
          ctx.send(parent_port_, w.take());
          return Wake::next();
        }
      } else {
        return Wake::next();
      }
    }

    // root turns around: broadcast the total then every record
    if (is_leader_ && up_done_sent_ && !bcast_started_) {
      bcast_started_ = true;
      m_total_ = static_cast<long>(edge_list_.size());
      BitWriter w;
      w.put(kCount, 3);
      w.put(static_cast<std::uint64_t>(m_total_), count_bits_);
      fwdq_.push_back(w.take());
      for (const auto& [a, b] : edge_list_) fwdq_.push_back(record_msg(a, b));
    }

    if (!fwdq_.empty()) {
      std::string payload = std::move(fwdq_.front());
      fwdq_.pop_front();
      for (int p : children_) ctx.send(p, payload);
      if (fwdq_.empty() && m_total_ >= 0 &&
          static_cast<long>(edge_list_.size()) == m_total_) {
        finish();
        return Wake::halt();
      }
      return Wake::next();
    }
    if (m_total_ >= 0 && static_cast<long>(edge_list_.size()) == m_total_) {
      finish();
      return Wake::halt();
    }
    return Wake::next();
  }

  NodeOutput output() const override { return out_; }
};

}  // namespace

ProgramFactory gather_all_program(const GatherAllConfig& cfg) {
  return [cfg] { return std::make_unique<Gather>(cfg); };
}

}  // namespace congest
