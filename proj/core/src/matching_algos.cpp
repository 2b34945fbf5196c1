#include "congest/programs/matching.hpp"

#include <algorithm>
#include <cmath>

#include "congest/bits.hpp"

namespace congest {

// ---- propose-accept ----------------------------------------------------

namespace {

enum PTag : int { kDegree = 0, kPropose = 1, kAccept = 2 };

struct Propose final : NodeProgram {
  explicit Propose(const ProposeMatchingConfig& cfg) : cfg_(cfg) {}
  ProposeMatchingConfig cfg_;

  int degree_ = 0;
  Rng* rng_ = nullptr;
  double alpha_ = 0.0;
  int proposed_port_ = 0;  // 0: silent
  NodeOutput out_;

  void init(const NodeInfo& info, Rng& rng) override {
    degree_ = info.degree;
    rng_ = &rng;
    alpha_ = cfg_.alpha;
  }

  static std::string msg(int tag, std::uint64_t field = 0, int bits = 0) {
    BitWriter w;
    w.put(tag, 2);
    if (bits) w.put(field, bits);
    return w.take();
  }

  void propose(RoundCtx& ctx) {
    if (degree_ > 0 && rng_->bernoulli(alpha_)) {
      proposed_port_ = 1 + static_cast<int>(
                               rng_->below(static_cast<std::uint64_t>(degree_)));
      ctx.send(proposed_port_, msg(kPropose));
    }
  }

  Wake step(RoundCtx& ctx) override {
    const long propose_round = cfg_.estimate_degrees ? 2 : 1;
    const long r = ctx.round();

    if (r == 1 && cfg_.estimate_degrees) {
      // one-message local estimate of the degree spread
      if (degree_ > 0)
        ctx.send(1, msg(kDegree, static_cast<std::uint64_t>(degree_), 20));
      return Wake::next();
    }
    if (r == propose_round) {
      if (cfg_.estimate_degrees) {
        std::uint64_t dmax = static_cast<std::uint64_t>(std::max(degree_, 1));
        std::uint64_t dmin = dmax;
        for (const auto& in : ctx.inbox()) {
          BitReader rd(in.payload);
          if (rd.get(2) != kDegree) continue;
          std::uint64_t d = rd.get(20);
          dmax = std::max(dmax, d);
          dmin = std::min(dmin, d);
        }
        alpha_ = 0.5 * static_cast<double>(dmin) / static_cast<double>(dmax);
      }
      propose(ctx);
      return Wake::next();
    }
    if (r == propose_round + 1) {
      int count = 0, from_port = 0;
      std::uint64_t from_id = 0;
      for (const auto& in : ctx.inbox()) {
        BitReader rd(in.payload);
        if (rd.get(2) != kPropose) continue;
        ++count;
        from_port = in.port;
        from_id = in.sender_id;
      }
      // accept iff exactly one proposal touches this node and our own
      // proposal (if any) is that same edge
      if (count == 1 && (proposed_port_ == 0 || proposed_port_ == from_port)) {
        out_.chosen_port = from_port;
        out_.chosen_neighbor = from_id;
        ctx.send(from_port, msg(kAccept));
      }
      if (proposed_port_ == 0) return Wake::halt();
      return Wake::next();
    }
    // proposer learns the outcome
    for (const auto& in : ctx.inbox()) {
      BitReader rd(in.payload);
      if (rd.get(2) == kAccept && in.port == proposed_port_) {
        out_.chosen_port = proposed_port_;
        out_.chosen_neighbor = in.sender_id;
      }
    }
    return Wake::halt();
  }

  NodeOutput output() const override { return out_; }
};

}  // namespace

ProgramFactory propose_matching_program(const ProposeMatchingConfig& cfg) {
  return [cfg] { return std::make_unique<Propose>(cfg); };
}

// ---- rotation matching --------------------------------------------------

long RotationMatchingConfig::step_budget() const {
  return static_cast<long>(std::ceil(
      budget_factor * n * std::log(std::max(2, n))));
}

namespace {

enum RTag : int {
  kExtend = 0,
  kJoined = 1,
  kFlipHead = 2,
  kFlip = 3,
  kDone = 4,
  kGo = 5,
  kAdvReq = 6,
  kAdv = 7,
  kAdvOk = 8,
  kClose = 9,
  kExtract = 10
};

struct Rotation final : NodeProgram {
  explicit Rotation(const RotationMatchingConfig& cfg) : cfg_(cfg) {
    len_bits_ = bits_for(static_cast<std::uint64_t>(cfg_.n) + 1);
    step_bits_ = bits_for(static_cast<std::uint64_t>(cfg_.step_budget()) + 1);
  }

  RotationMatchingConfig cfg_;
  int len_bits_, step_bits_;

  std::uint64_t my_id_ = 0;
  int degree_ = 0;
  Rng* rng_ = nullptr;

  bool on_path_ = false, is_tail_ = false, is_head_ = false;
  bool head_active_ = false;  // head may be paused while a sweep completes
  int pred_port_ = 0, succ_port_ = 0;
  int tail_adj_port_ = 0;

  // token, meaningful at the current head
  long len_ = 0, steps_ = 0;
  bool adv_done_ = false;

  int pending_proposal_ = 0;  // old head: port of the proposal in flight
  int pending_go_ = 0;        // rotation target: port of the parked new head
  bool fresh_head_ = false;   // joined this round; first move is next round

  NodeOutput out_;

  void init(const NodeInfo& info, Rng& rng) override {
    my_id_ = info.id;
    degree_ = info.degree;
    rng_ = &rng;
    if (my_id_ == cfg_.start_id) {
      on_path_ = is_tail_ = is_head_ = head_active_ = true;
      len_ = 1;
    }
  }

  std::string token_msg(int tag) const {
    BitWriter w;
    w.put(tag, 4);
    w.put(static_cast<std::uint64_t>(len_), len_bits_);
    w.put(static_cast<std::uint64_t>(steps_), step_bits_);
    w.put(adv_done_ ? 1 : 0, 1);
    return w.take();
  }
  static std::string tag_msg(int tag) {
    BitWriter w;
    w.put(tag, 4);
    return w.take();
  }
  static std::string adv_ok_msg(bool first_hop) {
    BitWriter w;
    w.put(kAdvOk, 4);
    w.put(first_hop ? 1 : 0, 1);
    return w.take();
  }
  std::string extract_msg(long idx) const {
    BitWriter w;
    w.put(kExtract, 4);
    w.put(static_cast<std::uint64_t>(idx), len_bits_);
    return w.take();
  }

  void read_token(BitReader& rd) {
    len_ = static_cast<long>(rd.get(len_bits_));
    steps_ = static_cast<long>(rd.get(step_bits_));
    adv_done_ = rd.get(1) != 0;
  }

  // Head move: one random-walk step.  Returns false when the budget is out.
  bool head_step(RoundCtx& ctx) {
    if (cfg_.n == 1) {
      out_.note = "matching=empty";
      return false;
    }
    if (len_ == cfg_.n) {
      if (cfg_.n == 2) {
        out_.chosen_port = pred_port_;
        ctx.send(pred_port_, extract_msg(1));
        return false;
      }
      if (!adv_done_) {
        head_active_ = false;
        ctx.send(pred_port_, tag_msg(kAdvReq));
        return true;
      }
      if (tail_adj_port_ != 0) {
        succ_port_ = tail_adj_port_;
        is_head_ = head_active_ = false;
        ctx.send(tail_adj_port_, tag_msg(kClose));
        return true;
      }
    }
    if (steps_ >= cfg_.step_budget()) {
      out_.note = "failed:budget";
      return false;
    }
    ++steps_;
    int port = 1 + static_cast<int>(
                       rng_->below(static_cast<std::uint64_t>(degree_)));
    if (port == pred_port_) return true;  // no-change step, retry next round
    pending_proposal_ = port;
    head_active_ = false;
    ctx.send(port, token_msg(kExtend));
    return true;
  }

  Wake step(RoundCtx& ctx) override {
    const long r = ctx.round();
    for (const auto& in : ctx.inbox()) {
      BitReader rd(in.payload);
      switch (rd.get(4)) {
        case kExtend: {
          read_token(rd);
          if (!on_path_) {
            on_path_ = true;
            pred_port_ = in.port;
            ++len_;
            is_head_ = head_active_ = true;
            fresh_head_ = true;
            ctx.send(in.port, tag_msg(kJoined));
          } else {
            // rotation: cut our head-side edge and take the proposer
            pending_go_ = succ_port_;
            succ_port_ = in.port;
            ctx.send(pending_go_, token_msg(kFlipHead));
          }
          break;
        }
        case kJoined:
          is_head_ = head_active_ = false;
          succ_port_ = pending_proposal_;
          pending_proposal_ = 0;
          break;
        case kFlipHead: {
          read_token(rd);
          // parked new head: re-anchor to the far side of the old segment
          pred_port_ = succ_port_;
          succ_port_ = 0;
          is_head_ = true;
          head_active_ = false;
          if (pred_port_ != 0) ctx.send(pred_port_, tag_msg(kFlip));
          break;
        }
        case kFlip:
          if (is_head_ && pending_proposal_ != 0) {
            // sweep reached the old head: the segment is re-oriented
            is_head_ = false;
            succ_port_ = in.port;
            pred_port_ = pending_proposal_;
            pending_proposal_ = 0;
            ctx.send(pred_port_, tag_msg(kDone));
          } else {
            int old_succ = succ_port_;
            succ_port_ = pred_port_;
            pred_port_ = old_succ;
            ctx.send(old_succ, tag_msg(kFlip));
          }
          break;
        case kDone:
          ctx.send(pending_go_, tag_msg(kGo));
          pending_go_ = 0;
          break;
        case kGo:
          head_active_ = true;
          break;
        case kAdvReq:
          if (is_tail_) {
            // announce adjacency on every port; the successor's copy rides
            // on the confirmation's first hop
            for (int p = 1; p <= degree_; ++p)
              if (p == succ_port_)
                ctx.send(p, adv_ok_msg(true));
              else
                ctx.send(p, tag_msg(kAdv));
          } else {
            ctx.send(pred_port_, tag_msg(kAdvReq));
          }
          break;
        case kAdv:
          tail_adj_port_ = in.port;
          break;
        case kAdvOk: {
          if (rd.get(1)) tail_adj_port_ = in.port;
          if (is_head_) {
            adv_done_ = true;
            head_active_ = true;
          } else {
            ctx.send(succ_port_, adv_ok_msg(false));
          }
          break;
        }
        case kClose:
          // cycle closed at the tail; start marking alternate edges
          pred_port_ = in.port;
          out_.chosen_port = succ_port_;
          ctx.send(succ_port_, extract_msg(1));
          return Wake::halt();
        case kExtract: {
          long idx = static_cast<long>(rd.get(len_bits_));
          if (idx % 2 == 1) out_.chosen_port = in.port;
          if (idx < cfg_.n - 1) {
            if ((idx + 1) % 2 == 1) out_.chosen_port = succ_port_;
            ctx.send(succ_port_, extract_msg(idx + 1));
          }
          return Wake::halt();
        }
      }
    }

    if (is_head_ && head_active_) {
      if (fresh_head_) {
        fresh_head_ = false;
        return Wake::next();
      }
      if (!head_step(ctx)) return Wake::halt();
      return head_active_ ? Wake::next() : Wake::on_message();
    }
    return Wake::on_message();
  }

  NodeOutput output() const override { return out_; }
};

}  // namespace

ProgramFactory rotation_matching_program(const RotationMatchingConfig& cfg) {
  return [cfg] { return std::make_unique<Rotation>(cfg); };
}

std::optional<std::vector<std::array<int, 2>>> matching_from_outputs(
    const PortGraph& g, const std::vector<NodeOutput>& outs) {
  std::vector<int> partner(g.n(), -1);
  for (int u = 0; u < g.n(); ++u) {
    const NodeOutput& o = outs[u];
    int v = -1;
    if (o.chosen_port) {
      if (*o.chosen_port < 1 || *o.chosen_port > g.degree(u)) return {};
      v = g.at(u, *o.chosen_port).neighbor;
    } else if (o.chosen_neighbor) {
      auto idx = g.index_of_id(*o.chosen_neighbor);
      if (!idx) return {};
      v = *idx;
    } else {
      continue;
    }
    if (!g.has_edge(u, v)) return {};
    partner[u] = v;
  }
  std::vector<std::array<int, 2>> edges;
  for (int u = 0; u < g.n(); ++u) {
    if (partner[u] < 0) continue;
    if (partner[partner[u]] != u) return {};  // not mutual
    if (u < partner[u]) edges.push_back({u, partner[u]});
  }
  return edges;
}

}  // namespace congest
