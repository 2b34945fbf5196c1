#include "congest/programs/greedy_mis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "congest/bits.hpp"

namespace congest {

double GreedyMisConfig::q() const {
  if (q_override > 0.0) return std::min(1.0, q_override);
  double v = 100.0 * std::log(static_cast<double>(n)) /
             (p * static_cast<double>(n));
  return std::min(1.0, v);
}

int GreedyMisConfig::phases() const {
  double qq = q();
  if (qq >= 1.0) return 0;
  return static_cast<int>(std::ceil(std::log2(1.0 / qq)));
}

long GreedyMisConfig::tmis_rounds() const {
  return static_cast<long>(tmis_factor) *
         static_cast<long>(std::ceil(std::log(std::max(2, n))));
}

namespace {

enum Tag : int { kAct = 0, kJoin = 1, kOut = 2, kWin = 3 };

struct GreedyMis final : NodeProgram {
  explicit GreedyMis(const GreedyMisConfig& cfg) : cfg_(cfg) {
    if (cfg_.rho_max == 0) {
      std::uint64_t nn = static_cast<std::uint64_t>(std::max(2, cfg_.n));
      cfg_.rho_max = nn * nn * nn;
    }
    rho_bits_ = bits_for(cfg_.rho_max);
    B_ = cfg_.block_rounds();
    blocks_ = static_cast<long>(cfg_.phases()) * cfg_.iters_per_phase + 1;
  }

  GreedyMisConfig cfg_;
  int rho_bits_;
  long B_, blocks_;

  std::uint64_t my_id_ = 0;
  int degree_ = 0;
  Rng* rng_ = nullptr;

  enum class State { Undecided, InMis, OutMis } state_ = State::Undecided;

  // current-block activation
  long act_block_ = -1;  // block in which this node is active
  bool joined_ = false;
  std::uint64_t my_rho_ = 0;

  // per-port view of the active neighborhood, stamped by block
  std::vector<long> stamp_;
  std::vector<std::uint64_t> nbr_rho_, nbr_id_;
  std::vector<char> nbr_undecided_;

  // replay key of the deciding moment
  long key_phase_ = -1, key_iter_ = -1;
  int key_inactive_ = 1;
  std::uint64_t key_rho_ = 0;

  void init(const NodeInfo& info, Rng& rng) override {
    my_id_ = info.id;
    degree_ = info.degree;
    rng_ = &rng;
    stamp_.assign(degree_, -1);
    nbr_rho_.assign(degree_, 0);
    nbr_id_.assign(degree_, 0);
    nbr_undecided_.assign(degree_, 0);
  }

  long block_of(long round) const { return (round - 1) / B_; }
  long block_start(long b) const { return 1 + b * B_; }
  long win_round(long b) const { return block_start(b) + B_ - 1; }

  int phase_of_block(long b) const {
    return b >= static_cast<long>(cfg_.phases()) * cfg_.iters_per_phase
               ? cfg_.phases() + 1
               : static_cast<int>(b) / cfg_.iters_per_phase + 1;
  }
  int iter_of_block(long b) const {
    return b >= static_cast<long>(cfg_.phases()) * cfg_.iters_per_phase
               ? 1
               : static_cast<int>(b) % cfg_.iters_per_phase + 1;
  }

  bool local_min(long b) const {
    for (int p = 0; p < degree_; ++p) {
      if (stamp_[p] != b || !nbr_undecided_[p]) continue;
      if (std::make_pair(nbr_rho_[p], nbr_id_[p]) <
          std::make_pair(my_rho_, my_id_))
        return false;
    }
    return true;
  }

  void record_key(long b, bool was_active) {
    key_phase_ = phase_of_block(b);
    key_iter_ = iter_of_block(b);
    key_inactive_ = was_active ? 0 : 1;
    key_rho_ = was_active ? my_rho_ : 0;
  }

  std::string act_msg() const {
    BitWriter w;
    w.put(kAct, 2);
    w.put(my_rho_, rho_bits_);
    return w.take();
  }
  static std::string tag_msg(int tag) {
    BitWriter w;
    w.put(tag, 2);
    return w.take();
  }

  void send_stamped(RoundCtx& ctx, long b, int tag) {
    for (int p = 0; p < degree_; ++p)
      if (stamp_[p] == b) ctx.send(p + 1, tag_msg(tag));
  }

  Wake step(RoundCtx& ctx) override {
    const long r = ctx.round();
    const long b = block_of(r);

    bool changed = false;
    for (const auto& in : ctx.inbox()) {
      BitReader rd(in.payload);
      switch (rd.get(2)) {
        case kAct: {
          // sent at a block start, received at offset 1
          long ab = block_of(r - 1);
          int p = in.port - 1;
          stamp_[p] = ab;
          nbr_rho_[p] = rd.get(rho_bits_);
          nbr_id_[p] = in.sender_id;
          nbr_undecided_[p] = 1;
          changed = true;
          break;
        }
        case kJoin: {
          nbr_undecided_[in.port - 1] = 0;
          if (state_ == State::Undecided) {
            state_ = State::OutMis;
            record_key(block_of(r - 1), act_block_ == block_of(r - 1));
            // tell the still-active neighborhood so the inner run advances
            send_stamped(ctx, block_of(r - 1), kOut);
            return Wake::halt();
          }
          break;
        }
        case kOut:
          nbr_undecided_[in.port - 1] = 0;
          changed = true;
          break;
        case kWin:
          if (state_ == State::Undecided) {
            state_ = State::OutMis;
            record_key(block_of(r - 1), act_block_ == block_of(r - 1));
            return Wake::halt();
          }
          break;
      }
    }
    if (state_ == State::OutMis) return Wake::halt();

    if (state_ == State::InMis) {
      // waiting to announce at the block end
      if (r >= win_round(act_block_)) {
        for (int p = 1; p <= degree_; ++p) ctx.send(p, tag_msg(kWin));
        return Wake::halt();
      }
      return Wake::until(win_round(act_block_));
    }

    if (b >= blocks_) {
      // ran out of blocks while undecided: flagged, never hidden
      return Wake::halt();
    }

    const long s = block_start(b);
    if (r == s && act_block_ != b) {
      // activation decision for this block
      const int ph = phase_of_block(b);
      const bool final_phase = ph == cfg_.phases() + 1;
      double qi = final_phase
                      ? 1.0
                      : std::min(1.0, std::ldexp(cfg_.q(), ph - 1));
      if (rng_->bernoulli(qi)) {
        act_block_ = b;
        joined_ = false;
        my_rho_ = 1 + rng_->below(cfg_.rho_max);
        for (int p = 1; p <= degree_; ++p) ctx.send(p, act_msg());
        return Wake::until(s + 1);
      }
      return Wake::until(block_start(b + 1));
    }

    if (act_block_ == b && !joined_ && (changed || r == s + 1) &&
        r <= s + cfg_.tmis_rounds()) {
      if (local_min(b)) {
        joined_ = true;
        state_ = State::InMis;
        record_key(b, true);
        send_stamped(ctx, b, kJoin);
        return Wake::until(win_round(b));
      }
    }
    return Wake::until(block_start(b + 1));
  }

  NodeOutput output() const override {
    NodeOutput out;
    out.in_solution = state_ == State::InMis;
    if (state_ == State::Undecided) {
      out.note = "unconverged";
    } else {
      out.note = "key=" + std::to_string(key_phase_) + ":" +
                 std::to_string(key_iter_) + ":" +
                 std::to_string(key_inactive_) + ":" +
                 std::to_string(key_rho_);
    }
    return out;
  }
};

}  // namespace

ProgramFactory greedy_mis_program(const GreedyMisConfig& cfg) {
  return [cfg] { return std::make_unique<GreedyMis>(cfg); };
}

std::vector<int> mis_from_outputs(const std::vector<NodeOutput>& outs) {
  std::vector<int> mis;
  for (std::size_t i = 0; i < outs.size(); ++i)
    if (outs[i].in_solution && *outs[i].in_solution)
      mis.push_back(static_cast<int>(i));
  return mis;
}

bool is_maximal_independent_set(const PortGraph& g,
                                const std::vector<int>& set) {
  std::vector<char> in(g.n(), 0);
  for (int v : set) in[v] = 1;
  for (const auto& e : g.edges())
    if (in[e[0]] && in[e[1]]) return false;
  for (int u = 0; u < g.n(); ++u) {
    if (in[u]) continue;
    bool covered = false;
    for (const auto& h : g.adj(u))
      if (in[h.neighbor]) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

std::vector<int> replay_sequential_greedy(
    const PortGraph& g, const std::vector<NodeOutput>& outs) {
  struct Key {
    long phase, iter;
    int inactive;
    unsigned long long rho;
    std::uint64_t id;
    int node;
  };
  std::vector<Key> keys;
  for (int u = 0; u < g.n(); ++u) {
    const std::string& note = outs[u].note;
    if (note.rfind("key=", 0) != 0)
      throw std::runtime_error("node without replay key (unconverged run?)");
    Key k{};
    if (std::sscanf(note.c_str(), "key=%ld:%ld:%d:%llu", &k.phase, &k.iter,
                    &k.inactive, &k.rho) != 4)
      throw std::runtime_error("bad replay key: " + note);
    k.id = g.id(u);
    k.node = u;
    keys.push_back(k);
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    return std::make_tuple(a.phase, a.iter, a.inactive,
                           static_cast<std::uint64_t>(a.rho), a.id) <
           std::make_tuple(b.phase, b.iter, b.inactive,
                           static_cast<std::uint64_t>(b.rho), b.id);
  });
  std::vector<char> in(g.n(), 0);
  std::vector<int> mis;
  for (const Key& k : keys) {
    bool blocked = false;
    for (const auto& h : g.adj(k.node))
      if (in[h.neighbor]) {
        blocked = true;
        break;
      }
    if (!blocked) {
      in[k.node] = 1;
      mis.push_back(k.node);
    }
  }
  std::sort(mis.begin(), mis.end());
  return mis;
}

std::vector<int> derived_from_mis(const PortGraph& g,
                                  const std::vector<int>& mis, Problem p) {
  if (!is_maximal_independent_set(g, mis))
    throw std::invalid_argument("derived_from_mis: not a maximal IS");
  switch (p) {
    case Problem::MaxIS:
    case Problem::MDS:
      return mis;
    case Problem::MVC: {
      std::vector<char> in(g.n(), 0);
      for (int v : mis) in[v] = 1;
      std::vector<int> vc;
      for (int u = 0; u < g.n(); ++u)
        if (!in[u]) vc.push_back(u);
      return vc;
    }
    case Problem::MaxM:
      throw std::invalid_argument("no matching derived from an MIS");
  }
  return {};
}

}  // namespace congest
