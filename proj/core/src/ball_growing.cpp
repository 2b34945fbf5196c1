#include "congest/programs/ball_growing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>

#include "congest/bits.hpp"

namespace congest {

int BallGrowingConfig::default_radius_cap() const {
  double eps = static_cast<double>(eps_num) / static_cast<double>(eps_den);
  return static_cast<int>(std::ceil(std::log(std::max(2, n)) /
                                    std::log1p(eps))) +
         1;
}

namespace {

enum Tag : int {
  kRace = 0,
  kAdopt = 1,
  kPoll = 2,
  kEcho = 3,
  kInit = 4,
  kGrow = 5,
  kJoin = 6,
  kAccept = 7,
  kRec = 8,
  kRecEnd = 9,
  kSelect = 10,
  kSelectVia = 11,
  kSelectMate = 12,
  kDelete = 13,
  kBye = 14,
  kByeDone = 15,
  kIterDone = 16,
  kFinish = 17,
  kSpare = 18
};

struct BallGrow final : NodeProgram {
  explicit BallGrow(const BallGrowingConfig& cfg) : cfg_(cfg) {
    if (cfg_.id_max == 0) cfg_.id_max = static_cast<std::uint64_t>(cfg_.n);
    if (cfg_.radius_cap == 0) cfg_.radius_cap = cfg_.default_radius_cap();
    id_bits_ = bits_for(cfg_.id_max);
    dist_bits_ = bits_for(static_cast<std::uint64_t>(cfg_.n) + 1);
  }

  BallGrowingConfig cfg_;
  int id_bits_, dist_bits_;

  std::uint64_t my_id_ = 0;
  int degree_ = 0;
  std::vector<std::uint64_t> nbr_id_;
  std::vector<char> nbr_active_;
  bool active_ = true;

  // spanning forest
  std::uint64_t best_root_ = 0;
  long best_dist_ = 0;
  int parent_port_ = 0;
  bool announce_pending_ = false;
  std::vector<int> tree_children_;
  bool is_root_ = false;

  // per-port send queues: at most one message per port per round, FIFO
  std::vector<std::deque<std::string>> outq_;

  // poll state
  int echoes_waiting_ = 0;
  std::uint64_t echo_best_ = 0;
  int echo_best_port_ = 0;

  // ball membership
  bool in_ball_ = false;
  bool spared_ = false;  // matching mode: stays alive through the teardown
  int ball_depth_ = -1;
  int ball_parent_ = 0;
  std::vector<int> ball_children_;
  std::map<std::uint64_t, int> route_;  // gathered id -> child port
  int recend_waiting_ = 0;
  bool accept_window_open_ = false;
  long accept_round_ = 0;
  bool dying_ = false;
  int byedone_waiting_ = 0;

  // initiator state
  bool initiator_ = false;
  int grow_depth_ = 0;
  // member id -> (neighbor id, neighbor was active) over the whole graph
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, bool>>>
      records_;
  std::map<std::uint64_t, int> depth_of_;
  std::vector<long> metric_;  // in-ball optimum at each radius
  long dom_prev_ = 1;         // MDS: previous radius cover cost

  NodeOutput out_;
  bool in_solution_ = false;
  long now_ = 0;

  void init(const NodeInfo& info, Rng&) override {
    my_id_ = info.id;
    degree_ = info.degree;
    nbr_id_.assign(degree_, 0);
    nbr_active_.assign(degree_, 1);
    best_root_ = my_id_;
    best_dist_ = 0;
    outq_.resize(degree_);
  }

  // ---- message building -------------------------------------------------

  std::string msg(int tag) const {
    BitWriter w;
    w.put(tag, 5);
    return w.take();
  }
  std::string msg1(int tag, std::uint64_t a) const {
    BitWriter w;
    w.put(tag, 5);
    w.put(a, id_bits_);
    return w.take();
  }
  std::string msg2(int tag, std::uint64_t a, std::uint64_t b) const {
    BitWriter w;
    w.put(tag, 5);
    w.put(a, id_bits_);
    w.put(b, id_bits_);
    return w.take();
  }
  std::string rec_msg(std::uint64_t a, std::uint64_t b, bool b_active) const {
    BitWriter w;
    w.put(kRec, 5);
    w.put(a, id_bits_);
    w.put(b, id_bits_);
    w.put(b_active ? 1 : 0, 1);
    return w.take();
  }
  std::string race_msg() const {
    BitWriter w;
    w.put(kRace, 5);
    w.put(best_root_, id_bits_);
    w.put(static_cast<std::uint64_t>(best_dist_), dist_bits_);
    return w.take();
  }
  std::string grow_msg(int d) const {
    BitWriter w;
    w.put(kGrow, 5);
    w.put(static_cast<std::uint64_t>(d), dist_bits_);
    return w.take();
  }

  void enqueue(int port, std::string payload) {
    outq_[port - 1].push_back(std::move(payload));
  }
  void enqueue_all(const std::string& payload) {
    for (int p = 1; p <= degree_; ++p) outq_[p - 1].push_back(payload);
  }

  // ---- local model of the gathered ball ----------------------------------

  std::vector<std::uint64_t> members_upto(int depth) const {
    std::vector<std::uint64_t> ids;
    for (const auto& [id, d] : depth_of_)
      if (d <= depth) ids.push_back(id);
    return ids;
  }

  // Graph on `ids` induced by everything the initiator has gathered; the
  // given node order defines the index order (and so witness preference).
  PortGraph local_graph(const std::vector<std::uint64_t>& ids) const {
    std::set<std::uint64_t> in(ids.begin(), ids.end());
    std::map<std::uint64_t, int> idx;
    for (std::size_t i = 0; i < ids.size(); ++i)
      idx[ids[i]] = static_cast<int>(i);
    std::set<std::pair<int, int>> edges;
    for (const auto& [a, nbrs] : records_) {
      if (!in.count(a)) continue;
      for (const auto& [b, act] : nbrs) {
        if (!in.count(b)) continue;
        int ia = idx.at(a), ib = idx.at(b);
        edges.emplace(std::min(ia, ib), std::max(ia, ib));
      }
    }
    return PortGraph::build(ids, {edges.begin(), edges.end()});
  }

  std::vector<std::uint64_t> sorted_members_upto(int depth) const {
    auto ids = members_upto(depth);
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  // MDS cover cost of the current inner ball: a minimum set dominating all
  // gathered members, drawn from members, their deleted neighbors, or the
  // active fringe.  Deleted vertices stay usable as dominators (choosing
  // one again is free, the selection is a union), so they are preferred.
  long cover_cost(int t, std::vector<std::uint64_t>* witness) const {
    std::set<std::uint64_t> ball;
    for (const auto& [id, d] : depth_of_)
      if (d <= t) ball.insert(id);
    std::set<std::uint64_t> deleted_nbrs, fringe;
    for (const auto& [a, nbrs] : records_) {
      if (!ball.count(a)) continue;
      for (const auto& [b, act] : nbrs) {
        if (ball.count(b)) continue;
        (act ? fringe : deleted_nbrs).insert(b);
      }
    }
    std::vector<std::uint64_t> ids(deleted_nbrs.begin(), deleted_nbrs.end());
    ids.insert(ids.end(), ball.begin(), ball.end());
    ids.insert(ids.end(), fringe.begin(), fringe.end());
    PortGraph g = local_graph(ids);
    std::vector<int> targets, allowed;
    for (int i = 0; i < g.n(); ++i) {
      allowed.push_back(i);
      if (ball.count(g.id(i))) targets.push_back(i);
    }
    auto sol = min_dominators(g, targets, allowed);
    if (witness)
      for (int v : sol) witness->push_back(g.id(v));
    return static_cast<long>(sol.size());
  }

  long ball_metric(int depth) const {
    PortGraph g = local_graph(sorted_members_upto(depth));
    OracleGuard open{64, 64, 64};
    switch (cfg_.problem) {
      case Problem::MaxIS:
      case Problem::MVC:
        return exact_maxis(g, open).size();
      case Problem::MDS:
        return cover_cost(depth, nullptr);
      case Problem::MaxM:
        return exact_maxm(g).size();
    }
    return 0;
  }

  // ---- routing of selections -------------------------------------------

  void route_select(const std::string& payload, std::uint64_t target) {
    if (target == my_id_) {
      apply_select_to_self(payload);
      return;
    }
    auto it = route_.find(target);
    if (it != route_.end()) {
      enqueue(it->second, payload);
      return;
    }
    // fringe vertex: hand it to a gathered member adjacent to it
    for (const auto& [a, nbrs] : records_) {
      for (const auto& [b, act] : nbrs)
        if (b == target) {
          BitWriter w;
          w.put(kSelectVia, 5);
          w.put(a, id_bits_);
          w.put(target, id_bits_);
          route_select_member(w.take(), a);
          return;
        }
    }
    throw std::runtime_error("ball-growing: no route to selected vertex");
  }
  void route_select_member(const std::string& payload, std::uint64_t member) {
    if (member == my_id_) {
      apply_select_to_self(payload);
      return;
    }
    enqueue(route_.at(member), payload);
  }
  void apply_select_to_self(const std::string& payload) {
    BitReader rd(payload);
    int tag = static_cast<int>(rd.get(5));
    if (tag == kSelect) {
      in_solution_ = true;
    } else if (tag == kSelectMate) {
      rd.get(id_bits_);
      in_solution_ = true;
      out_.chosen_neighbor = rd.get(id_bits_);
    } else if (tag == kSpare) {
      spared_ = true;
    } else if (tag == kSelectVia) {
      rd.get(id_bits_);
      std::uint64_t target = rd.get(id_bits_);
      for (int p = 1; p <= degree_; ++p)
        if (nbr_id_[p - 1] == target) {
          enqueue(p, msg1(kSelect, target));
          return;
        }
      throw std::runtime_error("ball-growing: fringe neighbor not found");
    }
  }

  // ---- initiator phases ---------------------------------------------------

  void start_iteration() {
    initiator_ = true;
    in_ball_ = true;
    ball_depth_ = 0;
    ball_parent_ = 0;
    ball_children_.clear();
    route_.clear();
    records_.clear();
    depth_of_.clear();
    metric_.clear();
    grow_depth_ = 0;
    std::vector<std::pair<std::uint64_t, bool>> own;
    for (int p = 1; p <= degree_; ++p)
      if (nbr_id_[p - 1] != 0)
        own.emplace_back(nbr_id_[p - 1], nbr_active_[p - 1] != 0);
    records_[my_id_] = own;
    depth_of_[my_id_] = 0;
    dom_prev_ = 1;
    if (cfg_.problem != Problem::MDS) metric_.push_back(ball_metric(0));
  }

  void start_grow() {
    ++grow_depth_;
    recend_waiting_ = 0;
    if (grow_depth_ == 1) {
      send_joins();
    } else {
      for (int p : ball_children_) enqueue(p, grow_msg(grow_depth_));
      recend_waiting_ = static_cast<int>(ball_children_.size());
      if (recend_waiting_ == 0) grow_finished();
    }
  }

  void send_joins() {
    recend_waiting_ = 0;
    BitWriter w;
    w.put(kJoin, 5);
    w.put(static_cast<std::uint64_t>(ball_depth_ + 1), dist_bits_);
    const std::string payload = w.take();
    for (int p = 1; p <= degree_; ++p)
      if (nbr_active_[p - 1]) enqueue(p, payload);
    accept_window_open_ = true;
    accept_round_ = now_ + 2;
  }

  // Called at the initiator once a grow phase has fully reported: stop as
  // soon as one more radius grows the in-ball optimum by at most (1+eps).
  void grow_finished() {
    const int t = grow_depth_;
    bool stop = false;
    const bool dbg = std::getenv("CONGEST_BALL_DEBUG") != nullptr;
    if (cfg_.problem == Problem::MDS) {
      // radius-1 balls are always dominated by their center, so the ratio
      // test only becomes meaningful from radius 2 on
      long cost = cover_cost(t, nullptr);
      stop = t >= 2 && cfg_.eps_den * cost <=
                           (cfg_.eps_den + cfg_.eps_num) * dom_prev_;
      if (dbg)
        std::fprintf(stderr, "[ball] init=%llu t=%d cost=%ld prev=%ld stop=%d members=%zu\n",
                     (unsigned long long)my_id_, t, cost, dom_prev_, (int)stop,
                     depth_of_.size());
      dom_prev_ = cost;
    } else {
      metric_.push_back(ball_metric(t));
      stop = cfg_.eps_den * metric_[t] <=
             (cfg_.eps_den + cfg_.eps_num) * metric_[t - 1];
    }
    if (!stop && t >= cfg_.radius_cap) {
      out_.note = "failed:radius-cap";
      stop = true;
    }
    if (!stop) {
      start_grow();
      return;
    }
    commit_solution(t);
    // tear down the gathered ball
    dying_ = true;
    byedone_waiting_ = static_cast<int>(ball_children_.size());
    for (int p : ball_children_) enqueue(p, msg(kDelete));
  }

  void commit_solution(int t) {
    switch (cfg_.problem) {
      case Problem::MaxIS:
      case Problem::MVC: {
        // inner ball plus fringe-free shell vertices
        std::set<std::uint64_t> all = [&] {
          std::set<std::uint64_t> s;
          for (auto& [id, d] : depth_of_) s.insert(id);
          return s;
        }();
        std::vector<std::uint64_t> base = members_upto(t - 1);
        for (auto& [id, d] : depth_of_) {
          if (d != t) continue;
          bool inner = true;
          for (const auto& [b, act] : records_[id])
            if (act && !all.count(b)) {
              inner = false;
              break;
            }
          if (inner) base.push_back(id);
        }
        std::sort(base.begin(), base.end());
        OracleGuard open{64, 64, 64};
        PortGraph g = local_graph(base);
        Solution is = exact_maxis(g, open);
        std::set<std::uint64_t> chosen;
        for (int v : is.vertices) chosen.insert(g.id(v));
        for (auto& [id, d] : depth_of_) {
          bool pick = cfg_.problem == Problem::MaxIS ? chosen.count(id) > 0
                                                     : chosen.count(id) == 0;
          if (pick) route_select(msg1(kSelect, id), id);
        }
        break;
      }
      case Problem::MaxM: {
        // match the whole gathered ball; unmatched rim vertices are spared
        // from the teardown so a later ball may still match them
        OracleGuard open{64, 64, 64};
        PortGraph g = local_graph(sorted_members_upto(t));
        Solution m = exact_maxm(g);
        std::set<std::uint64_t> matched;
        for (const auto& e : m.edges) {
          matched.insert(g.id(e[0]));
          matched.insert(g.id(e[1]));
          route_select(msg2(kSelectMate, g.id(e[0]), g.id(e[1])), g.id(e[0]));
          route_select(msg2(kSelectMate, g.id(e[1]), g.id(e[0])), g.id(e[1]));
        }
        for (const auto& [id, d] : depth_of_)
          if (d == t && !matched.count(id))
            route_select(msg1(kSpare, id), id);
        break;
      }
      case Problem::MDS: {
        std::vector<std::uint64_t> witness;
        cover_cost(t, &witness);
        for (std::uint64_t id : witness) route_select(msg1(kSelect, id), id);
        break;
      }
    }
  }

  // ---- per-node ball duties ----------------------------------------------

  void maybe_byedone() {
    if (!dying_ || byedone_waiting_ != 0) return;
    byedone_waiting_ = -1;
    dying_ = false;
    active_ = false;
    in_ball_ = false;
    enqueue_all(msg(kBye));
    if (initiator_) {
      initiator_ = false;
      if (is_root_) {
        start_poll();
      } else {
        enqueue(parent_port_, msg(kIterDone));
      }
    } else {
      enqueue(ball_parent_, msg(kByeDone));
    }
  }

  void start_poll() {
    echoes_waiting_ = static_cast<int>(tree_children_.size());
    echo_best_ = active_ ? my_id_ : 0;
    echo_best_port_ = 0;
    for (int p : tree_children_) enqueue(p, msg(kPoll));
    if (echoes_waiting_ == 0) root_decide();
  }

  void root_decide() {
    if (echo_best_ == 0) {
      for (int p : tree_children_) enqueue(p, msg(kFinish));
      finished_ = true;
      return;
    }
    if (echo_best_ == my_id_) {
      start_iteration();
      start_grow();
    } else {
      enqueue(echo_best_port_, msg1(kInit, echo_best_));
    }
  }

  bool finished_ = false;

  // ---- main step -----------------------------------------------------------

  Wake step(RoundCtx& ctx) override {
    const long r = ctx.round();
    now_ = r;

    for (const auto& in : ctx.inbox()) {
      BitReader rd(in.payload);
      const int tag = static_cast<int>(rd.get(5));
      switch (tag) {
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
          tree_children_.push_back(in.port);
          break;
        case kPoll: {
          echoes_waiting_ = static_cast<int>(tree_children_.size());
          echo_best_ = active_ ? my_id_ : 0;
          echo_best_port_ = 0;
          for (int p : tree_children_) enqueue(p, msg(kPoll));
          if (echoes_waiting_ == 0) enqueue(parent_port_, msg1(kEcho, echo_best_));
          break;
        }
        case kEcho: {
          std::uint64_t v = rd.get(id_bits_);
          --echoes_waiting_;
          if (v != 0 && (echo_best_ == 0 || v < echo_best_)) {
            echo_best_ = v;
            echo_best_port_ = in.port;
          }
          if (echoes_waiting_ == 0) {
            if (is_root_)
              root_decide();
            else
              enqueue(parent_port_, msg1(kEcho, echo_best_));
          }
          break;
        }
        case kInit: {
          std::uint64_t v = rd.get(id_bits_);
          if (v == my_id_) {
            start_iteration();
            start_grow();
          } else {
            enqueue(echo_best_port_, msg1(kInit, v));
          }
          break;
        }
        case kGrow: {
          int d = static_cast<int>(rd.get(dist_bits_));
          if (ball_depth_ == d - 1) {
            send_joins();
          } else {
            for (int p : ball_children_) enqueue(p, grow_msg(d));
            recend_waiting_ = static_cast<int>(ball_children_.size());
            if (recend_waiting_ == 0) {
              // no subtree below: report completion immediately
              enqueue(ball_parent_, msg(kRecEnd));
              recend_waiting_ = -1;
            }
          }
          break;
        }
        case kJoin: {
          if (active_ && !in_ball_) {
            in_ball_ = true;
            dying_ = false;
            ball_parent_ = in.port;
            ball_depth_ = static_cast<int>(rd.get(dist_bits_));
            ball_children_.clear();
            route_.clear();
            recend_waiting_ = -1;
            enqueue(in.port, msg(kAccept));
            // upload the whole adjacency with liveness flags
            for (int p = 1; p <= degree_; ++p)
              if (nbr_id_[p - 1] != 0)
                enqueue(ball_parent_,
                        rec_msg(my_id_, nbr_id_[p - 1],
                                nbr_active_[p - 1] != 0));
            enqueue(ball_parent_, msg(kRecEnd));
          }
          break;
        }
        case kAccept:
          ball_children_.push_back(in.port);
          route_[in.sender_id] = in.port;
          ++recend_waiting_;
          break;
        case kRec: {
          std::uint64_t a = rd.get(id_bits_);
          std::uint64_t b = rd.get(id_bits_);
          bool act = rd.get(1) != 0;
          if (initiator_) {
            records_[a].emplace_back(b, act);
            if (!depth_of_.count(a)) depth_of_[a] = grow_depth_;
            if (!route_.count(a)) route_[a] = in.port;
          } else {
            route_[a] = in.port;
            enqueue(ball_parent_, in.payload);
          }
          break;
        }
        case kRecEnd:
          --recend_waiting_;
          if (recend_waiting_ == 0 && !accept_window_open_) {
            if (initiator_)
              grow_finished();
            else {
              enqueue(ball_parent_, msg(kRecEnd));
              recend_waiting_ = -1;
            }
          }
          break;
        case kSelect: {
          std::uint64_t v = rd.get(id_bits_);
          if (v == my_id_)
            in_solution_ = true;
          else if (route_.count(v))
            enqueue(route_.at(v), in.payload);
          else {
            // final hop toward a fringe vertex
            for (int p = 1; p <= degree_; ++p)
              if (nbr_id_[p - 1] == v) {
                enqueue(p, in.payload);
                break;
              }
          }
          break;
        }
        case kSelectVia: {
          std::uint64_t member = rd.get(id_bits_);
          std::uint64_t target = rd.get(id_bits_);
          if (member == my_id_) {
            for (int p = 1; p <= degree_; ++p)
              if (nbr_id_[p - 1] == target) {
                enqueue(p, msg1(kSelect, target));
                break;
              }
          } else {
            enqueue(route_.at(member), in.payload);
          }
          break;
        }
        case kSelectMate: {
          std::uint64_t v = rd.get(id_bits_);
          std::uint64_t mate = rd.get(id_bits_);
          if (v == my_id_) {
            in_solution_ = true;
            out_.chosen_neighbor = mate;
          } else {
            enqueue(route_.at(v), in.payload);
          }
          break;
        }
        case kSpare: {
          std::uint64_t v = rd.get(id_bits_);
          if (v == my_id_)
            spared_ = true;
          else
            enqueue(route_.at(v), in.payload);
          break;
        }
        case kDelete:
          if (spared_) {
            // rim vertex kept alive for later matching rounds
            spared_ = false;
            in_ball_ = false;
            enqueue(ball_parent_, msg(kByeDone));
            break;
          }
          dying_ = true;
          byedone_waiting_ = static_cast<int>(ball_children_.size());
          for (int p : ball_children_) enqueue(p, msg(kDelete));
          break;
        case kByeDone:
          --byedone_waiting_;
          break;
        case kBye:
          nbr_active_[in.port - 1] = 0;
          break;
        case kIterDone:
          if (is_root_)
            start_poll();
          else
            enqueue(parent_port_, msg(kIterDone));
          break;
        case kFinish:
          for (int p : tree_children_) enqueue(p, msg(kFinish));
          finished_ = true;
          break;
      }
    }

    // setup schedule
    if (r == 1) {
      for (int p = 1; p <= degree_; ++p) enqueue(p, race_msg());
      announce_pending_ = false;
    } else if (r <= cfg_.n + 3) {
      if (announce_pending_) {
        for (int p = 1; p <= degree_; ++p) enqueue(p, race_msg());
        announce_pending_ = false;
      }
    } else if (r == cfg_.n + 4) {
      is_root_ = best_root_ == my_id_;
      if (!is_root_) enqueue(parent_port_, msg(kAdopt));
    } else if (r == cfg_.n + 6 && is_root_) {
      // adoptions arrived last round; run the first poll
      start_poll();
    }

    // close a join window: children are those that answered
    if (accept_window_open_ && r >= accept_round_) {
      accept_window_open_ = false;
      if (recend_waiting_ == 0) {
        if (initiator_)
          grow_finished();
        else {
          enqueue(ball_parent_, msg(kRecEnd));
          recend_waiting_ = -1;
        }
      }
    }
    maybe_byedone();

    // drain one payload per port
    bool pending = false;
    for (int p = 1; p <= degree_; ++p) {
      if (outq_[p - 1].empty()) continue;
      ctx.send(p, std::move(outq_[p - 1].front()));
      outq_[p - 1].pop_front();
      if (!outq_[p - 1].empty()) pending = true;
    }

    if (finished_ && !pending) return Wake::halt();
    if (pending) return Wake::next();
    if (r < cfg_.n + 6) return Wake::next();
    if (accept_window_open_) return Wake::until(accept_round_);
    return Wake::on_message();
  }

  NodeOutput output() const override {
    NodeOutput out = out_;
    out.in_solution = in_solution_;
    return out;
  }
};

}  // namespace

ProgramFactory ball_growing_program(const BallGrowingConfig& cfg) {
  return [cfg] { return std::make_unique<BallGrow>(cfg); };
}

}  // namespace congest
