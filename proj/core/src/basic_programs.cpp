#include "congest/programs/basic.hpp"

namespace congest {

namespace {

struct Silent final : NodeProgram {
  void init(const NodeInfo&, Rng&) override {}
  Wake step(RoundCtx&) override { return Wake::halt(); }
  NodeOutput output() const override { return {}; }
};

struct Flood final : NodeProgram {
  explicit Flood(int rounds) : rounds_(rounds) {}
  int rounds_;
  int degree_ = 0;
  long received_ = 0;

  void init(const NodeInfo& info, Rng&) override { degree_ = info.degree; }

  Wake step(RoundCtx& ctx) override {
    received_ += static_cast<long>(ctx.inbox().size());
    if (ctx.round() <= rounds_)
      for (int p = 1; p <= degree_; ++p) ctx.send(p, "");
    if (ctx.round() > rounds_) return Wake::halt();
    return Wake::next();
  }

  NodeOutput output() const override {
    NodeOutput out;
    out.note = "recv=" + std::to_string(received_);
    return out;
  }
};

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  return Rng::splitmix64(x);
}

struct RandomFsm final : NodeProgram {
  RandomFsm(std::uint64_t seed, int rounds, int sparsity)
      : seed_(seed), rounds_(rounds), sparsity_(sparsity) {}
  std::uint64_t seed_;
  int rounds_;
  int sparsity_;
  int degree_ = 0;
  std::uint64_t state_ = 0;

  void init(const NodeInfo& info, Rng&) override {
    degree_ = info.degree;
    state_ = mix(mix(seed_, info.id), static_cast<std::uint64_t>(info.degree));
  }

  Wake step(RoundCtx& ctx) override {
    for (const auto& in : ctx.inbox()) {
      state_ = mix(state_, static_cast<std::uint64_t>(in.port));
      state_ = mix(state_, in.sender_id);
      for (unsigned char c : in.payload) state_ = mix(state_, c);
    }
    if (ctx.round() > rounds_) return Wake::halt();
    for (int p = 1; p <= degree_; ++p) {
      std::uint64_t h = mix(mix(state_, static_cast<std::uint64_t>(p)),
                            static_cast<std::uint64_t>(ctx.round()));
      if (h % static_cast<std::uint64_t>(sparsity_) == 0)
        ctx.send(p, std::string(1, static_cast<char>(h >> 8)));
    }
    return Wake::next();
  }

  NodeOutput output() const override {
    NodeOutput out;
    out.in_solution = (state_ & 1) != 0;
    out.note = std::to_string(state_);
    return out;
  }
};

}  // namespace

ProgramFactory silent_program() {
  return [] { return std::make_unique<Silent>(); };
}

ProgramFactory flood_one_bit_program(int rounds) {
  return [rounds] { return std::make_unique<Flood>(rounds); };
}

ProgramFactory random_fsm_program(std::uint64_t program_seed, int rounds,
                                  int sparsity) {
  return
      [=] { return std::make_unique<RandomFsm>(program_seed, rounds,
                                               sparsity); };
}

}  // namespace congest
