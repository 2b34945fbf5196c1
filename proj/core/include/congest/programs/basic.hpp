#pragma once

#include <cstdint>

#include "congest/sim.hpp"

namespace congest {

// Halts immediately without sending anything.
ProgramFactory silent_program();

// Sends an empty (one-bit) message on every port in round 1, reads the
// replies in round 2, then halts.  Output note carries the received count.
ProgramFactory flood_one_bit_program(int rounds = 1);

// A deterministic finite-state sender: in each of `rounds` rounds a node
// sends on a hash-selected sparse subset of its ports; its state evolves
// from everything it receives, and the final state is the output.  Used to
// probe crossing indistinguishability with arbitrary program behavior.
// No private randomness: same graph, same outputs.
ProgramFactory random_fsm_program(std::uint64_t program_seed, int rounds,
                                  int sparsity);

}  // namespace congest
