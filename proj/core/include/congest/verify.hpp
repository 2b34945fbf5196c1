#pragma once

#include <string>

#include "congest/lb_graphs.hpp"
#include "congest/oracles.hpp"

namespace congest {

struct VerifyReport {
  bool pass = false;
  long optimum = -1;
  PredictedOpt predicted;
  std::string detail;
};

// Solves the instance's problem exactly and compares against its predicted
// optimum with the stored comparator.  Size-guard refusals propagate.
VerifyReport verify_instance(const LbInstance& inst,
                             const OracleGuard& guard = {});

}  // namespace congest
