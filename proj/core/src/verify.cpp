#include "congest/verify.hpp"

#include <sstream>

namespace congest {

VerifyReport verify_instance(const LbInstance& inst,
                             const OracleGuard& guard) {
  VerifyReport rep;
  rep.predicted = inst.predicted;
  Solution sol = solve(inst.predicted.problem, inst.graph, guard);
  if (!solution_valid(inst.graph, sol))
    throw std::runtime_error("oracle produced an invalid witness");
  rep.optimum = sol.size();
  switch (inst.predicted.cmp) {
    case '=': rep.pass = rep.optimum == inst.predicted.value; break;
    case '<': rep.pass = rep.optimum <= inst.predicted.value; break;
    case '>': rep.pass = rep.optimum >= inst.predicted.value; break;
    default: throw std::runtime_error("bad comparator in predicted opt");
  }
  std::ostringstream os;
  os << inst.family << ": oracle " << problem_name(inst.predicted.problem)
     << "=" << rep.optimum << ", predicted "
     << (inst.predicted.cmp == '<' ? "<=" : inst.predicted.cmp == '>' ? ">="
                                                                      : "=")
     << inst.predicted.value << (rep.pass ? " [ok]" : " [MISMATCH]");
  rep.detail = os.str();
  return rep;
}

}  // namespace congest
