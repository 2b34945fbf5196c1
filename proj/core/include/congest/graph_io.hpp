#pragma once

#include <string>

#include "congest/port_graph.hpp"

namespace congest {

// Text graph format:
//   pg <n> <m>
//   node <id> <deg>           (one per node, in internal index order)
//   edge <u> <pu> <v> <pv>    (one per edge; u,v are node IDs)
// Edges are emitted from the lower-index endpoint in port order, so
// write/parse round-trips are byte-identical.
std::string write_graph(const PortGraph& g);

// Parses the format above; invariant violations are reported with the
// offending line number.
PortGraph parse_graph(const std::string& text);

void save_graph(const PortGraph& g, const std::string& path);
PortGraph load_graph(const std::string& path);

}  // namespace congest
