#include "congest/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace congest {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string write_graph(const PortGraph& g) {
  std::ostringstream out;
  out << "pg " << g.n() << ' ' << g.m() << '\n';
  for (int u = 0; u < g.n(); ++u)
    out << "node " << g.id(u) << ' ' << g.degree(u) << '\n';
  for (int u = 0; u < g.n(); ++u)
    for (int p = 1; p <= g.degree(u); ++p) {
      const auto& h = g.at(u, p);
      if (h.neighbor > u)
        out << "edge " << g.id(u) << ' ' << p << ' ' << g.id(h.neighbor)
            << ' ' << h.their_port << '\n';
    }
  return out.str();
}

PortGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line()) fail(1, "empty file");
  std::istringstream hdr(line);
  std::string tag;
  long n = 0, m = 0;
  if (!(hdr >> tag >> n >> m) || tag != "pg")
    fail(lineno, "expected header 'pg <n> <m>'");
  if (n < 1) fail(lineno, "n must be >= 1");
  if (m < 0) fail(lineno, "m must be >= 0");

  std::vector<std::uint64_t> ids(n);
  std::vector<int> deg(n);
  std::unordered_map<std::uint64_t, int> id_to_idx;
  for (long i = 0; i < n; ++i) {
    if (!next_line()) fail(lineno + 1, "missing node line");
    std::istringstream ls(line);
    std::uint64_t id;
    int d;
    if (!(ls >> tag >> id >> d) || tag != "node")
      fail(lineno, "expected 'node <id> <deg>'");
    if (d < 0) fail(lineno, "negative degree");
    if (!id_to_idx.emplace(id, static_cast<int>(i)).second)
      fail(lineno, "duplicate node ID " + std::to_string(id));
    ids[i] = id;
    deg[i] = d;
  }

  struct Slot {
    int neighbor = -1;
    int their_port = -1;
  };
  std::vector<std::vector<Slot>> adj(n);
  for (long i = 0; i < n; ++i) adj[i].resize(deg[i]);

  for (long e = 0; e < m; ++e) {
    if (!next_line()) fail(lineno + 1, "missing edge line");
    std::istringstream ls(line);
    std::uint64_t uid, vid;
    int pu, pv;
    if (!(ls >> tag >> uid >> pu >> vid >> pv) || tag != "edge")
      fail(lineno, "expected 'edge <u> <pu> <v> <pv>'");
    auto ui = id_to_idx.find(uid), vi = id_to_idx.find(vid);
    if (ui == id_to_idx.end()) fail(lineno, "unknown node ID");
    if (vi == id_to_idx.end()) fail(lineno, "unknown node ID");
    int u = ui->second, v = vi->second;
    if (u == v) fail(lineno, "self-loop");
    if (pu < 1 || pu > deg[u] || pv < 1 || pv > deg[v])
      fail(lineno, "port out of range 1..deg");
    if (adj[u][pu - 1].neighbor != -1 || adj[v][pv - 1].neighbor != -1)
      fail(lineno, "port already occupied");
    adj[u][pu - 1] = {v, pv};
    adj[v][pv - 1] = {u, pu};
  }
  if (next_line()) fail(lineno, "trailing content after last edge");

  for (long u = 0; u < n; ++u)
    for (int p = 1; p <= deg[u]; ++p)
      if (adj[u][p - 1].neighbor == -1)
        fail(lineno, "node " + std::to_string(ids[u]) + " port " +
                         std::to_string(p) + " unassigned");

  std::vector<std::vector<PortGraph::Half>> slots(n);
  for (long u = 0; u < n; ++u) {
    slots[u].resize(deg[u]);
    for (int p = 1; p <= deg[u]; ++p)
      slots[u][p - 1] = {adj[u][p - 1].neighbor, adj[u][p - 1].their_port};
  }
  try {
    return PortGraph::build_with_ports(std::move(ids), std::move(slots));
  } catch (const std::exception& ex) {
    fail(lineno, std::string("invariant violation: ") + ex.what());
  }
}

void save_graph(const PortGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << write_graph(g);
}

PortGraph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

}  // namespace congest
