#include "congest/lb_graphs.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "congest/graph_io.hpp"
#include "json.hpp"

namespace congest {

namespace {

using Edges = std::vector<std::pair<int, int>>;

bool is_power_of_two(int k) { return k >= 1 && (k & (k - 1)) == 0; }

int log2_exact(int k) {
  int b = 0;
  while ((1 << b) < k) ++b;
  return b;
}

// Bit position h (1-based, LSB first) of a 1-based index.
int index_bit(int idx, int h) { return ((idx - 1) >> (h - 1)) & 1; }

bool intersecting(const std::vector<std::uint8_t>& x,
                  const std::vector<std::uint8_t>& y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] && y[i]) return true;
  return false;
}

void require_bits(const std::vector<std::uint8_t>& v, std::size_t len,
                  const char* name) {
  if (v.size() != len)
    throw std::invalid_argument(std::string(name) + " must have " +
                                std::to_string(len) + " bits, got " +
                                std::to_string(v.size()));
}

std::vector<std::uint64_t> seq_ids(int n) {
  std::vector<std::uint64_t> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = static_cast<std::uint64_t>(i) + 1;
  return ids;
}

void add_clique(Edges& e, int lo, int count) {
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) e.emplace_back(lo + i, lo + j);
}

void add_cycle(Edges& e, const std::vector<int>& seq) {
  for (std::size_t i = 0; i < seq.size(); ++i)
    e.emplace_back(seq[i], seq[(i + 1) % seq.size()]);
}

// Shared layout of the two exact families: row blocks A1,A2,B1,B2 of size k
// each, then 2*log2(k) gadget cells of `cell` vertices per cycle position.
struct ExactLayout {
  int k, l, logk, cell;
  int a1(int i) const { return i - 1; }
  int a2(int i) const { return k + i - 1; }
  int b1(int i) const { return 2 * k + i - 1; }
  int b2(int i) const { return 3 * k + i - 1; }
  int gadget_base(int i) const { return 4 * k + (i - 1) * cell * l; }
  int t(int i, int j) const { return gadget_base(i) + cell * (j - 1); }
  int f(int i, int j) const { return gadget_base(i) + cell * (j - 1) + 1; }
  int u(int i, int j) const { return gadget_base(i) + cell * (j - 1) + 2; }
  int total() const { return 4 * k + 2 * logk * cell * l; }
};

void label_exact(LbInstance& inst, const ExactLayout& L) {
  auto& role = inst.role;
  auto& part = inst.sep_part;
  role.assign(L.total(), "");
  part.assign(L.total(), 0);
  for (int i = 1; i <= L.k; ++i) {
    role[L.a1(i)] = "A1";
    role[L.a2(i)] = "A2";
    role[L.b1(i)] = "B1";
    role[L.b2(i)] = "B2";
    part[L.a1(i)] = part[L.a2(i)] = 1;
    part[L.b1(i)] = part[L.b2(i)] = L.l;
  }
  for (int i = 1; i <= 2 * L.logk; ++i)
    for (int j = 1; j <= L.l; ++j) {
      role[L.t(i, j)] = "t" + std::to_string(i) + "_" + std::to_string(j);
      role[L.f(i, j)] = "f" + std::to_string(i) + "_" + std::to_string(j);
      part[L.t(i, j)] = part[L.f(i, j)] = j;
      if (L.cell == 3) {
        role[L.u(i, j)] = "u" + std::to_string(i) + "_" + std::to_string(j);
        part[L.u(i, j)] = j;
      }
    }
}

// Row-to-gadget wiring shared by both families: a1/b1 follow the bits of
// their index into cells 1..logk, a2/b2 into cells logk+1..2logk; the a-side
// attaches at cycle position 1 and the b-side at position l.
void add_bit_edges(Edges& e, const ExactLayout& L) {
  for (int i = 1; i <= L.k; ++i)
    for (int h = 1; h <= L.logk; ++h) {
      e.emplace_back(L.a1(i),
                     index_bit(i, h) ? L.t(h, 1) : L.f(h, 1));
      e.emplace_back(L.b1(i),
                     index_bit(i, h) ? L.t(h, L.l) : L.f(h, L.l));
      e.emplace_back(L.a2(i), index_bit(i, h) ? L.t(L.logk + h, 1)
                                              : L.f(L.logk + h, 1));
      e.emplace_back(L.b2(i), index_bit(i, h) ? L.t(L.logk + h, L.l)
                                              : L.f(L.logk + h, L.l));
    }
}

void check_exact_params(int k, int l) {
  if (!is_power_of_two(k) || k < 2)
    throw std::invalid_argument("k must be a power of 2 (k >= 2)");
  if (l < 2 || l % 2 != 0) throw std::invalid_argument("l must be even >= 2");
}

}  // namespace

LbInstance mvc_exact_family(int k, int l, const std::vector<std::uint8_t>& x,
                            const std::vector<std::uint8_t>& y) {
  check_exact_params(k, l);
  require_bits(x, static_cast<std::size_t>(k) * k, "x");
  require_bits(y, static_cast<std::size_t>(k) * k, "y");
  ExactLayout L{k, l, log2_exact(k), 2};

  Edges e;
  add_clique(e, L.a1(1), k);
  add_clique(e, L.a2(1), k);
  add_clique(e, L.b1(1), k);
  add_clique(e, L.b2(1), k);
  for (int i = 1; i <= 2 * L.logk; ++i) {
    std::vector<int> seq;
    for (int j = 1; j <= l; ++j) seq.push_back(j % 2 ? L.f(i, j) : L.t(i, j));
    for (int j = l; j >= 1; --j) seq.push_back(j % 2 ? L.t(i, j) : L.f(i, j));
    add_cycle(e, seq);
  }
  add_bit_edges(e, L);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) {
      if (!x[(i - 1) * k + (j - 1)]) e.emplace_back(L.a1(i), L.a2(j));
      if (!y[(i - 1) * k + (j - 1)]) e.emplace_back(L.b1(i), L.b2(j));
    }

  LbInstance inst;
  inst.graph = PortGraph::build(seq_ids(L.total()), e);
  inst.family = "mvc_family";
  inst.params = {{"k", std::to_string(k)}, {"l", std::to_string(l)}};
  inst.x = x;
  inst.y = y;
  label_exact(inst, L);
  const long base = 4L * k + 2L * l * L.logk;
  if (intersecting(x, y))
    inst.predicted = {Problem::MVC, '=', base - 4, "mvc_family"};
  else
    inst.predicted = {Problem::MVC, '>', base - 3, "mvc_family"};
  return inst;
}

LbInstance mds_exact_family(int k, int l, const std::vector<std::uint8_t>& x,
                            const std::vector<std::uint8_t>& y) {
  check_exact_params(k, l);
  require_bits(x, static_cast<std::size_t>(k) * k, "x");
  require_bits(y, static_cast<std::size_t>(k) * k, "y");
  ExactLayout L{k, l, log2_exact(k), 3};

  Edges e;
  // no edges between row vertices here
  for (int i = 1; i <= 2 * L.logk; ++i) {
    std::vector<int> seq;
    for (int j = 1; j <= l; j += 2) {
      seq.push_back(L.f(i, j));
      seq.push_back(L.u(i, j + 1));
      seq.push_back(L.t(i, j + 1));
    }
    for (int j = l; j >= 2; j -= 2) {
      seq.push_back(L.f(i, j));
      seq.push_back(L.u(i, j - 1));
      seq.push_back(L.t(i, j - 1));
    }
    add_cycle(e, seq);
  }
  add_bit_edges(e, L);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) {
      if (x[(i - 1) * k + (j - 1)]) e.emplace_back(L.a1(i), L.a2(j));
      if (y[(i - 1) * k + (j - 1)]) e.emplace_back(L.b1(i), L.b2(j));
    }

  LbInstance inst;
  inst.graph = PortGraph::build(seq_ids(L.total()), e);
  inst.family = "mds_family";
  inst.params = {{"k", std::to_string(k)}, {"l", std::to_string(l)}};
  inst.x = x;
  inst.y = y;
  label_exact(inst, L);
  const long base = 2L * l * L.logk;
  if (intersecting(x, y))
    inst.predicted = {Problem::MDS, '<', base + 2, "mds_family"};
  else
    inst.predicted = {Problem::MDS, '>', base + 3, "mds_family"};
  return inst;
}

namespace {

struct CrossLayout {
  int n;
  int a1(int i) const { return i - 1; }
  int a2(int i) const { return n + i - 1; }
  int b1(int i) const { return 2 * n + i - 1; }
  int b2(int i) const { return 3 * n + i - 1; }
  int c1(int i) const { return 4 * n + i - 1; }
  int c2(int i) const { return 5 * n + i - 1; }
  int astar() const { return 6 * n; }
  int bstar() const { return 6 * n + 1; }
};

}  // namespace

LbInstance mds_crossing_graph(int n, const std::vector<std::uint8_t>& x,
                              const std::vector<std::uint8_t>& y) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  require_bits(x, static_cast<std::size_t>(n) * n, "x");
  require_bits(y, static_cast<std::size_t>(n) * n, "y");
  CrossLayout L{n};

  Edges e;
  add_clique(e, L.c1(1), n);
  add_clique(e, L.c2(1), n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (j != i) {
        e.emplace_back(L.c1(i), L.a1(j));
        e.emplace_back(L.c1(i), L.b1(j));
        e.emplace_back(L.c2(i), L.a2(j));
        e.emplace_back(L.c2(i), L.b2(j));
      }
  for (int i = 1; i <= n; ++i) {
    e.emplace_back(L.astar(), L.a1(i));
    e.emplace_back(L.bstar(), L.b1(i));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (x[(i - 1) * n + (j - 1)]) e.emplace_back(L.a1(i), L.a2(j));
      if (y[(i - 1) * n + (j - 1)]) e.emplace_back(L.b1(i), L.b2(j));
    }

  LbInstance inst;
  inst.graph = PortGraph::build(seq_ids(6 * n + 2), e);
  inst.family = "mds_crossing";
  inst.params = {{"n", std::to_string(n)}};
  inst.x = x;
  inst.y = y;
  inst.role.assign(6 * n + 2, "");
  for (int i = 1; i <= n; ++i) {
    inst.role[L.a1(i)] = "A1";
    inst.role[L.a2(i)] = "A2";
    inst.role[L.b1(i)] = "B1";
    inst.role[L.b2(i)] = "B2";
    inst.role[L.c1(i)] = "C1";
    inst.role[L.c2(i)] = "C2";
  }
  inst.role[L.astar()] = "a*";
  inst.role[L.bstar()] = "b*";
  inst.sep_part.assign(6 * n + 2, 0);
  if (intersecting(x, y))
    inst.predicted = {Problem::MDS, '<', 4, "mds_crossing"};
  else
    inst.predicted = {Problem::MDS, '>', 5, "mds_crossing"};
  return inst;
}

LbInstance mds_fixed_member(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("n must be even >= 4");
  std::vector<std::uint8_t> x(static_cast<std::size_t>(n) * n, 0);
  for (int i = 1; i <= n; ++i)
    for (int d = 0; d < n / 2; ++d) {
      int j = (i - 1 + d) % n + 1;
      x[(i - 1) * n + (j - 1)] = 1;
    }
  std::vector<std::uint8_t> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = !x[i];
  LbInstance inst = mds_crossing_graph(n, x, y);
  inst.family = "mds_fixed_member";
  inst.predicted.tag = "mds_fixed_member";
  return inst;
}

std::vector<EdgeRef> eligible_crossings(const LbInstance& inst,
                                        const EdgeRef& e) {
  if (inst.family != "mds_fixed_member" && inst.family != "mds_crossing")
    throw std::invalid_argument("eligible_crossings: wrong family");
  const int n = std::stoi(inst.params.at("n"));
  CrossLayout L{n};
  if (!(e.u >= L.a1(1) && e.u <= L.a1(n) && e.v >= L.a2(1) && e.v <= L.a2(n)))
    throw std::invalid_argument("eligible_crossings: e must be an A1-A2 edge");
  const int i = e.u - L.a1(1) + 1;
  const int j = e.v - L.a2(1) + 1;
  auto xbit = [&](int r, int c) { return inst.x[(r - 1) * n + (c - 1)]; };
  if (!xbit(i, j)) throw std::invalid_argument("e is not an edge");
  std::vector<EdgeRef> out;
  // partners {a1^p, a2^q} with p not adjacent to a2^j, q not adjacent to
  // a1^i; crossing then creates {a1^i,a2^q} and {a1^p,a2^j}, so the pairing
  // orients e2 as (a2^q, a1^p).
  for (int q = 1; q <= n; ++q) {
    if (xbit(i, q)) continue;
    for (int p = 1; p <= n; ++p) {
      if (xbit(p, j)) continue;
      if (!xbit(p, q)) continue;
      out.push_back(EdgeRef::of(inst.graph, L.a2(q), L.a1(p)));
    }
  }
  return out;
}

namespace {

LbInstance tripartite_double(int t, int ysize, const char* family) {
  // one copy: X | Y | Z, complete X-Y and Y-Z; then a disjoint twin
  const int copy = 2 * t + ysize;
  Edges e;
  auto X = [&](int copy_i, int i) { return copy_i * copy + i; };
  auto Y = [&](int copy_i, int i) { return copy_i * copy + t + i; };
  auto Z = [&](int copy_i, int i) { return copy_i * copy + t + ysize + i; };
  for (int ci = 0; ci < 2; ++ci)
    for (int yi = 0; yi < ysize; ++yi) {
      for (int xi = 0; xi < t; ++xi) e.emplace_back(X(ci, xi), Y(ci, yi));
      for (int zi = 0; zi < t; ++zi) e.emplace_back(Y(ci, yi), Z(ci, zi));
    }
  LbInstance inst;
  inst.graph = PortGraph::build(seq_ids(2 * copy), e);
  inst.family = family;
  inst.role.assign(2 * copy, "");
  inst.sep_part.assign(2 * copy, 0);
  for (int ci = 0; ci < 2; ++ci) {
    const char* suffix = ci == 0 ? "" : "'";
    for (int i = 0; i < t; ++i) inst.role[X(ci, i)] = std::string("X") + suffix;
    for (int i = 0; i < ysize; ++i)
      inst.role[Y(ci, i)] = std::string("Y") + suffix;
    for (int i = 0; i < t; ++i) inst.role[Z(ci, i)] = std::string("Z") + suffix;
  }
  return inst;
}

}  // namespace

LbInstance mvc_base_graph(int t, int c) {
  if (c < 1) throw std::invalid_argument("c must be >= 1");
  if (t <= 0 || t % (4 * c) != 0)
    throw std::invalid_argument("t must be a positive multiple of 4c");
  const int ysize = t / (4 * c);
  LbInstance inst = tripartite_double(t, ysize, "mvc_base");
  inst.params = {{"t", std::to_string(t)}, {"c", std::to_string(c)}};
  // the optimum cover is Y u Y'
  inst.predicted = {Problem::MVC, '=', t / (2 * c), "mvc_base"};
  return inst;
}

LbInstance maxis_base_graph(int t, long eps_num, long eps_den) {
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  if (eps_num <= 0 || eps_den <= 0 || eps_num >= eps_den)
    throw std::invalid_argument("eps must be in (0,1)");
  if ((static_cast<long>(t) * eps_num) % eps_den != 0)
    throw std::invalid_argument("eps*t must be an integer");
  const int ysize = static_cast<int>(t * eps_num / eps_den);
  if (ysize < 1) throw std::invalid_argument("eps*t must be >= 1");
  LbInstance inst = tripartite_double(t, ysize, "maxis_base");
  inst.params = {{"t", std::to_string(t)},
                 {"eps", std::to_string(eps_num) + "/" +
                             std::to_string(eps_den)}};
  inst.predicted = {Problem::MaxIS, '=', 4L * t, "maxis_base"};
  return inst;
}

LbInstance maxm_lb_graph(int n, long eps_num, long eps_den,
                         std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  if (eps_num <= 0 || eps_den <= 0)
    throw std::invalid_argument("eps must be positive");
  // gamma = eps / 7
  const long gn = (static_cast<long>(n) * eps_num) / (7 * eps_den);
  if (gn < 1)
    throw std::invalid_argument(
        "floor(gamma*n) must be >= 1 (eps too small for this n)");
  const int clique = static_cast<int>(gn);
  const int na = n - clique;

  Edges e;
  auto A = [&](int i) { return i - 1; };
  auto B = [&](int i) { return n + i - 1; };
  // N_A = u_1..u_na, C_A = u_{na+1}..u_n; same split on the B side.
  for (int i = 1; i <= na; ++i)
    for (int j = na + 1; j <= n; ++j) {
      e.emplace_back(A(i), A(j));
      e.emplace_back(B(i), B(j));
    }
  for (int i = na + 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      e.emplace_back(A(i), A(j));
      e.emplace_back(B(i), B(j));
    }
  for (int i = 1; i <= n; ++i) e.emplace_back(A(i), B(i));  // valuable edges

  LbInstance inst;
  inst.graph = PortGraph::build(seq_ids(2 * n), e);
  inst.graph = assign_ids(inst.graph, derive_seed(seed, 0x6d6d /* mm */),
                          static_cast<std::uint64_t>(2 * n));
  inst.graph = assign_ports(inst.graph, derive_seed(seed, 0x7070 /* pp */));
  inst.family = "maxm_lb";
  inst.params = {{"n", std::to_string(n)},
                 {"eps", std::to_string(eps_num) + "/" +
                             std::to_string(eps_den)},
                 {"gamma_n", std::to_string(gn)},
                 {"seed", std::to_string(seed)}};
  inst.role.assign(2 * n, "");
  for (int i = 1; i <= n; ++i) {
    inst.role[A(i)] = i <= na ? "N_A" : "C_A";
    inst.role[B(i)] = i <= na ? "N_B" : "C_B";
  }
  inst.sep_part.assign(2 * n, 0);
  inst.predicted = {Problem::MaxM, '=', n, "maxm_planted"};
  return inst;
}

SeparationReport check_separation(const LbInstance& inst,
                                  const OracleGuard& guard) {
  SeparationReport rep;
  if (inst.family != "mvc_family" && inst.family != "mds_family")
    throw std::invalid_argument("check_separation: wrong family tag " +
                                inst.family);
  const int k = std::stoi(inst.params.at("k"));
  const int l = std::stoi(inst.params.at("l"));
  auto regen = [&](const std::vector<std::uint8_t>& x,
                   const std::vector<std::uint8_t>& y) {
    return inst.family == "mvc_family" ? mvc_exact_family(k, l, x, y)
                                       : mds_exact_family(k, l, x, y);
  };

  auto diff_within = [&](const PortGraph& a, const PortGraph& b, int part) {
    std::set<std::array<int, 2>> ea(a.edges().begin(), a.edges().end());
    std::set<std::array<int, 2>> eb(b.edges().begin(), b.edges().end());
    std::vector<std::array<int, 2>> sym;
    std::set_symmetric_difference(ea.begin(), ea.end(), eb.begin(), eb.end(),
                                  std::back_inserter(sym));
    for (const auto& ed : sym)
      if (inst.sep_part[ed[0]] != part || inst.sep_part[ed[1]] != part)
        return false;
    return true;
  };

  rep.only_x_side = true;
  rep.only_y_side = true;
  for (std::size_t b = 0; b < inst.x.size(); ++b) {
    auto x2 = inst.x;
    x2[b] = !x2[b];
    if (!diff_within(inst.graph, regen(x2, inst.y).graph, 1))
      rep.only_x_side = false;
    auto y2 = inst.y;
    y2[b] = !y2[b];
    if (!diff_within(inst.graph, regen(inst.x, y2).graph, l))
      rep.only_y_side = false;
  }

  rep.local_cuts = true;
  for (const auto& ed : inst.graph.edges())
    if (std::abs(inst.sep_part[ed[0]] - inst.sep_part[ed[1]]) > 1)
      rep.local_cuts = false;

  std::ostringstream os;
  try {
    Solution sol = solve(inst.predicted.problem, inst.graph, guard);
    rep.oracle_value = sol.size();
    switch (inst.predicted.cmp) {
      case '=': rep.predicted_ok = rep.oracle_value == inst.predicted.value; break;
      case '<': rep.predicted_ok = rep.oracle_value <= inst.predicted.value; break;
      case '>': rep.predicted_ok = rep.oracle_value >= inst.predicted.value; break;
    }
    os << "oracle " << problem_name(inst.predicted.problem) << "="
       << rep.oracle_value << " predicted " << inst.predicted.cmp
       << inst.predicted.value;
  } catch (const OracleSizeError& ex) {
    rep.oracle_skipped = true;
    os << "oracle skipped: " << ex.what();
  }
  rep.detail = os.str();
  return rep;
}

std::string bits_to_hex(const std::vector<std::uint8_t>& bits) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int nib = 0;
    for (std::size_t b = 0; b < 4 && i + b < bits.size(); ++b)
      if (bits[i + b]) nib |= 1 << b;
    out += digits[nib];
  }
  return out;
}

std::vector<std::uint8_t> hex_to_bits(const std::string& hex,
                                      std::size_t count) {
  std::vector<std::uint8_t> bits(count, 0);
  if (hex.size() * 4 < count)
    throw std::invalid_argument("hex string too short for " +
                                std::to_string(count) + " bits");
  for (std::size_t t = 0; t < count; ++t) {
    char c = hex[t / 4];
    int nib;
    if (c >= '0' && c <= '9') nib = c - '0';
    else if (c >= 'a' && c <= 'f') nib = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') nib = c - 'A' + 10;
    else throw std::invalid_argument("bad hex digit");
    bits[t] = (nib >> (t % 4)) & 1;
  }
  return bits;
}

std::string instance_sidecar_json(const LbInstance& inst) {
  nlohmann::json j;
  j["family"] = inst.family;
  j["params"] = inst.params;
  j["x"] = bits_to_hex(inst.x);
  j["x_bits"] = inst.x.size();
  j["y"] = bits_to_hex(inst.y);
  j["y_bits"] = inst.y.size();
  j["role"] = inst.role;
  j["sep_part"] = inst.sep_part;
  j["predicted"] = {{"problem", problem_name(inst.predicted.problem)},
                    {"cmp", std::string(1, inst.predicted.cmp)},
                    {"value", inst.predicted.value},
                    {"tag", inst.predicted.tag}};
  return j.dump(2) + "\n";
}

void save_instance(const LbInstance& inst, const std::string& base_path) {
  save_graph(inst.graph, base_path + ".pg");
  std::ofstream out(base_path + ".json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + base_path + ".json");
  out << instance_sidecar_json(inst);
}

LbInstance load_instance(const std::string& base_path) {
  LbInstance inst;
  inst.graph = load_graph(base_path + ".pg");
  std::ifstream in(base_path + ".json", std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + base_path + ".json");
  nlohmann::json j;
  in >> j;
  inst.family = j.at("family").get<std::string>();
  inst.params = j.at("params").get<std::map<std::string, std::string>>();
  inst.x = hex_to_bits(j.at("x").get<std::string>(),
                       j.at("x_bits").get<std::size_t>());
  inst.y = hex_to_bits(j.at("y").get<std::string>(),
                       j.at("y_bits").get<std::size_t>());
  inst.role = j.at("role").get<std::vector<std::string>>();
  inst.sep_part = j.at("sep_part").get<std::vector<int>>();
  auto& p = j.at("predicted");
  inst.predicted.problem = problem_from_name(p.at("problem").get<std::string>());
  inst.predicted.cmp = p.at("cmp").get<std::string>()[0];
  inst.predicted.value = p.at("value").get<long>();
  inst.predicted.tag = p.at("tag").get<std::string>();
  return inst;
}

}  // namespace congest
