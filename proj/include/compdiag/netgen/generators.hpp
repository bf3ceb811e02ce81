#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "compdiag/core/error.hpp"
#include "compdiag/core/graph.hpp"
#include "compdiag/core/io.hpp"
#include "compdiag/core/limits.hpp"
#include "compdiag/netgen/network_spec.hpp"

// Canonical node ids (cluster-major, label-lexicographic inside a cluster):
//
//   hypercube Q_n      id = value of the n-bit label
//   hcn / ccn          id = c * 2^n + p for node (c,p)
//   eh / geh / dual    Class-0 cluster k (bits t..1), member a (bits s+t..t+1):
//                        id = k * 2^s + a
//                      Class-1 cluster a, member b: id = 2^(s+t) + a * 2^t + b
//   hhc                id = X * 2^m + Y (the numeric address)
//   cayley / bubble    id = lexicographic rank of the permutation
//   disc-ring          id = z1 * m + z2
//   dq                 id = (z1 * m + z2) * 2^n + b
namespace compdiag {

// Cluster membership and inter-cluster edges of a clustered network.
struct ClusterStructure {
  std::vector<std::uint32_t> cluster_of;    // per node
  std::vector<std::uint8_t> cluster_class;  // per cluster: 0 or 1 (GEH classes), else 0
  std::vector<Edge> cross_edges;            // u < v, sorted

  std::size_t cluster_count() const noexcept { return cluster_class.size(); }
};

struct ClusteredGraph {
  Graph graph;
  ClusterStructure clusters;
};

// A generated instance together with the spec that produced it.
struct Network {
  NetworkSpec spec;
  Graph graph;
  std::optional<ClusterStructure> clusters;
  std::vector<std::string> tags;
};

inline std::string bit_string(std::uint64_t value, unsigned width) {
  std::string s(width, '0');
  for (unsigned i = 0; i < width; ++i)
    if ((value >> i) & 1U) s[width - 1 - i] = '1';
  return s;
}

namespace detail {

inline void require_nodes(const char* family, std::uint64_t nodes, const Limits& limits) {
  if (nodes > limits.node_cap)
    throw CapExceeded(std::string(family) + " node count (materialization infeasible)", nodes, limits.node_cap);
}

// 2^bits, saturating for absurd exponents.
inline std::uint64_t pow2(std::uint64_t bits) { return bits >= 63 ? kSaturated : std::uint64_t{1} << bits; }

inline void add_edge(std::vector<Edge>& edges, std::uint64_t a, std::uint64_t b) {
  if (a < b) edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
}

inline std::vector<Edge> sorted_unique(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

inline std::vector<Edge> cross_edges_of(const Graph& g, const std::vector<std::uint32_t>& cluster_of) {
  std::vector<Edge> out;
  for (const auto& e : g.edges())
    if (cluster_of[e.u] != cluster_of[e.v]) out.push_back(e);
  return out;
}

// Reads `x <labelA> <labelB>` lines against the given labels.
inline std::vector<Edge> parse_matching_lines(std::istream& is, const Graph& labelled) {
  const auto index = label_index(labelled);
  std::vector<Edge> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tok = split_ws(line);
    if (tok.size() != 3 || tok[0] != "x") throw ParseError("matching line must be 'x <node-A> <node-B>'", line_no);
    const auto a = resolve_node_token(labelled, index, tok[1], line_no);
    const auto b = resolve_node_token(labelled, index, tok[2], line_no);
    out.push_back({std::min(a, b), std::max(a, b)});
  }
  return out;
}

// Every node appears in exactly one override edge and both ends lie in
// different clusters.
inline void require_perfect_cross_matching(const std::vector<Edge>& cross, const std::vector<std::uint32_t>& cluster_of,
                                           const std::vector<std::string>& labels) {
  std::vector<int> uses(cluster_of.size(), 0);
  for (const auto& e : cross) {
    if (e.u == e.v) throw ValidationError("matching pairs node " + labels[e.u] + " with itself");
    if (cluster_of[e.u] == cluster_of[e.v])
      throw ValidationError("matching edge " + labels[e.u] + " - " + labels[e.v] + " stays inside one cluster");
    ++uses[e.u];
    ++uses[e.v];
  }
  for (std::size_t i = 0; i < uses.size(); ++i)
    if (uses[i] != 1)
      throw ValidationError("matching covers node " + labels[i] + " " + std::to_string(uses[i]) + " times (expected 1)");
}

}  // namespace detail

inline std::vector<Edge> read_matching_override(const std::string& path, const Graph& labelled) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open matching override file '" + path + "'");
  return detail::parse_matching_lines(is, labelled);
}

inline Graph gen_hypercube(unsigned n, const Limits& limits = {}) {
  if (n < 1) throw ValidationError("hypercube requires n >= 1");
  detail::require_nodes("hypercube", detail::pow2(n), limits);
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<Edge> edges;
  edges.reserve(count * n / 2);
  std::vector<std::string> labels(count);
  for (std::uint64_t u = 0; u < count; ++u) {
    labels[u] = bit_string(u, n);
    for (unsigned j = 0; j < n; ++j) detail::add_edge(edges, u, u ^ (std::uint64_t{1} << j));
  }
  return Graph::from_edges(count, edges, std::move(labels));
}

namespace detail {

// Q_n cube edges inside each of the 2^n clusters of HCN/CCN plus labels.
inline void hcn_skeleton(unsigned n, std::vector<Edge>& edges, std::vector<std::string>& labels,
                         ClusterStructure& cs) {
  const std::uint64_t side = std::uint64_t{1} << n;
  labels.resize(side * side);
  cs.cluster_of.resize(side * side);
  cs.cluster_class.assign(side, 0);
  for (std::uint64_t c = 0; c < side; ++c) {
    for (std::uint64_t p = 0; p < side; ++p) {
      const auto id = c * side + p;
      labels[id] = "(" + bit_string(c, n) + "," + bit_string(p, n) + ")";
      cs.cluster_of[id] = static_cast<std::uint32_t>(c);
      for (unsigned j = 0; j < n; ++j) add_edge(edges, id, c * side + (p ^ (std::uint64_t{1} << j)));
    }
  }
}

// Cross neighbor of (c,p): (c̄,c̄) when p = c, else (p,c).
inline std::vector<Edge> hcn_cross_edges(unsigned n) {
  const std::uint64_t side = std::uint64_t{1} << n;
  const std::uint64_t mask = side - 1;
  std::vector<Edge> cross;
  for (std::uint64_t c = 0; c < side; ++c) {
    for (std::uint64_t p = 0; p < side; ++p) {
      const auto id = c * side + p;
      const auto other = p == c ? (~c & mask) * side + (~c & mask) : p * side + c;
      add_edge(cross, id, other);
    }
  }
  return sorted_unique(std::move(cross));
}

// Per-cluster-pair cross-edge counts must be 2 inside a pairing of the
// clusters and 1 for every other pair.
inline void require_ccn_pairing(const std::vector<Edge>& cross, const ClusterStructure& cs) {
  const auto k = cs.cluster_count();
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> counts;
  for (const auto& e : cross) {
    auto a = cs.cluster_of[e.u], b = cs.cluster_of[e.v];
    if (a > b) std::swap(a, b);
    ++counts[{a, b}];
  }
  std::vector<int> partners(k, 0);
  for (std::uint32_t a = 0; a < k; ++a) {
    for (std::uint32_t b = a + 1; b < k; ++b) {
      const auto it = counts.find({a, b});
      const int c = it == counts.end() ? 0 : it->second;
      if (c != 1 && c != 2)
        throw ValidationError("cluster pair (" + std::to_string(a) + "," + std::to_string(b) + ") has " +
                              std::to_string(c) + " cross edges (expected 1, or 2 when paired)");
      if (c == 2) {
        ++partners[a];
        ++partners[b];
      }
    }
  }
  for (std::uint32_t a = 0; a < k; ++a)
    if (partners[a] != 1)
      throw ValidationError("cluster " + std::to_string(a) + " is paired with " + std::to_string(partners[a]) +
                            " clusters (expected exactly 1)");
}

inline ClusteredGraph assemble(std::uint64_t count, std::vector<Edge> cube_edges, const std::vector<Edge>& cross,
                               std::vector<std::string> labels, ClusterStructure cs) {
  cube_edges.insert(cube_edges.end(), cross.begin(), cross.end());
  auto edges = sorted_unique(std::move(cube_edges));
  ClusteredGraph out{Graph::from_edges(count, edges, std::move(labels)), std::move(cs)};
  out.clusters.cross_edges = cross_edges_of(out.graph, out.clusters.cluster_of);
  return out;
}

}  // namespace detail

inline ClusteredGraph gen_hcn(unsigned n, const Limits& limits = {}) {
  if (n < 2) throw ValidationError("hcn requires n >= 2");
  detail::require_nodes("hcn", detail::pow2(2ULL * n), limits);
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  ClusterStructure cs;
  detail::hcn_skeleton(n, edges, labels, cs);
  const auto count = labels.size();
  return detail::assemble(count, std::move(edges), detail::hcn_cross_edges(n), std::move(labels), std::move(cs));
}

// Complete cubic network. Without an override the cross edges follow the HCN
// rule (pairing c <-> c̄); an override is validated, never trusted.
inline ClusteredGraph gen_ccn(unsigned n, const std::optional<std::vector<Edge>>& cross_override = std::nullopt,
                              const Limits& limits = {}) {
  if (n < 2) throw ValidationError("ccn requires n >= 2");
  detail::require_nodes("ccn", detail::pow2(2ULL * n), limits);
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  ClusterStructure cs;
  detail::hcn_skeleton(n, edges, labels, cs);
  std::vector<Edge> cross;
  if (cross_override) {
    cross = detail::sorted_unique(*cross_override);
    if (cross.size() != cross_override->size()) throw ValidationError("matching override repeats an edge");
    detail::require_perfect_cross_matching(cross, cs.cluster_of, labels);
    detail::require_ccn_pairing(cross, cs);
  } else {
    cross = detail::hcn_cross_edges(n);
  }
  const auto count = labels.size();
  return detail::assemble(count, std::move(edges), cross, std::move(labels), std::move(cs));
}

namespace detail {

struct EhLayout {
  unsigned s, t;
  std::uint64_t class0_id(std::uint64_t k, std::uint64_t a) const { return k * (std::uint64_t{1} << s) + a; }
  std::uint64_t class1_id(std::uint64_t a, std::uint64_t b) const {
    return (std::uint64_t{1} << (s + t)) + a * (std::uint64_t{1} << t) + b;
  }
  // Full label u_{s+t}..u_1 u_0 for high bits a, low bits b, last bit u0.
  std::string label(std::uint64_t a, std::uint64_t b, unsigned u0) const {
    return bit_string((((a << t) | b) << 1) | u0, s + t + 1);
  }
};

inline void eh_skeleton(unsigned s, unsigned t, std::vector<Edge>& edges, std::vector<std::string>& labels,
                        ClusterStructure& cs) {
  const EhLayout lay{s, t};
  const std::uint64_t A = std::uint64_t{1} << s, B = std::uint64_t{1} << t;
  const auto count = 2 * A * B;
  labels.resize(count);
  cs.cluster_of.resize(count);
  cs.cluster_class.assign(B + A, 0);
  for (std::uint64_t a = 0; a < A; ++a) cs.cluster_class[B + a] = 1;
  for (std::uint64_t k = 0; k < B; ++k) {
    for (std::uint64_t a = 0; a < A; ++a) {
      const auto id = lay.class0_id(k, a);
      labels[id] = lay.label(a, k, 0);
      cs.cluster_of[id] = static_cast<std::uint32_t>(k);
      for (unsigned j = 0; j < s; ++j) add_edge(edges, id, lay.class0_id(k, a ^ (std::uint64_t{1} << j)));
    }
  }
  for (std::uint64_t a = 0; a < A; ++a) {
    for (std::uint64_t b = 0; b < B; ++b) {
      const auto id = lay.class1_id(a, b);
      labels[id] = lay.label(a, b, 1);
      cs.cluster_of[id] = static_cast<std::uint32_t>(B + a);
      for (unsigned j = 0; j < t; ++j) add_edge(edges, id, lay.class1_id(a, b ^ (std::uint64_t{1} << j)));
    }
  }
}

// Last-bit edges (a,b,0) - (a,b,1).
inline std::vector<Edge> eh_cross_edges(unsigned s, unsigned t) {
  const EhLayout lay{s, t};
  std::vector<Edge> cross;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << s); ++a)
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << t); ++b) add_edge(cross, lay.class0_id(b, a), lay.class1_id(a, b));
  return sorted_unique(std::move(cross));
}

// Exactly one cross edge per opposite-class cluster pair, none within a class.
inline void require_geh_classes(const std::vector<Edge>& cross, const ClusterStructure& cs) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& e : cross) {
    auto a = cs.cluster_of[e.u], b = cs.cluster_of[e.v];
    if (cs.cluster_class[a] == cs.cluster_class[b])
      throw ValidationError("cross edge joins same-class clusters " + std::to_string(a) + " and " + std::to_string(b));
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second)
      throw ValidationError("cluster pair (" + std::to_string(a) + "," + std::to_string(b) +
                            ") has more than one cross edge");
  }
  std::size_t zero = 0, one = 0;
  for (auto c : cs.cluster_class) (c ? one : zero)++;
  if (seen.size() != zero * one)
    throw ValidationError("only " + std::to_string(seen.size()) + " of " + std::to_string(zero * one) +
                          " opposite-class cluster pairs are joined");
}

}  // namespace detail

inline ClusteredGraph gen_eh(unsigned s, unsigned t, const Limits& limits = {}) {
  if (s < 1 || t < 1) throw ValidationError("eh requires s, t >= 1");
  detail::require_nodes("eh", detail::pow2(std::uint64_t{s} + t + 1), limits);
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  ClusterStructure cs;
  detail::eh_skeleton(s, t, edges, labels, cs);
  const auto count = labels.size();
  return detail::assemble(count, std::move(edges), detail::eh_cross_edges(s, t), std::move(labels), std::move(cs));
}

// Generalized exchanged hypercube; default bijection is the EH last-bit rule.
inline ClusteredGraph gen_geh(unsigned s, unsigned t, const std::optional<std::vector<Edge>>& cross_override = std::nullopt,
                              const Limits& limits = {}) {
  if (s < 1 || t < 1) throw ValidationError("geh requires s, t >= 1");
  detail::require_nodes("geh", detail::pow2(std::uint64_t{s} + t + 1), limits);
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  ClusterStructure cs;
  detail::eh_skeleton(s, t, edges, labels, cs);
  std::vector<Edge> cross;
  if (cross_override) {
    cross = detail::sorted_unique(*cross_override);
    if (cross.size() != cross_override->size()) throw ValidationError("matching override repeats an edge");
    detail::require_perfect_cross_matching(cross, cs.cluster_of, labels);
    detail::require_geh_classes(cross, cs);
  } else {
    cross = detail::eh_cross_edges(s, t);
  }
  const auto count = labels.size();
  return detail::assemble(count, std::move(edges), cross, std::move(labels), std::move(cs));
}

// Dual-cube-like network DC_n = EH(n-1, n-1).
inline ClusteredGraph gen_dualcube(unsigned n, const Limits& limits = {}) {
  if (n < 2) throw ValidationError("dualcube requires n >= 2");
  return gen_eh(n - 1, n - 1, limits);
}

// Hierarchical hypercube HHC_n, n = 2^m + m. The cross edge of (X,Y) flips
// address bit m + dec(Y), which is bit dec(Y) of X.
inline ClusteredGraph gen_hhc(unsigned m, const Limits& limits = {}) {
  if (m < 1) throw ValidationError("hhc requires m >= 1");
  if (m > 5) throw CapExceeded("hhc node count (materialization infeasible)", kSaturated, limits.node_cap);
  const unsigned xbits = 1U << m;
  const unsigned n = xbits + m;
  detail::require_nodes("hhc", detail::pow2(n), limits);
  const std::uint64_t count = std::uint64_t{1} << n;
  const std::uint64_t ysize = std::uint64_t{1} << m;
  std::vector<Edge> edges;
  edges.reserve(count * (m + 1) / 2);
  std::vector<std::string> labels(count);
  ClusterStructure cs;
  cs.cluster_of.resize(count);
  cs.cluster_class.assign(std::uint64_t{1} << xbits, 0);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << xbits); ++x) {
    for (std::uint64_t y = 0; y < ysize; ++y) {
      const auto id = x * ysize + y;
      labels[id] = "(" + bit_string(x, xbits) + "," + bit_string(y, m) + ")";
      cs.cluster_of[id] = static_cast<std::uint32_t>(x);
      for (unsigned l = 0; l < m; ++l) detail::add_edge(edges, id, x * ysize + (y ^ (std::uint64_t{1} << l)));
      detail::add_edge(edges, id, (x ^ (std::uint64_t{1} << y)) * ysize + y);
    }
  }
  ClusteredGraph out{Graph::from_edges(count, detail::sorted_unique(std::move(edges)), std::move(labels)), std::move(cs)};
  out.clusters.cross_edges = detail::cross_edges_of(out.graph, out.clusters.cluster_of);
  return out;
}

// True when the tree is K_{1,n-1}.
inline bool is_star_tree(unsigned n, const std::vector<std::pair<unsigned, unsigned>>& tree) {
  if (n < 2) return false;
  std::vector<unsigned> deg(n + 1, 0);
  for (auto [a, b] : tree) {
    ++deg[a];
    ++deg[b];
  }
  return std::any_of(deg.begin(), deg.end(), [&](unsigned d) { return d == n - 1; });
}

inline void require_spanning_tree(unsigned n, const std::vector<std::pair<unsigned, unsigned>>& tree) {
  if (tree.size() + 1 != n)
    throw ValidationError("transposition tree on " + std::to_string(n) + " symbols needs " + std::to_string(n - 1) +
                          " edges, got " + std::to_string(tree.size()));
  std::vector<unsigned> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](unsigned x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : tree) {
    if (a < 1 || b < 1 || a > n || b > n || a == b)
      throw ValidationError("invalid transposition (" + std::to_string(a) + "," + std::to_string(b) + ")");
    const auto ra = find(a), rb = find(b);
    if (ra == rb)
      throw ValidationError("transposition set is not a tree: (" + std::to_string(a) + "," + std::to_string(b) +
                            ") closes a cycle");
    parent[ra] = rb;
  }
}

inline std::vector<std::pair<unsigned, unsigned>> path_tree(unsigned n) {
  std::vector<std::pair<unsigned, unsigned>> tree;
  for (unsigned i = 1; i < n; ++i) tree.emplace_back(i, i + 1);
  return tree;
}

// Cayley graph on Sym(n) generated by the tree's transpositions: u ~ u·(ij)
// swaps the symbols at positions i and j.
inline Graph gen_cayley_tree(unsigned n, const std::vector<std::pair<unsigned, unsigned>>& tree, const Limits& limits = {}) {
  if (n < 1) throw ValidationError("cayley requires n >= 1");
  if (n >= 10) throw CapExceeded("cayley permutation degree", n, 9);
  require_spanning_tree(n, tree);
  std::uint64_t count = 1;
  for (unsigned i = 2; i <= n; ++i) count *= i;
  detail::require_nodes("cayley", count, limits);

  std::vector<std::uint64_t> factorial(n + 1, 1);
  for (unsigned i = 1; i <= n; ++i) factorial[i] = factorial[i - 1] * i;
  auto rank = [&](const std::vector<unsigned>& perm) {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < n; ++i) {
      unsigned smaller = 0;
      for (unsigned j = i + 1; j < n; ++j) smaller += perm[j] < perm[i];
      r += smaller * factorial[n - 1 - i];
    }
    return r;
  };

  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 1U);
  std::vector<Edge> edges;
  edges.reserve(count * tree.size());
  std::vector<std::string> labels;
  labels.reserve(count);
  std::uint64_t id = 0;
  do {
    std::string label;
    for (auto x : perm) label += static_cast<char>('0' + x);
    labels.push_back(std::move(label));
    for (auto [i, j] : tree) {
      auto other = perm;
      std::swap(other[i - 1], other[j - 1]);
      detail::add_edge(edges, id, rank(other));
    }
    ++id;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Graph::from_edges(count, detail::sorted_unique(std::move(edges)), std::move(labels));
}

inline Graph gen_bubble_sort(unsigned n, const Limits& limits = {}) { return gen_cayley_tree(n, path_tree(n), limits); }

namespace detail {

inline std::vector<Edge> disc_ring_edges(std::uint64_t m, std::uint64_t d) {
  std::vector<Edge> edges;
  auto node = [&](std::uint64_t z1, std::uint64_t z2) { return z1 * m + (z2 % m); };
  for (std::uint64_t z1 = 0; z1 < 2; ++z1)
    for (std::uint64_t z2 = 0; z2 < m; ++z2) {
      add_edge(edges, node(z1, z2), node(z1, z2 + 1));
      add_edge(edges, node(z1, z2 + 1), node(z1, z2));
    }
  for (std::uint64_t z2 = 0; z2 < m; ++z2)
    for (std::uint64_t i = 0; i < d; ++i) add_edge(edges, node(0, z2), node(1, z2 + i));
  return sorted_unique(std::move(edges));
}

inline std::string disc_label(std::uint64_t z1, std::uint64_t z2) { return std::to_string(z1) + std::to_string(z2); }

}  // namespace detail

// Disc-ring D(m,d): outer ring 0z2, inner ring 1z2, outer 0z2 joined to
// inner 1y for y = z2 .. z2+d-1 (mod m). Ring edges that coincide for m < 3
// are merged.
inline Graph gen_disc_ring(std::uint64_t m, std::uint64_t d, const Limits& limits = {}) {
  if (m < 1 || d < 1 || d > m) throw ValidationError("disc-ring requires 1 <= d <= m");
  detail::require_nodes("disc-ring", 2 * m, limits);
  std::vector<std::string> labels(2 * m);
  for (std::uint64_t z1 = 0; z1 < 2; ++z1)
    for (std::uint64_t z2 = 0; z2 < m; ++z2) labels[z1 * m + z2] = detail::disc_label(z1, z2);
  return Graph::from_edges(2 * m, detail::disc_ring_edges(m, d), std::move(labels));
}

// DQcube DQ(m,d,n): Q_n clusters on the nodes of D(m,d). In each cluster
// α1 = 0..00, α2 = 0..01, β = 1..11, and γ_i = i+1 is the i-th smallest
// remaining label. External edges: α1 -> α2 of the next cluster on the same
// ring, β - β between rings at the same position, γ_i - γ_i along spoke i.
inline ClusteredGraph gen_dqcube(std::uint64_t m, std::uint64_t d, unsigned n, const Limits& limits = {}) {
  if (n < 1 || n > 30 || d < 1 || d > m || d + 2 != (std::uint64_t{1} << n))
    throw ValidationError("dq requires 1 <= d <= m and d + 2 = 2^n");
  const std::uint64_t side = std::uint64_t{1} << n;
  detail::require_nodes("dq", saturating_mul(2 * m, side), limits);
  const auto count = 2 * m * side;
  auto id_of = [&](std::uint64_t z1, std::uint64_t z2, std::uint64_t b) { return (z1 * m + (z2 % m)) * side + b; };
  std::vector<Edge> edges;
  std::vector<std::string> labels(count);
  ClusterStructure cs;
  cs.cluster_of.resize(count);
  cs.cluster_class.assign(2 * m, 0);
  for (std::uint64_t z1 = 0; z1 < 2; ++z1) {
    for (std::uint64_t z2 = 0; z2 < m; ++z2) {
      for (std::uint64_t b = 0; b < side; ++b) {
        const auto id = id_of(z1, z2, b);
        labels[id] = "(" + detail::disc_label(z1, z2) + "," + bit_string(b, n) + ")";
        cs.cluster_of[id] = static_cast<std::uint32_t>(z1 * m + z2);
        for (unsigned j = 0; j < n; ++j) detail::add_edge(edges, id, id_of(z1, z2, b ^ (std::uint64_t{1} << j)));
      }
    }
  }
  const std::uint64_t alpha1 = 0, alpha2 = 1, beta = side - 1;
  std::vector<Edge> cross;
  for (std::uint64_t z2 = 0; z2 < m; ++z2) {
    for (std::uint64_t z1 = 0; z1 < 2; ++z1) {
      const auto a = id_of(z1, z2, alpha1), b = id_of(z1, z2 + 1, alpha2);
      detail::add_edge(cross, std::min(a, b), std::max(a, b));
    }
    detail::add_edge(cross, id_of(0, z2, beta), id_of(1, z2, beta));
    for (std::uint64_t i = 1; i < d; ++i) {
      const auto gamma = i + 1;
      detail::add_edge(cross, id_of(0, z2, gamma), id_of(1, z2 + i, gamma));
    }
  }
  return detail::assemble(count, std::move(edges), detail::sorted_unique(std::move(cross)), std::move(labels),
                          std::move(cs));
}

// Builds the instance a spec describes, reading override files if named.
inline Network generate(const NetworkSpec& spec, const Limits& limits = {}) {
  Network net;
  net.spec = spec;
  auto small = [&](const char* key) -> unsigned {
    const auto v = spec.get(key);
    if (v > 64) throw ValidationError(std::string("parameter ") + key + " too large");
    return static_cast<unsigned>(v);
  };
  auto take = [&](ClusteredGraph cg) {
    net.graph = std::move(cg.graph);
    net.clusters = std::move(cg.clusters);
  };
  auto override_for = [&](const ClusteredGraph& skeleton) -> std::optional<std::vector<Edge>> {
    if (!spec.matching_override) return std::nullopt;
    return read_matching_override(*spec.matching_override, skeleton.graph);
  };
  switch (spec.family) {
    case Family::Hypercube: net.graph = gen_hypercube(small("n"), limits); break;
    case Family::Hcn: take(gen_hcn(small("n"), limits)); break;
    case Family::Ccn: {
      const auto n = small("n");
      if (spec.matching_override) take(gen_ccn(n, override_for(gen_ccn(n, std::nullopt, limits)), limits));
      else take(gen_ccn(n, std::nullopt, limits));
      break;
    }
    case Family::Eh: take(gen_eh(small("s"), small("t"), limits)); break;
    case Family::Geh: {
      const auto s = small("s"), t = small("t");
      if (spec.matching_override) take(gen_geh(s, t, override_for(gen_geh(s, t, std::nullopt, limits)), limits));
      else take(gen_geh(s, t, std::nullopt, limits));
      break;
    }
    case Family::DualCube: take(gen_dualcube(small("n"), limits)); break;
    case Family::Hhc: take(gen_hhc(small("m"), limits)); break;
    case Family::Cayley: {
      const auto n = small("n");
      net.graph = gen_cayley_tree(n, spec.tree_edges, limits);
      if (is_star_tree(n, spec.tree_edges)) net.tags.push_back("excluded-from-theorem: star tree");
      break;
    }
    case Family::BubbleSort: {
      const auto n = small("n");
      net.graph = gen_bubble_sort(n, limits);
      if (is_star_tree(n, path_tree(n))) net.tags.push_back("excluded-from-theorem: star tree");
      break;
    }
    case Family::DiscRing: net.graph = gen_disc_ring(spec.get("m"), spec.get("d"), limits); break;
    case Family::DqCube: take(gen_dqcube(spec.get("m"), spec.get("d"), small("n"), limits)); break;
  }
  return net;
}

inline void write_cluster_sidecar(std::ostream& os, const ClusterStructure& cs) {
  for (std::size_t u = 0; u < cs.cluster_of.size(); ++u)
    os << "c " << u << ' ' << cs.cluster_of[u] << ' ' << static_cast<unsigned>(cs.cluster_class[cs.cluster_of[u]]) << '\n';
}

// Reads `c <node-id> <cluster-id> <class>` lines; cross edges are recomputed
// from the graph.
inline ClusterStructure read_cluster_sidecar(std::istream& is, const Graph& g) {
  ClusterStructure cs;
  cs.cluster_of.assign(g.node_count(), UINT32_MAX);
  std::map<std::uint32_t, unsigned> classes;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tok = detail::split_ws(line);
    if (tok.size() != 4 || tok[0] != "c") throw ParseError("cluster line must be 'c <node-id> <cluster-id> <class>'", line_no);
    const auto u = detail::expect_u64(tok[1], line_no, "node-id");
    const auto c = detail::expect_u64(tok[2], line_no, "cluster-id");
    const auto k = detail::expect_u64(tok[3], line_no, "class");
    if (u >= g.node_count()) throw InvalidNode(u, g.node_count());
    if (c >= g.node_count() || k > 1) throw ParseError("cluster id or class out of range", line_no);
    if (auto [it, fresh] = classes.emplace(static_cast<std::uint32_t>(c), static_cast<unsigned>(k)); !fresh && it->second != k)
      throw ParseError("cluster " + std::to_string(c) + " listed with two classes", line_no);
    cs.cluster_of[u] = static_cast<std::uint32_t>(c);
  }
  for (std::size_t u = 0; u < cs.cluster_of.size(); ++u)
    if (cs.cluster_of[u] == UINT32_MAX) throw ValidationError("node " + std::to_string(u) + " has no cluster");
  const auto max_cluster = classes.empty() ? 0 : classes.rbegin()->first + 1;
  cs.cluster_class.assign(max_cluster, 0);
  for (auto [c, k] : classes) cs.cluster_class[c] = static_cast<std::uint8_t>(k);
  cs.cross_edges = detail::cross_edges_of(g, cs.cluster_of);
  return cs;
}

}  // namespace compdiag
