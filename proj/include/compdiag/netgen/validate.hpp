#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "compdiag/core/components.hpp"
#include "compdiag/core/graph.hpp"
#include "compdiag/netgen/generators.hpp"
#include "compdiag/netgen/network_spec.hpp"

namespace compdiag {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::string subject;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  void add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
};

inline bool is_bipartite(const Graph& g) {
  std::vector<int> side(g.node_count(), -1);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (NodeId v : g.neighbors(u)) {
        if (side[v] < 0) {
          side[v] = 1 - side[u];
          stack.push_back(v);
        } else if (side[v] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

// First triangle (u < v < w) found, if any.
inline std::optional<std::array<NodeId, 3>> find_triangle(const Graph& g) {
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (v <= u) continue;
      const auto a = g.neighbors(u);
      const auto b = g.neighbors(v);
      std::size_t i = 0, j = 0;
      while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else return std::array<NodeId, 3>{u, v, a[i]};
      }
    }
  }
  return std::nullopt;
}

namespace detail {

struct Expected {
  std::optional<std::uint64_t> nodes, edges;
  std::set<std::size_t> degrees;  // allowed degree values; empty = unchecked
  bool bipartite = false;
  bool triangle_free = false;
  bool cross_matching = false;
};

inline std::uint64_t factorial(unsigned n) {
  std::uint64_t f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Expected expected_for(const NetworkSpec& spec) {
  Expected e;
  auto p = [&](const char* k) { return spec.get(k); };
  switch (spec.family) {
    case Family::Hypercube: {
      const auto n = p("n");
      e.nodes = std::uint64_t{1} << n;
      e.edges = n << (n - 1);
      e.degrees = {n};
      e.bipartite = e.triangle_free = true;
      break;
    }
    case Family::Hcn:
    case Family::Ccn: {
      const auto n = p("n");
      e.nodes = std::uint64_t{1} << (2 * n);
      e.edges = (n + 1) << (2 * n - 1);
      e.degrees = {n + 1};
      e.triangle_free = e.cross_matching = true;
      break;
    }
    case Family::Eh:
    case Family::Geh:
    case Family::DualCube: {
      const auto s = spec.family == Family::DualCube ? p("n") - 1 : p("s");
      const auto t = spec.family == Family::DualCube ? p("n") - 1 : p("t");
      e.nodes = std::uint64_t{1} << (s + t + 1);
      e.edges = (s + t + 2) << (s + t - 1);
      e.degrees = {s + 1, t + 1};
      e.triangle_free = e.cross_matching = true;
      // An arbitrary GEH bijection need not preserve the parity colouring.
      e.bipartite = !spec.matching_override;
      break;
    }
    case Family::Hhc: {
      const auto m = p("m");
      const auto n = (std::uint64_t{1} << m) + m;
      e.nodes = std::uint64_t{1} << n;
      e.edges = (m + 1) << (n - 1);
      e.degrees = {m + 1};
      e.bipartite = e.triangle_free = e.cross_matching = true;
      break;
    }
    case Family::Cayley:
    case Family::BubbleSort: {
      const auto n = static_cast<unsigned>(p("n"));
      e.nodes = factorial(n);
      e.edges = (n - 1) * factorial(n) / 2;
      if (n >= 2) e.degrees = {n - 1};
      e.bipartite = e.triangle_free = true;
      break;
    }
    case Family::DiscRing: {
      const auto m = p("m"), d = p("d");
      e.nodes = 2 * m;
      if (m >= 3) {
        e.edges = m * (d + 2);
        e.degrees = {d + 2};
      }
      break;
    }
    case Family::DqCube: {
      const auto m = p("m"), d = p("d"), n = p("n");
      e.nodes = m << (n + 1);
      e.edges = (n + 1) * m << n;
      e.degrees = {n + 1};
      e.bipartite = e.triangle_free = e.cross_matching = true;
      (void)d;
      break;
    }
  }
  return e;
}

// Cube dimension expected for each cluster.
inline std::vector<unsigned> expected_cluster_dims(const NetworkSpec& spec, const ClusterStructure& cs) {
  std::vector<unsigned> dims(cs.cluster_count(), 0);
  for (std::size_t c = 0; c < dims.size(); ++c) {
    switch (spec.family) {
      case Family::Hcn:
      case Family::Ccn:
      case Family::DqCube: dims[c] = static_cast<unsigned>(spec.get("n")); break;
      case Family::Hhc: dims[c] = static_cast<unsigned>(spec.get("m")); break;
      case Family::DualCube: dims[c] = static_cast<unsigned>(spec.get("n") - 1); break;
      case Family::Eh:
      case Family::Geh: dims[c] = static_cast<unsigned>(cs.cluster_class[c] ? spec.get("t") : spec.get("s")); break;
      default: break;
    }
  }
  return dims;
}

inline std::map<std::pair<std::uint32_t, std::uint32_t>, int> cluster_pair_counts(const ClusterStructure& cs) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> counts;
  for (const auto& e : cs.cross_edges) {
    auto a = cs.cluster_of[e.u], b = cs.cluster_of[e.v];
    if (a > b) std::swap(a, b);
    ++counts[{a, b}];
  }
  return counts;
}

inline std::string cluster_pair_name(std::pair<std::uint32_t, std::uint32_t> p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

inline void check_clusters(const NetworkSpec& spec, const Graph& g, const ClusterStructure& cs, bool cross_matching,
                           ValidationReport& report) {
  if (cs.cluster_of.size() != g.node_count()) {
    report.add("cluster-map", false, "cluster map covers " + std::to_string(cs.cluster_of.size()) + " of " +
                                         std::to_string(g.node_count()) + " nodes");
    return;
  }
  // Each cluster: 2^k members, k-regular inside, k·2^(k-1) internal edges.
  const auto dims = expected_cluster_dims(spec, cs);
  std::vector<std::uint64_t> size(cs.cluster_count(), 0), internal_deg_sum(cs.cluster_count(), 0);
  std::vector<bool> regular(cs.cluster_count(), true);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto c = cs.cluster_of[u];
    ++size[c];
    std::size_t inside = 0;
    for (NodeId v : g.neighbors(u)) inside += cs.cluster_of[v] == c;
    internal_deg_sum[c] += inside;
    if (inside != dims[c]) regular[c] = false;
  }
  std::string bad;
  for (std::size_t c = 0; c < cs.cluster_count() && bad.empty(); ++c) {
    const auto k = dims[c];
    if (size[c] != (std::uint64_t{1} << k) || !regular[c] || internal_deg_sum[c] / 2 != (std::uint64_t{k} << k) / 2)
      bad = "cluster " + std::to_string(c) + " is not a Q_" + std::to_string(k) + " (size " + std::to_string(size[c]) +
            ")";
  }
  report.add("cluster-cubes", bad.empty(),
             bad.empty() ? std::to_string(cs.cluster_count()) + " clusters, each a hypercube of the expected dimension"
                         : bad);

  const bool distinct = std::all_of(cs.cross_edges.begin(), cs.cross_edges.end(),
                                    [&](const Edge& e) { return cs.cluster_of[e.u] != cs.cluster_of[e.v]; });
  report.add("cross-edges-distinct-clusters", distinct);

  const auto recomputed = cross_edges_of(g, cs.cluster_of);
  report.add("cross-edges-consistent", recomputed == cs.cross_edges,
             std::to_string(cs.cross_edges.size()) + " cross edges recorded");

  if (cross_matching) {
    std::vector<int> uses(g.node_count(), 0);
    for (const auto& e : recomputed) {
      ++uses[e.u];
      ++uses[e.v];
    }
    const auto it = std::find_if(uses.begin(), uses.end(), [](int x) { return x != 1; });
    const auto name = spec.family == Family::DqCube ? "one-external-neighbor" : "cross-perfect-matching";
    report.add(name, it == uses.end(),
               it == uses.end() ? "every node has exactly one cross edge"
                                : "node " + std::to_string(it - uses.begin()) + " has " + std::to_string(*it) +
                                      " cross edges");
  }

  const auto counts = cluster_pair_counts(cs);
  if (spec.family == Family::Hcn || spec.family == Family::Ccn) {
    std::vector<int> partners(cs.cluster_count(), 0);
    std::string problem;
    for (std::uint32_t a = 0; a < cs.cluster_count() && problem.empty(); ++a)
      for (std::uint32_t b = a + 1; b < cs.cluster_count() && problem.empty(); ++b) {
        const auto it = counts.find({a, b});
        const int c = it == counts.end() ? 0 : it->second;
        if (c == 2) ++partners[a], ++partners[b];
        else if (c != 1) problem = "cluster pair " + cluster_pair_name({a, b}) + " has " + std::to_string(c) + " cross edges";
      }
    for (std::uint32_t a = 0; a < cs.cluster_count() && problem.empty(); ++a)
      if (partners[a] != 1) problem = "cluster " + std::to_string(a) + " has " + std::to_string(partners[a]) + " partners";
    report.add("cluster-pairing", problem.empty(),
               problem.empty() ? "2 cross edges per paired cluster pair, 1 otherwise" : problem);
  }
  if (spec.family == Family::Eh || spec.family == Family::Geh || spec.family == Family::DualCube) {
    std::string problem;
    std::size_t zero = 0, one = 0;
    for (auto k : cs.cluster_class) (k ? one : zero)++;
    for (const auto& [pair, c] : counts) {
      if (cs.cluster_class[pair.first] == cs.cluster_class[pair.second]) {
        problem = "same-class clusters " + cluster_pair_name(pair) + " are joined";
        break;
      }
      if (c != 1) {
        problem = "cluster pair " + cluster_pair_name(pair) + " has " + std::to_string(c) + " cross edges";
        break;
      }
    }
    if (problem.empty() && counts.size() != zero * one)
      problem = std::to_string(counts.size()) + " of " + std::to_string(zero * one) + " opposite-class pairs joined";
    report.add("class-structure", problem.empty(),
               problem.empty() ? "exactly one cross edge per opposite-class cluster pair" : problem);
  }
  if (spec.family == Family::Hhc) {
    const auto it = std::find_if(counts.begin(), counts.end(), [](const auto& kv) { return kv.second > 1; });
    report.add("cluster-pairs-at-most-one", it == counts.end(),
               it == counts.end() ? "" : "cluster pair " + cluster_pair_name(it->first) + " has " +
                                             std::to_string(it->second) + " cross edges");
  }
  if (spec.family == Family::DqCube) {
    const auto m = spec.get("m"), d = spec.get("d");
    std::set<std::pair<std::uint32_t, std::uint32_t>> expected, actual;
    for (const auto& e : disc_ring_edges(m, d)) expected.insert({e.u, e.v});
    for (const auto& [pair, c] : counts) actual.insert(pair);
    report.add("cluster-adjacency-disc-ring", expected == actual,
               std::to_string(actual.size()) + " cluster pairs joined, disc ring has " + std::to_string(expected.size()));
  }
}

}  // namespace detail

// Family-independent checks: structure, connectivity, degree range.
inline ValidationReport validate_graph(const Graph& g, std::string subject = "graph") {
  ValidationReport report;
  report.subject = std::move(subject);
  const auto issues = g.structural_issues();
  auto first_with = [&](std::string_view prefix) -> std::optional<std::string> {
    for (const auto& s : issues)
      if (s.rfind(prefix, 0) == 0) return s;
    return std::nullopt;
  };
  for (const auto& [name, prefix] : {std::pair{"neighbor-range", "neighbor-range:"}, std::pair{"adjacency-simple", "simple:"},
                                     std::pair{"adjacency-symmetric", "symmetric:"}, std::pair{"labels", "labels:"}}) {
    const auto hit = first_with(prefix);
    report.add(name, !hit, hit.value_or(""));
  }
  if (!issues.empty()) {
    report.notes.push_back("structural defects present; remaining checks skipped");
    return report;
  }
  report.add("connected", is_connected(g), std::to_string(component_count(g, NodeSet(g.node_count()))) + " component(s)");
  return report;
}

// Every structural claim the family definition makes, checked on `g`.
inline ValidationReport validate(const NetworkSpec& spec, const Graph& g, const std::optional<ClusterStructure>& cs,
                                 const std::vector<std::string>& tags = {}) {
  auto report = validate_graph(g, spec.to_string());
  report.notes.insert(report.notes.end(), tags.begin(), tags.end());
  if (!report.passed()) return report;
  const auto e = detail::expected_for(spec);
  if (e.nodes)
    report.add("node-count", g.node_count() == *e.nodes,
               std::to_string(g.node_count()) + " nodes, expected " + std::to_string(*e.nodes));
  if (e.edges)
    report.add("edge-count", g.edge_count() == *e.edges,
               std::to_string(g.edge_count()) + " edges, expected " + std::to_string(*e.edges));
  if (!e.degrees.empty()) {
    std::set<std::size_t> seen;
    for (NodeId u = 0; u < g.node_count(); ++u) seen.insert(g.degree(u));
    std::string found, want;
    for (auto d : seen) found += (found.empty() ? "" : ",") + std::to_string(d);
    for (auto d : e.degrees) want += (want.empty() ? "" : ",") + std::to_string(d);
    const bool ok = std::includes(e.degrees.begin(), e.degrees.end(), seen.begin(), seen.end()) &&
                    (e.degrees.size() > 1 || seen == e.degrees);
    report.add(e.degrees.size() == 1 ? "regular" : "degree-set", ok, "degrees {" + found + "}, expected {" + want + "}");
  }
  if (e.bipartite) report.add("bipartite", is_bipartite(g));
  if (e.triangle_free) {
    const auto tri = find_triangle(g);
    report.add("triangle-free", !tri,
               tri ? "triangle " + g.label((*tri)[0]) + " " + g.label((*tri)[1]) + " " + g.label((*tri)[2]) : "");
  }
  if (cs) detail::check_clusters(spec, g, *cs, e.cross_matching, report);
  return report;
}

inline ValidationReport validate(const Network& net) { return validate(net.spec, net.graph, net.clusters, net.tags); }

}  // namespace compdiag
