#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "compdiag/core/error.hpp"
#include "compdiag/core/node_set.hpp"

namespace compdiag {

struct Edge {
  NodeId u;
  NodeId v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable undirected graph over dense ids [0, node_count), stored as
// sorted adjacency rows. Graphs built through from_edges are simple and
// symmetric; from_adjacency_unchecked keeps whatever it is handed so that
// damaged inputs can still be inspected by structural_issues().
class Graph {
 public:
  Graph() = default;

  // Throws ValidationError on self-loops or duplicate edges, InvalidNode on
  // out-of-range endpoints. `labels` is empty or has one entry per node.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges,
                          std::vector<std::string> labels = {}) {
    std::vector<std::size_t> degree(node_count, 0);
    for (const auto& e : edges) {
      if (e.u >= node_count) throw InvalidNode(e.u, node_count);
      if (e.v >= node_count) throw InvalidNode(e.v, node_count);
      if (e.u == e.v) throw ValidationError("self-loop at node " + std::to_string(e.u));
      ++degree[e.u];
      ++degree[e.v];
    }
    Graph g;
    g.offsets_.assign(node_count + 1, 0);
    for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
    g.adjacency_.resize(g.offsets_.back());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : edges) {
      g.adjacency_[fill[e.u]++] = e.v;
      g.adjacency_[fill[e.v]++] = e.u;
    }
    for (std::size_t i = 0; i < node_count; ++i) {
      auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]);
      auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]);
      std::sort(first, last);
      if (auto dup = std::adjacent_find(first, last); dup != last)
        throw ValidationError("duplicate edge " + std::to_string(i) + "-" + std::to_string(*dup));
    }
    g.set_labels(std::move(labels));
    return g;
  }

  // Keeps rows as given (each row is sorted, nothing else is enforced).
  static Graph from_adjacency_unchecked(std::vector<std::vector<NodeId>> rows,
                                        std::vector<std::string> labels = {}) {
    Graph g;
    g.offsets_.assign(rows.size() + 1, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) g.offsets_[i + 1] = g.offsets_[i] + rows[i].size();
    g.adjacency_.reserve(g.offsets_.back());
    for (auto& row : rows) {
      std::sort(row.begin(), row.end());
      g.adjacency_.insert(g.adjacency_.end(), row.begin(), row.end());
    }
    g.set_labels(std::move(labels));
    g.well_formed_ = g.structural_issues().empty();
    return g;
  }

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }

  // Number of undirected edges (half the adjacency entries).
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const {
    check(u);
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }

  std::size_t degree(NodeId u) const {
    check(u);
    return offsets_[u + 1] - offsets_[u];
  }

  std::size_t min_degree() const noexcept {
    std::size_t d = node_count() == 0 ? 0 : SIZE_MAX;
    for (std::size_t i = 0; i < node_count(); ++i) d = std::min(d, offsets_[i + 1] - offsets_[i]);
    return d;
  }

  std::size_t max_degree() const noexcept {
    std::size_t d = 0;
    for (std::size_t i = 0; i < node_count(); ++i) d = std::max(d, offsets_[i + 1] - offsets_[i]);
    return d;
  }

  // Regular degree, if every node has the same degree.
  std::optional<std::size_t> regular_degree() const noexcept {
    if (node_count() == 0) return std::nullopt;
    const auto lo = min_degree();
    return lo == max_degree() ? std::optional(lo) : std::nullopt;
  }

  bool adjacent(NodeId u, NodeId v) const {
    const auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

  // Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u)
      for (NodeId v : neighbors(u))
        if (u < v) out.push_back({u, v});
    return out;
  }

  bool has_labels() const noexcept { return !labels_.empty(); }

  // The node's label, or its decimal id when the graph carries no labels.
  std::string label(NodeId u) const {
    check(u);
    return labels_.empty() ? std::to_string(u) : labels_[u];
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }

  // False only for graphs built by from_adjacency_unchecked that failed a check.
  bool well_formed() const noexcept { return well_formed_; }

  void require_well_formed() const {
    if (!well_formed_) throw ValidationError("graph is not simple and symmetric");
  }

  // Human-readable violations of simplicity, symmetry and id range.
  std::vector<std::string> structural_issues() const {
    std::vector<std::string> issues;
    const auto n = node_count();
    for (NodeId u = 0; u < n; ++u) {
      const auto row = neighbors(u);
      for (std::size_t i = 0; i < row.size(); ++i) {
        const NodeId v = row[i];
        if (v >= n) {
          issues.push_back("neighbor-range: node " + std::to_string(u) + " lists " + std::to_string(v));
          issues.push_back("symmetric: " + std::to_string(u) + "->" + std::to_string(v) + " has no reverse entry");
          continue;
        }
        if (v == u) issues.push_back("simple: self-loop at " + std::to_string(u));
        if (i > 0 && row[i - 1] == v)
          issues.push_back("simple: duplicate neighbor " + std::to_string(v) + " of " + std::to_string(u));
        const auto back = neighbors(v);
        if (!std::binary_search(back.begin(), back.end(), u))
          issues.push_back("symmetric: " + std::to_string(u) + "->" + std::to_string(v) + " has no reverse entry");
      }
    }
    if (!labels_.empty() && labels_.size() != n) issues.push_back("labels: count differs from node count");
    return issues;
  }

 private:
  void check(NodeId u) const {
    if (u >= node_count()) throw InvalidNode(u, node_count());
  }

  void set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != node_count())
      throw ValidationError("label count " + std::to_string(labels.size()) + " != node count " +
                            std::to_string(node_count()));
    labels_ = std::move(labels);
  }

  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<std::string> labels_;
  bool well_formed_ = true;
};

// label -> id. Empty when the graph has no labels.
inline std::unordered_map<std::string, NodeId> label_index(const Graph& g) {
  std::unordered_map<std::string, NodeId> index;
  if (!g.has_labels()) return index;
  index.reserve(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) index.emplace(g.labels()[u], u);
  return index;
}

inline void require_universe(const Graph& g, const NodeSet& x) {
  if (x.universe() != g.node_count())
    throw ContractViolation("node set universe " + std::to_string(x.universe()) + " != node count " +
                            std::to_string(g.node_count()));
}

// N_G(X): every node outside X adjacent to some member of X.
inline NodeSet neighbors_of_set(const Graph& g, const NodeSet& x) {
  require_universe(g, x);
  NodeSet out(g.node_count());
  x.for_each([&](NodeId u) {
    for (NodeId v : g.neighbors(u)) out.insert(v);
  });
  return out - x;
}

// N_G[X] = N_G(X) ∪ X.
inline NodeSet closed_neighbors_of_set(const Graph& g, const NodeSet& x) { return neighbors_of_set(g, x) | x; }

inline NodeSet neighbor_set(const Graph& g, NodeId u) {
  NodeSet out(g.node_count());
  for (NodeId v : g.neighbors(u)) out.insert(v);
  return out;
}

// Intersection of the open neighborhoods of every member of `nodes`.
inline NodeSet common_neighbors(const Graph& g, const NodeSet& nodes) {
  require_universe(g, nodes);
  if (nodes.empty()) throw ContractViolation("common_neighbors needs a nonempty node set");
  std::optional<NodeSet> acc;
  nodes.for_each([&](NodeId u) {
    auto ns = neighbor_set(g, u);
    if (acc) *acc &= ns;
    else acc = std::move(ns);
  });
  return *acc;
}

// |N(u) ∩ N(v)| via a merge of the sorted rows.
inline std::size_t common_neighbor_count(const Graph& g, NodeId u, NodeId v) {
  const auto a = g.neighbors(u);
  const auto b = g.neighbors(v);
  std::size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else { ++c; ++i; ++j; }
  }
  return c;
}

}  // namespace compdiag
