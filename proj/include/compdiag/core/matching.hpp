#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "compdiag/core/combinations.hpp"
#include "compdiag/core/components.hpp"
#include "compdiag/core/graph.hpp"
#include "compdiag/core/limits.hpp"
#include "compdiag/core/mask_graph.hpp"

namespace compdiag {

namespace detail {

// Edmonds' blossom algorithm on a general graph, seeded with a greedy
// matching. mate[u] is the partner of u or -1.
class BlossomMatcher {
 public:
  explicit BlossomMatcher(const Graph& g) : g_(g), n_(g.node_count()), mate_(n_, -1) {}

  std::vector<std::int64_t> run() {
    for (NodeId u = 0; u < n_; ++u) {
      if (mate_[u] != -1) continue;
      for (NodeId v : g_.neighbors(u)) {
        if (mate_[v] == -1) {
          mate_[u] = v;
          mate_[v] = u;
          break;
        }
      }
    }
    for (NodeId root = 0; root < n_; ++root) {
      if (mate_[root] != -1) continue;
      for (std::int64_t v = find_path(root); v != -1;) {
        const std::int64_t pv = parent_[static_cast<std::size_t>(v)];
        const std::int64_t ppv = mate_[static_cast<std::size_t>(pv)];
        mate_[static_cast<std::size_t>(v)] = pv;
        mate_[static_cast<std::size_t>(pv)] = v;
        v = ppv;
      }
    }
    return mate_;
  }

 private:
  std::int64_t lca(std::int64_t a, std::int64_t b) {
    std::vector<char> on_path(n_, 0);
    for (;;) {
      a = base_[static_cast<std::size_t>(a)];
      on_path[static_cast<std::size_t>(a)] = 1;
      if (mate_[static_cast<std::size_t>(a)] == -1) break;
      a = parent_[static_cast<std::size_t>(mate_[static_cast<std::size_t>(a)])];
    }
    for (;;) {
      b = base_[static_cast<std::size_t>(b)];
      if (on_path[static_cast<std::size_t>(b)]) return b;
      b = parent_[static_cast<std::size_t>(mate_[static_cast<std::size_t>(b)])];
    }
  }

  void mark_path(std::int64_t v, std::int64_t b, std::int64_t child) {
    while (base_[static_cast<std::size_t>(v)] != b) {
      const auto m = mate_[static_cast<std::size_t>(v)];
      in_blossom_[static_cast<std::size_t>(base_[static_cast<std::size_t>(v)])] = 1;
      in_blossom_[static_cast<std::size_t>(base_[static_cast<std::size_t>(m)])] = 1;
      parent_[static_cast<std::size_t>(v)] = child;
      child = m;
      v = parent_[static_cast<std::size_t>(m)];
    }
  }

  std::int64_t find_path(NodeId root) {
    used_.assign(n_, 0);
    parent_.assign(n_, -1);
    base_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) base_[i] = static_cast<std::int64_t>(i);
    used_[root] = 1;
    std::deque<NodeId> queue{root};
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop_front();
      for (NodeId to : g_.neighbors(v)) {
        if (base_[v] == base_[to] || mate_[v] == to) continue;
        if (to == root || (mate_[to] != -1 && parent_[static_cast<std::size_t>(mate_[to])] != -1)) {
          const auto cur = lca(v, to);
          in_blossom_.assign(n_, 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (std::size_t i = 0; i < n_; ++i) {
            if (in_blossom_[static_cast<std::size_t>(base_[i])]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = 1;
                queue.push_back(static_cast<NodeId>(i));
              }
            }
          }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (mate_[to] == -1) return to;
          const auto next = static_cast<NodeId>(mate_[to]);
          used_[next] = 1;
          queue.push_back(next);
        }
      }
    }
    return -1;
  }

  const Graph& g_;
  std::size_t n_;
  std::vector<std::int64_t> mate_;
  std::vector<std::int64_t> parent_;
  std::vector<std::int64_t> base_;
  std::vector<char> used_;
  std::vector<char> in_blossom_;
};

}  // namespace detail

// Maximum matching as a list of edges (u < v), sorted.
inline std::vector<Edge> maximum_matching(const Graph& g) {
  g.require_well_formed();
  const auto mate = detail::BlossomMatcher(g).run();
  std::vector<Edge> out;
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (mate[u] > static_cast<std::int64_t>(u)) out.push_back({u, static_cast<NodeId>(mate[u])});
  return out;
}

// A perfect matching of g, if one exists.
inline std::optional<std::vector<Edge>> has_perfect_matching(const Graph& g) {
  auto m = maximum_matching(g);
  if (2 * m.size() != g.node_count()) return std::nullopt;
  return m;
}

// True iff `m` is a set of disjoint edges of g covering every node.
inline bool is_perfect_matching(const Graph& g, const std::vector<Edge>& m) {
  std::vector<char> covered(g.node_count(), 0);
  for (const auto& e : m) {
    if (e.u >= g.node_count() || e.v >= g.node_count() || e.u == e.v) return false;
    if (!g.adjacent(e.u, e.v) || covered[e.u] || covered[e.v]) return false;
    covered[e.u] = covered[e.v] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

// Searches every A with |A| <= budget (canonical order) for o(G - A) > |A|.
inline std::optional<NodeSet> tutte_violation(const Graph& g, std::size_t budget, const Limits& limits = {}) {
  g.require_well_formed();
  const auto n = g.node_count();
  if (budget > n) throw ContractViolation("tutte_violation budget exceeds node count");
  require_within_cap("tutte_violation subsets", binomial_prefix(n, budget), limits.enumeration_cap);
  std::optional<MaskGraph> mg;
  if (n <= MaskGraph::kMaxNodes) mg.emplace(g);
  for (const auto& slice : subset_slices(n, 0, budget)) {
    std::optional<NodeSet> hit;
    for_each_in_slice(n, slice, [&](const std::vector<NodeId>& a) {
      const auto odd = mg ? mg->odd_component_count(members_mask(a))
                          : components(g, NodeSet::from_ids(n, a)).odd_count;
      if (odd > a.size()) {
        hit = NodeSet::from_ids(n, a);
        return true;
      }
      return false;
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

}  // namespace compdiag
