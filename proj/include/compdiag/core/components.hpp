#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "compdiag/core/graph.hpp"
#include "compdiag/core/node_set.hpp"

namespace compdiag {

// Components of G - removed, numbered in order of their lowest surviving node.
struct ComponentDecomposition {
  static constexpr std::int32_t kRemoved = -1;

  std::vector<std::int32_t> component_of;  // per node; kRemoved for removed nodes
  std::vector<std::size_t> sizes;          // per component
  std::size_t largest = 0;
  std::size_t odd_count = 0;

  std::size_t count() const noexcept { return sizes.size(); }
};

inline ComponentDecomposition components(const Graph& g, const NodeSet& removed) {
  g.require_well_formed();
  require_universe(g, removed);
  const auto n = g.node_count();
  ComponentDecomposition d;
  d.component_of.assign(n, ComponentDecomposition::kRemoved);
  std::vector<NodeId> stack;
  std::vector<char> seen(n, 0);
  removed.for_each([&](NodeId u) { seen[u] = 1; });
  for (NodeId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    const auto id = static_cast<std::int32_t>(d.sizes.size());
    std::size_t size = 0;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      d.component_of[u] = id;
      ++size;
      for (NodeId v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    d.sizes.push_back(size);
    d.largest = std::max(d.largest, size);
    if (size % 2 == 1) ++d.odd_count;
  }
  return d;
}

inline std::size_t component_count(const Graph& g, const NodeSet& removed) { return components(g, removed).count(); }

inline bool is_connected(const Graph& g) { return components(g, NodeSet(g.node_count())).count() <= 1; }

}  // namespace compdiag
