#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "compdiag/core/components.hpp"
#include "compdiag/core/graph.hpp"
#include "compdiag/core/node_set.hpp"

namespace testing_support {

using compdiag::Edge;
using compdiag::Graph;
using compdiag::NodeId;
using compdiag::NodeSet;

inline Graph graph_of(std::size_t n, std::vector<Edge> edges, std::vector<std::string> labels = {}) {
  for (auto& e : edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(edges.begin(), edges.end());
  return Graph::from_edges(n, edges, std::move(labels));
}

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return graph_of(n, e);
}

inline Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.push_back({i, static_cast<NodeId>((i + 1) % n)});
  return graph_of(n, e);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.push_back({i, j});
  return graph_of(n, e);
}

inline Graph petersen() {
  std::vector<Edge> e;
  for (NodeId i = 0; i < 5; ++i) {
    e.push_back({i, static_cast<NodeId>((i + 1) % 5)});
    e.push_back({i, static_cast<NodeId>(i + 5)});
    e.push_back({static_cast<NodeId>(i + 5), static_cast<NodeId>((i + 2) % 5 + 5)});
  }
  return graph_of(10, e);
}

// Graph whose edge set is the bit pattern `mask` over the pairs (i<j) in
// lexicographic order.
inline Graph graph_from_pair_mask(std::size_t n, std::uint64_t mask) {
  std::vector<Edge> e;
  std::size_t bit = 0;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j, ++bit)
      if ((mask >> bit) & 1U) e.push_back({i, j});
  return graph_of(n, e);
}

// Every labelled connected simple graph on n nodes.
inline std::vector<Graph> all_connected_graphs(std::size_t n) {
  std::vector<Graph> out;
  const std::size_t pairs = n * (n - 1) / 2;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    auto g = graph_from_pair_mask(n, mask);
    if (compdiag::is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

// Random connected graph: a random spanning tree plus extra edges with
// probability p.
inline Graph random_connected(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<Edge> e;
  for (NodeId v = 1; v < n; ++v) {
    std::uniform_int_distribution<NodeId> parent(0, v - 1);
    e.push_back({parent(rng), v});
  }
  std::bernoulli_distribution extra(p);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (extra(rng) && std::find(e.begin(), e.end(), Edge{i, j}) == e.end()) e.push_back({i, j});
  return graph_of(n, e);
}

inline NodeSet random_subset(std::size_t n, std::mt19937_64& rng) {
  NodeSet s(n);
  for (NodeId i = 0; i < n; ++i)
    if (rng() & 1U) s.insert(i);
  return s;
}

}  // namespace testing_support
