#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "compdiag/core/error.hpp"
#include "compdiag/core/graph.hpp"

namespace compdiag {

// Graphs of at most 64 nodes with one adjacency word per node. The
// exhaustive searches run on this representation.
class MaskGraph {
 public:
  static constexpr std::size_t kMaxNodes = 64;

  explicit MaskGraph(const Graph& g) : n_(g.node_count()) {
    g.require_well_formed();
    if (n_ > kMaxNodes) throw ContractViolation("MaskGraph supports at most 64 nodes");
    adj_.resize(n_, 0);
    for (NodeId u = 0; u < n_; ++u)
      for (NodeId v : g.neighbors(u)) adj_[u] |= bit(v);
    all_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }

  static constexpr std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

  std::size_t node_count() const noexcept { return n_; }
  std::uint64_t all() const noexcept { return all_; }
  std::uint64_t adj(std::size_t u) const noexcept { return adj_[u]; }

  // Component containing the lowest node of `alive`, restricted to `alive`.
  std::uint64_t flood(std::uint64_t alive) const noexcept {
    if (!alive) return 0;
    std::uint64_t comp = alive & (~alive + 1);
    std::uint64_t frontier = comp;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj_[static_cast<std::size_t>(std::countr_zero(f))];
      next &= alive & ~comp;
      comp |= next;
      frontier = next;
    }
    return comp;
  }

  std::size_t component_count(std::uint64_t removed) const noexcept {
    std::uint64_t alive = all_ & ~removed;
    std::size_t c = 0;
    while (alive) {
      alive &= ~flood(alive);
      ++c;
    }
    return c;
  }

  // Counts components, stopping once `limit` is reached.
  std::size_t component_count_at_least(std::uint64_t removed, std::size_t limit) const noexcept {
    std::uint64_t alive = all_ & ~removed;
    std::size_t c = 0;
    while (alive && c < limit) {
      alive &= ~flood(alive);
      ++c;
    }
    return c;
  }

  std::size_t odd_component_count(std::uint64_t removed) const noexcept {
    std::uint64_t alive = all_ & ~removed;
    std::size_t odd = 0;
    while (alive) {
      const auto comp = flood(alive);
      odd += static_cast<std::size_t>(std::popcount(comp)) & 1U;
      alive &= ~comp;
    }
    return odd;
  }

  // True iff some component of G - removed has at least `threshold` nodes.
  bool has_component_of_size(std::uint64_t removed, std::size_t threshold) const noexcept {
    std::uint64_t alive = all_ & ~removed;
    while (alive && static_cast<std::size_t>(std::popcount(alive)) >= threshold) {
      const auto comp = flood(alive);
      if (static_cast<std::size_t>(std::popcount(comp)) >= threshold) return true;
      alive &= ~comp;
    }
    return threshold == 0;
  }

  std::size_t largest_component(std::uint64_t removed) const noexcept {
    std::uint64_t alive = all_ & ~removed;
    std::size_t best = 0;
    while (alive) {
      const auto comp = flood(alive);
      best = std::max(best, static_cast<std::size_t>(std::popcount(comp)));
      alive &= ~comp;
    }
    return best;
  }

 private:
  std::size_t n_ = 0;
  std::uint64_t all_ = 0;
  std::vector<std::uint64_t> adj_;
};

}  // namespace compdiag
