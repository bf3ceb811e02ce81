#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "compdiag/core/components.hpp"
#include "compdiag/core/error.hpp"
#include "compdiag/core/graph.hpp"
#include "compdiag/core/mask_graph.hpp"
#include "compdiag/diagnosis/syndrome.hpp"

namespace compdiag {

// Node w outside f1 ∪ f2 whose outcomes separate the two scenarios.
//   PMC:    condition 0, w tests `first` ∈ f1 △ f2.
//   MM* 1:  `first` ∉ f1 ∪ f2 and `second` ∈ f1 △ f2 are both neighbors of w.
//   MM* 2:  `first`, `second` ∈ f1 ∖ f2 are neighbors of w.
//   MM* 3:  `first`, `second` ∈ f2 ∖ f1 are neighbors of w.
struct DistinguishWitness {
  NodeId w;
  int condition;
  NodeId first;
  NodeId second;
  friend bool operator==(const DistinguishWitness&, const DistinguishWitness&) = default;
};

struct DistinguishVerdict {
  bool distinguishable = false;
  std::optional<DistinguishWitness> witness;
};

namespace detail {

inline void require_pair(const Graph& g, const NodeSet& f1, const NodeSet& f2) {
  require_universe(g, f1);
  require_universe(g, f2);
  if (f1 == f2) throw ContractViolation("distinguishability needs two different fault sets");
}

}  // namespace detail

// Structural test. The witness has the lowest w; ties on w resolve to the
// lowest condition number and then the lowest neighbor ids.
inline DistinguishVerdict distinguishable(const Graph& g, const NodeSet& f1, const NodeSet& f2, DiagnosisModel model) {
  detail::require_pair(g, f1, f2);
  g.require_well_formed();
  const auto uni = f1 | f2;
  const auto delta = f1 ^ f2;
  const auto only1 = f1 - f2;
  const auto only2 = f2 - f1;
  for (NodeId w = 0; w < g.node_count(); ++w) {
    if (uni.contains(w)) continue;
    const auto row = g.neighbors(w);
    if (model == DiagnosisModel::Pmc) {
      for (NodeId x : row)
        if (delta.contains(x)) return {true, DistinguishWitness{w, 0, x, x}};
      continue;
    }
    std::optional<NodeId> outside, in_delta, a1, b1, a2, b2;
    for (NodeId x : row) {
      if (!uni.contains(x)) {
        if (!outside) outside = x;
      } else if (only1.contains(x)) {
        if (!in_delta) in_delta = x;
        if (!a1) a1 = x;
        else if (!b1) b1 = x;
      } else if (only2.contains(x)) {
        if (!in_delta) in_delta = x;
        if (!a2) a2 = x;
        else if (!b2) b2 = x;
      }
    }
    if (outside && in_delta) return {true, DistinguishWitness{w, 1, *outside, *in_delta}};
    if (b1) return {true, DistinguishWitness{w, 2, *a1, *b1}};
    if (b2) return {true, DistinguishWitness{w, 3, *a2, *b2}};
  }
  return {false, std::nullopt};
}

// Independent decision of Ω(f1) ∩ Ω(f2) = ∅: some slot whose controller is
// fault-free in both scenarios is forced to different values.
inline bool distinguishable_oracle(const Graph& g, const NodeSet& f1, const NodeSet& f2, DiagnosisModel model) {
  detail::require_pair(g, f1, f2);
  for (const auto& slot : slot_layout(g, model)) {
    if (f1.contains(slot.controller) || f2.contains(slot.controller)) continue;
    if (forced_outcome(slot, f1) != forced_outcome(slot, f2)) return true;
  }
  return false;
}

// Structural test on mask graphs; f1 != f2 is the caller's obligation.
inline bool distinguishable_mask(const MaskGraph& mg, std::uint64_t f1, std::uint64_t f2, DiagnosisModel model) {
  const std::uint64_t delta = f1 ^ f2;
  std::uint64_t outside = mg.all() & ~(f1 | f2);
  if (model == DiagnosisModel::Pmc) {
    for (; outside; outside &= outside - 1)
      if (mg.adj(static_cast<std::size_t>(std::countr_zero(outside))) & delta) return true;
    return false;
  }
  const std::uint64_t only1 = f1 & ~f2, only2 = f2 & ~f1, healthy = outside;
  for (; outside; outside &= outside - 1) {
    const auto a = mg.adj(static_cast<std::size_t>(std::countr_zero(outside)));
    if ((a & healthy) && (a & delta)) return true;
    if (std::popcount(a & only1) >= 2 || std::popcount(a & only2) >= 2) return true;
  }
  return false;
}

struct HComponentVerdict {
  bool is_cut = false;            // component_count >= h
  std::size_t component_count = 0;
  std::size_t max_h = 0;          // largest h for which f is an h-component fault set
  bool disconnected = false;      // at least two components survive
};

inline HComponentVerdict h_component_verdict(const Graph& g, const NodeSet& f, std::size_t h) {
  const auto c = component_count(g, f);
  return {c >= h, c, c, c >= 2};
}

}  // namespace compdiag
