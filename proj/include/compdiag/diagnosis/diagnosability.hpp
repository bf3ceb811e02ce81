#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "compdiag/core/combinations.hpp"
#include "compdiag/core/components.hpp"
#include "compdiag/core/error.hpp"
#include "compdiag/core/graph.hpp"
#include "compdiag/core/limits.hpp"
#include "compdiag/core/mask_graph.hpp"
#include "compdiag/core/parallel.hpp"
#include "compdiag/diagnosis/distinguish.hpp"

namespace compdiag {

// An indistinguishable pair; |f1| <= |f2|.
struct FaultPair {
  NodeSet f1;
  NodeSet f2;
  std::size_t max_size() const { return std::max(f1.count(), f2.count()); }
};

struct ExactDiagnosability {
  std::int64_t value = 0;
  std::optional<FaultPair> certificate;  // canonical first pair at the minimal level
  bool vacuous = false;                  // no indistinguishable pair among the admissible sets
  std::optional<std::size_t> largest_admissible_size;  // set when vacuous and some admissible set exists
  std::uint64_t pairs_checked = 0;
};

namespace detail {

// Admissible fault sets of each size in canonical order (lexicographic on
// sorted members). `h` = 0 admits every set.
inline std::vector<std::vector<std::uint64_t>> admissible_by_size(const MaskGraph& mg, std::size_t h) {
  const auto n = mg.node_count();
  std::vector<std::vector<std::uint64_t>> out(n + 1);
  for (const auto& slice : subset_slices(n, 0, n)) {
    for_each_in_slice(n, slice, [&](const std::vector<NodeId>& members) {
      const auto mask = members_mask(members);
      if (h == 0 || mg.component_count_at_least(mask, h) >= h) out[slice.size].push_back(mask);
      return false;
    });
  }
  return out;
}

inline ExactDiagnosability exact_search(const Graph& g, DiagnosisModel model, std::size_t h, const Limits& limits) {
  const auto n = g.node_count();
  require_within_cap("exhaustive diagnosability node count", n, limits.exhaustive_nodes);
  require_within_cap("exhaustive diagnosability node count", n, MaskGraph::kMaxNodes);
  const MaskGraph mg(g);
  const auto sets = admissible_by_size(mg, h);
  ExactDiagnosability result;
  std::uint64_t smaller_or_equal = 0;
  for (std::size_t s = 0; s <= n; ++s) {
    smaller_or_equal = saturating_add(smaller_or_equal, sets[s].size());
    const auto& level = sets[s];
    if (level.empty()) continue;
    const auto predicted = saturating_mul(level.size(), smaller_or_equal);
    require_within_cap("exhaustive fault-pair checks at one size level", predicted, limits.enumeration_cap);
    result.pairs_checked = saturating_add(result.pairs_checked, predicted);
    // f2 = level[i]; f1 ranges over every admissible set before it.
    const std::function<std::optional<std::pair<std::uint64_t, std::uint64_t>>(std::size_t)> task =
        [&](std::size_t i) -> std::optional<std::pair<std::uint64_t, std::uint64_t>> {
      const auto f2 = level[i];
      for (std::size_t k = 0; k <= s; ++k) {
        const auto limit = k == s ? i : sets[k].size();
        for (std::size_t j = 0; j < limit; ++j)
          if (!distinguishable_mask(mg, sets[k][j], f2, model)) return std::pair{sets[k][j], f2};
      }
      return std::nullopt;
    };
    if (const auto hit = parallel_find_first(level.size(), task)) {
      result.value = static_cast<std::int64_t>(s) - 1;
      result.certificate = FaultPair{NodeSet::from_mask(n, hit->first), NodeSet::from_mask(n, hit->second)};
      return result;
    }
  }
  result.vacuous = true;
  for (std::size_t s = n + 1; s-- > 0;)
    if (!sets[s].empty()) {
      result.largest_admissible_size = s;
      break;
    }
  result.value = std::max<std::int64_t>(static_cast<std::int64_t>(n) - static_cast<std::int64_t>(h), 0);
  return result;
}

}  // namespace detail

// ct_h by exhaustive search: (smallest max(|f1|,|f2|) over indistinguishable
// pairs of distinct h-component fault sets) - 1. Without such a pair the
// value is max(|V| - h, 0) and `vacuous` is set.
inline ExactDiagnosability component_diagnosability_exact(const Graph& g, std::size_t h, DiagnosisModel model,
                                                          const Limits& limits = {}) {
  if (h == 0) throw ContractViolation("h-component diagnosability needs h >= 1");
  return detail::exact_search(g, model, h, limits);
}

// Largest t such that all pairs of distinct fault sets of size <= t are
// distinguishable.
inline ExactDiagnosability classical_diagnosability_exact(const Graph& g, DiagnosisModel model, const Limits& limits = {}) {
  return detail::exact_search(g, model, 0, limits);
}

struct DiagnosabilityBound {
  std::optional<std::int64_t> value;  // empty: no pair found within the budget
  std::optional<FaultPair> certificate;
  std::size_t seeds_examined = 0;
  bool budget_exhausted = false;
};

// Seed sets for the structured search, in canonical order: for each v
// ascending, {v}, the subsets of N(v) with 2..h+1 members, then connected
// sets of size 2 and 3 whose smallest member is v. Duplicates are dropped.
inline std::vector<NodeSet> structured_seeds(const Graph& g, std::size_t h, std::size_t budget,
                                             bool* exhausted = nullptr) {
  std::vector<NodeSet> seeds;
  std::unordered_set<NodeSet, NodeSetHash> seen;
  const auto n = g.node_count();
  bool full = false;
  auto push = [&](NodeSet s) {
    if (seeds.size() >= budget) {
      full = true;
      return false;
    }
    if (seen.insert(s).second) seeds.push_back(std::move(s));
    return true;
  };
  for (NodeId v = 0; v < n && !full; ++v) {
    if (!push(NodeSet::of(n, {v}))) break;
    const auto row = g.neighbors(v);
    std::vector<NodeId> nbrs(row.begin(), row.end());
    for (std::size_t k = 2; k <= h + 1 && k <= nbrs.size() && !full; ++k) {
      for (const auto& slice : subset_slices(nbrs.size(), k, k)) {
        const bool stopped = for_each_in_slice(nbrs.size(), slice, [&](const std::vector<NodeId>& idx) {
          NodeSet s(n);
          for (auto i : idx) s.insert(nbrs[i]);
          return !push(std::move(s));
        });
        if (stopped) break;
      }
    }
    for (NodeId w : row) {
      if (full) break;
      if (w > v) push(NodeSet::of(n, {v, w}));
    }
    // A connected triple with minimum v is a path through v-w, w > v, whose
    // third node is adjacent to v or to w.
    for (NodeId w : row) {
      if (w < v) continue;
      for (auto pool : {g.neighbors(v), g.neighbors(w)})
        for (NodeId x : pool)
          if (!full && x > v && x != w) push(NodeSet::of(n, {v, w, x}));
    }
  }
  if (exhausted) *exhausted = full;
  return seeds;
}

namespace detail {

struct SeedBest {
  std::size_t max_size;
  FaultPair pair;
};

// Best pair (N(A) ∪ B1, N(A) ∪ B2), B1 != B2 ⊆ A, for one seed A.
inline std::optional<SeedBest> best_for_seed(const Graph& g, const NodeSet& seed, std::size_t h, DiagnosisModel model) {
  const auto base = neighbors_of_set(g, seed);
  const auto members = seed.to_vector();
  const std::size_t variants = std::size_t{1} << members.size();
  std::vector<NodeSet> sets;
  std::vector<bool> cut;
  sets.reserve(variants);
  for (std::size_t b = 0; b < variants; ++b) {
    auto f = base;
    for (std::size_t i = 0; i < members.size(); ++i)
      if ((b >> i) & 1U) f.insert(members[i]);
    cut.push_back(component_count(g, f) >= h);
    sets.push_back(std::move(f));
  }
  std::optional<SeedBest> best;
  for (std::size_t b1 = 0; b1 < variants; ++b1) {
    if (!cut[b1]) continue;
    for (std::size_t b2 = b1 + 1; b2 < variants; ++b2) {
      if (!cut[b2]) continue;
      const auto size = std::max(sets[b1].count(), sets[b2].count());
      if (best && size >= best->max_size) continue;
      if (distinguishable(g, sets[b1], sets[b2], model).distinguishable) continue;
      const bool first_smaller = sets[b1].count() <= sets[b2].count();
      best = SeedBest{size, first_smaller ? FaultPair{sets[b1], sets[b2]} : FaultPair{sets[b2], sets[b1]}};
    }
  }
  return best;
}

}  // namespace detail

// Upper bound on ct_h from indistinguishable h-component pairs built around
// structured seeds. The certificate is the first seed (canonical order)
// attaining the minimum.
inline DiagnosabilityBound component_diagnosability_upper_bound(const Graph& g, std::size_t h, DiagnosisModel model,
                                                                std::size_t search_budget = 5000) {
  if (h == 0) throw ContractViolation("h-component diagnosability needs h >= 1");
  g.require_well_formed();
  DiagnosabilityBound out;
  const auto seeds = structured_seeds(g, h, search_budget, &out.budget_exhausted);
  out.seeds_examined = seeds.size();
  const std::function<std::optional<detail::SeedBest>(std::size_t)> task = [&](std::size_t i) {
    return detail::best_for_seed(g, seeds[i], h, model);
  };
  const auto per_seed = parallel_map(seeds.size(), task);
  for (const auto& r : per_seed) {
    if (!r) continue;
    if (!out.value || static_cast<std::int64_t>(r->max_size) - 1 < *out.value) {
      out.value = static_cast<std::int64_t>(r->max_size) - 1;
      out.certificate = r->pair;
    }
  }
  return out;
}

// Whether (f1, f2) has the form (N(A) ∪ B1, N(A) ∪ B2) with B1, B2 ⊆ A for
// some seed A in `seeds`.
inline bool structured_family_contains(const Graph& g, const NodeSet& f1, const NodeSet& f2,
                                       const std::vector<NodeSet>& seeds) {
  for (const auto& seed : seeds) {
    const auto base = neighbors_of_set(g, seed);
    if (base.is_subset_of(f1) && base.is_subset_of(f2) && (f1 - base).is_subset_of(seed) &&
        (f2 - base).is_subset_of(seed))
      return true;
  }
  return false;
}

}  // namespace compdiag
