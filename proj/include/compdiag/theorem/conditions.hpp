#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "compdiag/core/combinations.hpp"
#include "compdiag/core/components.hpp"
#include "compdiag/core/error.hpp"
#include "compdiag/core/graph.hpp"
#include "compdiag/core/limits.hpp"
#include "compdiag/core/mask_graph.hpp"
#include "compdiag/core/matching.hpp"
#include "compdiag/core/parallel.hpp"
#include "compdiag/diagnosis/distinguish.hpp"

namespace compdiag {

// |N(A)| forced by the local intersection pattern: (h+1)(r-1) - C(h+1,2) + 1.
inline std::int64_t neighborhood_size_formula(std::int64_t r, std::int64_t h) {
  return (h + 1) * (r - 1) - (h + 1) * h / 2 + 1;
}

// Deletion budget of the connectivity condition: hr - (h-1)(h+2)/2 - 1.
inline std::int64_t condition_b_budget(std::int64_t r, std::int64_t h) { return h * r - (h - 1) * (h + 2) / 2 - 1; }

// A node v and A = {v_1..v_{h+1}} ⊆ N(v), all of degree r, with
//   |N(v_i) ∩ N(v_j)| = 2 for every pair i != j,
//   |⋂_{i∈K} N(v_i)| = 1 for |K| >= 3 and |N(v) ∩ N(v_i)| = 0.
// Requiring every pair (not only pairs among v_1..v_h) is what forces the
// size of N(A); with h = 1 the weaker reading would constrain nothing.
struct ConditionAWitness {
  NodeId v = 0;
  std::vector<NodeId> a;
  std::int64_t r = 0;
  std::int64_t h = 0;
  bool relaxed_parameters = false;  // r >= 4 and 1 <= h <= r-3 fails
  std::size_t neighborhood_size = 0;
  bool neighborhood_identity = false;
};

namespace detail {

inline bool condition_a_holds(const Graph& g, NodeId v, const std::vector<NodeId>& a) {
  const auto n = g.node_count();
  for (auto x : a)
    if (common_neighbor_count(g, v, x) != 0) return false;
  const auto k = a.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (common_neighbor_count(g, a[i], a[j]) != 2) return false;
  if (k >= 3) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      if (std::popcount(mask) < 3) continue;
      NodeSet members(n);
      for (std::size_t i = 0; i < k; ++i)
        if ((mask >> i) & 1U) members.insert(a[i]);
      if (common_neighbors(g, members).count() != 1) return false;
    }
  }
  return true;
}

}  // namespace detail

// First witness in canonical order: v ascending, A lexicographic within the
// sorted degree-r neighbors of v.
inline std::optional<ConditionAWitness> find_condition_a(const Graph& g, std::int64_t r, std::int64_t h) {
  g.require_well_formed();
  if (h < 0 || r < 0) throw ContractViolation("condition (a) needs r, h >= 0");
  const auto need = static_cast<std::size_t>(h + 1);
  std::optional<ConditionAWitness> found;
  for (NodeId v = 0; v < g.node_count() && !found; ++v) {
    if (static_cast<std::int64_t>(g.degree(v)) != r) continue;
    std::vector<NodeId> pool;
    for (NodeId x : g.neighbors(v))
      if (static_cast<std::int64_t>(g.degree(x)) == r) pool.push_back(x);
    if (pool.size() < need) continue;
    for (const auto& slice : subset_slices(pool.size(), need, need)) {
      const bool stop = for_each_in_slice(pool.size(), slice, [&](const std::vector<NodeId>& idx) {
        std::vector<NodeId> a;
        for (auto i : idx) a.push_back(pool[i]);
        if (!detail::condition_a_holds(g, v, a)) return false;
        found = ConditionAWitness{v, std::move(a), r, h};
        return true;
      });
      if (stop) break;
    }
  }
  if (!found) return std::nullopt;
  auto& w = *found;
  w.relaxed_parameters = !(r >= 4 && h >= 1 && h <= r - 3);
  w.neighborhood_size = neighbors_of_set(g, NodeSet::from_ids(g.node_count(), w.a)).count();
  w.neighborhood_identity = static_cast<std::int64_t>(w.neighborhood_size) == neighborhood_size_formula(r, h);
  return found;
}

struct ConditionBViolation {
  NodeSet removed;
  std::size_t largest_component = 0;
};

struct ConditionBReport {
  std::int64_t h = 0;
  std::int64_t r = 0;
  std::int64_t budget = 0;
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;          // per size, sampled mode
  std::uint64_t sets_checked = 0;
  std::uint64_t violation_count = 0;
  std::vector<ConditionBViolation> violations;  // first few, canonical order
  bool passed() const { return violation_count == 0; }
};

enum class ConditionBMode { Auto, Exhaustive, Sampled };

struct ConditionBOptions {
  ConditionBMode mode = ConditionBMode::Auto;
  std::uint64_t seed = 20240601;
  std::uint64_t trials = 20000;
  std::size_t keep = 10;
  std::uint64_t auto_exhaustive_limit = 10'000'000;
};

namespace detail {

// G - S is acceptable when connected or when its non-largest components hold
// at most h-1 nodes in total. Returns the largest component size on violation.
inline std::optional<std::size_t> condition_b_violation(const MaskGraph& mg, std::uint64_t removed, std::size_t slack) {
  std::uint64_t alive = mg.all() & ~removed;
  const auto total = static_cast<std::size_t>(std::popcount(alive));
  std::size_t small = 0;
  std::uint64_t rest = alive;
  while (rest) {
    const auto comp = mg.flood(rest);
    const auto size = static_cast<std::size_t>(std::popcount(comp));
    if (size + slack >= total) return std::nullopt;
    small += size;
    rest &= ~comp;
    if (small > slack) break;
  }
  if (small <= slack && !rest) return std::nullopt;
  std::size_t largest = 0;
  for (rest = alive; rest;) {
    const auto comp = mg.flood(rest);
    largest = std::max(largest, static_cast<std::size_t>(std::popcount(comp)));
    rest &= ~comp;
  }
  return largest;
}

inline std::optional<std::size_t> condition_b_violation(const Graph& g, const NodeSet& removed, std::size_t slack) {
  const auto d = components(g, removed);
  const auto total = g.node_count() - removed.count();
  if (d.count() <= 1 || d.largest + slack >= total) return std::nullopt;
  return d.largest;
}

struct SliceOutcome {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::vector<ConditionBViolation> first;
};

}  // namespace detail

// Every S with |S| <= budget: G - S is connected or its largest component
// has at least |V| - |S| - (h-1) nodes.
inline ConditionBReport check_condition_b(const Graph& g, std::int64_t r, std::int64_t h, ConditionBOptions opt = {},
                                          const Limits& limits = {}) {
  g.require_well_formed();
  ConditionBReport rep;
  rep.h = h;
  rep.r = r;
  rep.budget = condition_b_budget(r, h);
  rep.seed = opt.seed;
  if (rep.budget < 0) return rep;
  const auto n = g.node_count();
  const auto budget = static_cast<std::size_t>(std::min<std::int64_t>(rep.budget, static_cast<std::int64_t>(n)));
  const auto slack = static_cast<std::size_t>(std::max<std::int64_t>(h - 1, 0));
  const auto predicted = binomial_prefix(n, budget);
  bool exhaustive = opt.mode == ConditionBMode::Exhaustive ||
                    (opt.mode == ConditionBMode::Auto && predicted <= opt.auto_exhaustive_limit);
  rep.exhaustive = exhaustive;
  const bool use_mask = n <= MaskGraph::kMaxNodes;
  std::optional<MaskGraph> mg;
  if (use_mask) mg.emplace(g);

  if (exhaustive) {
    if (predicted > limits.enumeration_cap)
      throw CapExceeded("condition (b) exhaustive subsets (use sampled mode)", predicted, limits.enumeration_cap);
    const auto slices = subset_slices(n, 0, budget);
    const std::function<detail::SliceOutcome(std::size_t)> task = [&](std::size_t i) {
      detail::SliceOutcome out;
      for_each_in_slice(n, slices[i], [&](const std::vector<NodeId>& members) {
        ++out.checked;
        std::optional<std::size_t> bad;
        if (use_mask) bad = detail::condition_b_violation(*mg, members_mask(members), slack);
        else bad = detail::condition_b_violation(g, NodeSet::from_ids(n, members), slack);
        if (bad) {
          ++out.violations;
          if (out.first.size() < opt.keep) out.first.push_back({NodeSet::from_ids(n, members), *bad});
        }
        return false;
      });
      return out;
    };
    for (auto& s : parallel_map(slices.size(), task)) {
      rep.sets_checked += s.checked;
      rep.violation_count += s.violations;
      for (auto& v : s.first)
        if (rep.violations.size() < opt.keep) rep.violations.push_back(std::move(v));
    }
    return rep;
  }

  rep.trials = opt.trials;
  std::mt19937_64 rng(opt.seed);
  std::vector<NodeId> ids(n);
  for (NodeId i = 0; i < n; ++i) ids[i] = i;
  for (std::size_t k = 1; k <= budget; ++k) {
    for (std::uint64_t t = 0; t < opt.trials; ++t) {
      // Partial Fisher-Yates: the first k entries are a uniform k-subset.
      for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(ids[i], ids[pick(rng)]);
      }
      const std::vector<NodeId> members(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k));
      ++rep.sets_checked;
      std::optional<std::size_t> bad;
      if (use_mask) bad = detail::condition_b_violation(*mg, members_mask(members), slack);
      else bad = detail::condition_b_violation(g, NodeSet::from_ids(n, members), slack);
      if (bad) {
        ++rep.violation_count;
        if (rep.violations.size() < opt.keep) rep.violations.push_back({NodeSet::from_ids(n, members), *bad});
      }
    }
  }
  return rep;
}

struct Theorem1Pair {
  NodeSet f1;
  NodeSet f2;
  std::int64_t expected_f1_size = 0;
  std::size_t f1_components = 0;
  std::size_t f2_components = 0;
  bool indistinguishable_pmc = false;
  bool indistinguishable_mm = false;
  bool size_hypothesis = false;     // |V| >= 2^(2r-2)
  bool has_perfect_matching = false;
};

// f1 = N(A), f2 = f1 ∪ {v_{h+1}}. Throws MismatchError when a consequence
// of the witness fails on g.
inline Theorem1Pair construct_theorem1_pair(const Graph& g, const ConditionAWitness& w) {
  const auto n = g.node_count();
  if (w.a.size() != static_cast<std::size_t>(w.h + 1)) throw ContractViolation("witness must have h+1 members");
  Theorem1Pair p;
  const auto a = NodeSet::from_ids(n, w.a);
  p.f1 = neighbors_of_set(g, a);
  p.f2 = p.f1;
  p.f2.insert(w.a.back());
  p.expected_f1_size = neighborhood_size_formula(w.r, w.h);
  p.f1_components = component_count(g, p.f1);
  p.f2_components = component_count(g, p.f2);
  p.indistinguishable_pmc = !distinguishable(g, p.f1, p.f2, DiagnosisModel::Pmc).distinguishable;
  p.indistinguishable_mm = !distinguishable(g, p.f1, p.f2, DiagnosisModel::MmStar).distinguishable;
  const auto exponent = 2 * w.r - 2;
  p.size_hypothesis = exponent < 0 || (exponent < 63 && n >= (std::uint64_t{1} << exponent));
  p.has_perfect_matching = has_perfect_matching(g).has_value();

  const auto need = static_cast<std::size_t>(w.h + 1);
  std::string failed;
  if (static_cast<std::int64_t>(p.f1.count()) != p.expected_f1_size)
    failed = "|f1| = " + std::to_string(p.f1.count()) + ", expected " + std::to_string(p.expected_f1_size);
  else if (p.f1_components < need || p.f2_components < need)
    failed = "components after removal: " + std::to_string(p.f1_components) + " and " +
             std::to_string(p.f2_components) + ", expected >= " + std::to_string(need);
  else if (!p.indistinguishable_pmc)
    failed = "pair is distinguishable under PMC";
  else if (!p.indistinguishable_mm)
    failed = "pair is distinguishable under MM*";
  if (!failed.empty()) throw MismatchError("indistinguishable-pair construction failed: " + failed);
  return p;
}

}  // namespace compdiag
