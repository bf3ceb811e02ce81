#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "compdiag/core/error.hpp"
#include "compdiag/core/graph.hpp"
#include "compdiag/core/limits.hpp"
#include "compdiag/core/node_set.hpp"

namespace compdiag {

enum class DiagnosisModel { Pmc, MmStar };

inline std::string_view model_name(DiagnosisModel m) { return m == DiagnosisModel::Pmc ? "pmc" : "mm*"; }

inline DiagnosisModel parse_model(std::string_view s) {
  if (s == "pmc" || s == "PMC") return DiagnosisModel::Pmc;
  if (s == "mm" || s == "mm*" || s == "MM*" || s == "mmstar" || s == "mm-star") return DiagnosisModel::MmStar;
  throw ParseError("unknown diagnosis model '" + std::string(s) + "' (expected pmc or mm)", 0);
}

// One test outcome. PMC: controller tests `a`. MM*: controller compares a < b.
struct Slot {
  NodeId controller;
  NodeId a;
  NodeId b;
};

// Canonical slot order. PMC: (tester, testee) over every directed edge,
// tester ascending then testee ascending. MM*: (comparator, a, b) with
// a < b both neighbors of the comparator, lexicographic.
inline std::vector<Slot> slot_layout(const Graph& g, DiagnosisModel model) {
  g.require_well_formed();
  std::vector<Slot> slots;
  for (NodeId z = 0; z < g.node_count(); ++z) {
    const auto row = g.neighbors(z);
    if (model == DiagnosisModel::Pmc) {
      for (NodeId v : row) slots.push_back({z, v, v});
    } else {
      for (std::size_t i = 0; i < row.size(); ++i)
        for (std::size_t j = i + 1; j < row.size(); ++j) slots.push_back({z, row[i], row[j]});
    }
  }
  return slots;
}

// Outcome a fault-free controller reports for `slot` under fault set `f`.
inline bool forced_outcome(const Slot& slot, const NodeSet& f) { return f.contains(slot.a) || f.contains(slot.b); }

struct Syndrome {
  DiagnosisModel model = DiagnosisModel::Pmc;
  std::vector<std::uint8_t> outcomes;  // indexed by slot_layout order

  friend bool operator==(const Syndrome&, const Syndrome&) = default;
  friend auto operator<=>(const Syndrome&, const Syndrome&) = default;
};

struct AdversaryPolicy {
  enum class Kind { AllZero, AllOne, Random, Exhaustive };
  Kind kind = Kind::AllZero;
  std::uint64_t seed = 0;

  static AdversaryPolicy all_zero() { return {Kind::AllZero, 0}; }
  static AdversaryPolicy all_one() { return {Kind::AllOne, 0}; }
  static AdversaryPolicy random(std::uint64_t seed) { return {Kind::Random, seed}; }
  static AdversaryPolicy exhaustive() { return {Kind::Exhaustive, 0}; }
};

// Number of slots whose controller is faulty.
inline std::size_t free_slot_count(const Graph& g, const NodeSet& faulty, DiagnosisModel model) {
  require_universe(g, faulty);
  std::size_t count = 0;
  faulty.for_each([&](NodeId z) {
    const auto d = g.degree(z);
    count += model == DiagnosisModel::Pmc ? d : d * (d - (d > 0)) / 2;
  });
  return count;
}

// Faulty-controlled slots take the policy's bits; the rest are forced.
inline Syndrome simulate_syndrome(const Graph& g, const NodeSet& faulty, DiagnosisModel model, AdversaryPolicy policy) {
  if (policy.kind == AdversaryPolicy::Kind::Exhaustive)
    throw ContractViolation("EXHAUSTIVE describes a syndrome set; use enumerate_syndromes");
  require_universe(g, faulty);
  const auto slots = slot_layout(g, model);
  Syndrome s{model, std::vector<std::uint8_t>(slots.size(), 0)};
  std::mt19937_64 rng(policy.seed);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!faulty.contains(slots[i].controller)) {
      s.outcomes[i] = forced_outcome(slots[i], faulty);
      continue;
    }
    switch (policy.kind) {
      case AdversaryPolicy::Kind::AllZero: s.outcomes[i] = 0; break;
      case AdversaryPolicy::Kind::AllOne: s.outcomes[i] = 1; break;
      default: s.outcomes[i] = static_cast<std::uint8_t>(rng() >> 63); break;
    }
  }
  return s;
}

// Ω(F): every syndrome F can produce, free slots counted in binary with the
// first free slot as the low bit.
inline std::vector<Syndrome> enumerate_syndromes(const Graph& g, const NodeSet& faulty, DiagnosisModel model,
                                                 const Limits& limits = {}) {
  const auto free = free_slot_count(g, faulty, model);
  require_within_cap("faulty-controlled syndrome slots", free, limits.syndrome_slots);
  const auto slots = slot_layout(g, model);
  const auto base = simulate_syndrome(g, faulty, model, AdversaryPolicy::all_zero());
  std::vector<std::size_t> free_index;
  for (std::size_t i = 0; i < slots.size(); ++i)
    if (faulty.contains(slots[i].controller)) free_index.push_back(i);
  std::vector<Syndrome> out;
  out.reserve(std::size_t{1} << free);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free); ++bits) {
    auto s = base;
    for (std::size_t k = 0; k < free_index.size(); ++k) s.outcomes[free_index[k]] = (bits >> k) & 1U;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace compdiag
