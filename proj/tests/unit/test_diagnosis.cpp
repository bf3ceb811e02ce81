#include <gtest/gtest.h>

#include <random>
#include <set>

#include "compdiag/compdiag.hpp"
#include "test_support.hpp"

using namespace compdiag;
using namespace testing_support;

namespace {

constexpr DiagnosisModel kModels[] = {DiagnosisModel::Pmc, DiagnosisModel::MmStar};

NodeSet ids(std::size_t n, std::initializer_list<NodeId> members) { return NodeSet::of(n, members); }

std::set<std::vector<std::uint8_t>> omega(const Graph& g, const NodeSet& f, DiagnosisModel model) {
  std::set<std::vector<std::uint8_t>> out;
  for (const auto& s : enumerate_syndromes(g, f, model)) out.insert(s.outcomes);
  return out;
}

bool disjoint(const std::set<std::vector<std::uint8_t>>& a, const std::set<std::vector<std::uint8_t>>& b) {
  for (const auto& s : a)
    if (b.count(s)) return false;
  return true;
}

// Certificate sanity: two distinct h-component sets, indistinguishable by
// both routes, whose larger side is value + 1.
void expect_valid_certificate(const Graph& g, std::size_t h, DiagnosisModel model, const ExactDiagnosability& r) {
  ASSERT_TRUE(r.certificate);
  const auto& [f1, f2] = *r.certificate;
  EXPECT_NE(f1, f2);
  EXPECT_GE(component_count(g, f1), h);
  EXPECT_GE(component_count(g, f2), h);
  EXPECT_FALSE(distinguishable(g, f1, f2, model).distinguishable);
  EXPECT_FALSE(distinguishable_oracle(g, f1, f2, model));
  EXPECT_EQ(static_cast<std::int64_t>(std::max(f1.count(), f2.count())), r.value + 1);
}

}  // namespace

TEST(Syndrome, ForcedAndAdversarySlots) {
  const auto k2 = complete(2);
  const auto clean = simulate_syndrome(k2, NodeSet(2), DiagnosisModel::Pmc, AdversaryPolicy::all_one());
  EXPECT_EQ(clean.outcomes, (std::vector<std::uint8_t>{0, 0}));

  // Slot order on a-b-c: <a,b>, <b,a>, <b,c>, <c,b>.
  const auto p3 = path(3);
  const auto s = simulate_syndrome(p3, ids(3, {1}), DiagnosisModel::Pmc, AdversaryPolicy::all_zero());
  EXPECT_EQ(s.outcomes, (std::vector<std::uint8_t>{1, 0, 0, 1}));
  const auto s1 = simulate_syndrome(p3, ids(3, {1}), DiagnosisModel::Pmc, AdversaryPolicy::all_one());
  EXPECT_EQ(s1.outcomes, (std::vector<std::uint8_t>{1, 1, 1, 1}));

  // Star with center 0: the only comparison is (1,2)_0.
  const auto star = graph_of(3, {{0, 1}, {0, 2}});
  const auto m = simulate_syndrome(star, ids(3, {1}), DiagnosisModel::MmStar, AdversaryPolicy::all_zero());
  ASSERT_EQ(m.outcomes.size(), 1u);
  EXPECT_EQ(m.outcomes[0], 1);

  EXPECT_THROW(simulate_syndrome(p3, NodeSet(3), DiagnosisModel::Pmc, AdversaryPolicy::exhaustive()), ContractViolation);
}

TEST(Syndrome, RandomPolicyIsSeededAndTouchesOnlyFreeSlots) {
  const auto g = gen_hypercube(4);
  const auto f = ids(16, {0, 5, 9});
  const auto a = simulate_syndrome(g, f, DiagnosisModel::MmStar, AdversaryPolicy::random(42));
  const auto b = simulate_syndrome(g, f, DiagnosisModel::MmStar, AdversaryPolicy::random(42));
  EXPECT_EQ(a, b);
  const auto zero = simulate_syndrome(g, f, DiagnosisModel::MmStar, AdversaryPolicy::all_zero());
  const auto slots = slot_layout(g, DiagnosisModel::MmStar);
  for (std::size_t i = 0; i < slots.size(); ++i)
    if (!f.contains(slots[i].controller)) EXPECT_EQ(a.outcomes[i], zero.outcomes[i]);
}

TEST(Syndrome, SlotLayoutSizes) {
  const auto q3 = gen_hypercube(3);
  EXPECT_EQ(slot_layout(q3, DiagnosisModel::Pmc).size(), 24u);    // both directions of 12 edges
  EXPECT_EQ(slot_layout(q3, DiagnosisModel::MmStar).size(), 24u);  // 8 comparators x C(3,2)
  EXPECT_EQ(slot_layout(complete(5), DiagnosisModel::MmStar).size(), 30u);
}

TEST(EnumerateSyndromes, Counts) {
  const auto k2 = complete(2);
  EXPECT_EQ(enumerate_syndromes(k2, NodeSet(2), DiagnosisModel::Pmc).size(), 1u);
  const auto one = enumerate_syndromes(k2, ids(2, {0}), DiagnosisModel::Pmc);
  ASSERT_EQ(one.size(), 2u);
  for (const auto& s : one) EXPECT_EQ(s.outcomes[1], 1);  // <v,u> is forced to 1
  EXPECT_EQ(enumerate_syndromes(complete(3), ids(3, {0}), DiagnosisModel::MmStar).size(), 2u);

  Limits tiny;
  tiny.syndrome_slots = 3;
  EXPECT_THROW(enumerate_syndromes(gen_hypercube(3), ids(8, {0, 1}), DiagnosisModel::Pmc, tiny), CapExceeded);
}

TEST(EnumerateSyndromes, ForcedBitsNeverChange) {
  const auto g = petersen();
  const auto f = ids(10, {0, 7});
  for (auto model : kModels) {
    const auto slots = slot_layout(g, model);
    const auto all = enumerate_syndromes(g, f, model);
    EXPECT_EQ(all.size(), std::size_t{1} << free_slot_count(g, f, model));
    for (const auto& s : all)
      for (std::size_t i = 0; i < slots.size(); ++i)
        if (!f.contains(slots[i].controller)) EXPECT_EQ(s.outcomes[i], forced_outcome(slots[i], f));
  }
}

TEST(Distinguishable, Examples) {
  const auto k2 = complete(2);
  for (auto model : kModels) {
    EXPECT_FALSE(distinguishable(k2, ids(2, {0}), ids(2, {1}), model).distinguishable);
    EXPECT_FALSE(distinguishable_oracle(k2, ids(2, {0}), ids(2, {1}), model));
  }
  const auto p3 = path(3);
  const auto v = distinguishable(p3, ids(3, {0}), ids(3, {1}), DiagnosisModel::Pmc);
  ASSERT_TRUE(v.distinguishable);
  EXPECT_EQ(v.witness->w, 2u);
  EXPECT_EQ(v.witness->first, 1u);
  EXPECT_TRUE(distinguishable_oracle(p3, ids(3, {0}), ids(3, {1}), DiagnosisModel::Pmc));
  EXPECT_THROW(distinguishable(p3, ids(3, {0}), ids(3, {0}), DiagnosisModel::Pmc), ContractViolation);
  EXPECT_THROW(distinguishable_oracle(p3, ids(3, {0}), ids(3, {0}), DiagnosisModel::MmStar), ContractViolation);
}

TEST(Distinguishable, MmStarWitnessConditions) {
  // Condition (1): comparator 0 sees a healthy neighbor and one in the difference.
  const auto star3 = graph_of(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto c1 = distinguishable(star3, ids(4, {1}), ids(4, {2}), DiagnosisModel::MmStar);
  ASSERT_TRUE(c1.distinguishable);
  EXPECT_EQ(c1.witness->condition, 1);
  EXPECT_EQ(c1.witness->first, 3u);
  // Condition (2): both neighbors of the center lie in f1 \ f2.
  const auto star2 = graph_of(3, {{0, 1}, {0, 2}});
  const auto c2 = distinguishable(star2, ids(3, {1, 2}), NodeSet(3), DiagnosisModel::MmStar);
  ASSERT_TRUE(c2.distinguishable);
  EXPECT_EQ(c2.witness->condition, 2);
  // Condition (3): mirror image.
  const auto c3 = distinguishable(star2, NodeSet(3), ids(3, {1, 2}), DiagnosisModel::MmStar);
  ASSERT_TRUE(c3.distinguishable);
  EXPECT_EQ(c3.witness->condition, 3);
  // One member each side with no healthy neighbor: indistinguishable.
  EXPECT_FALSE(distinguishable(star2, ids(3, {1}), ids(3, {2}), DiagnosisModel::MmStar).distinguishable);
}

TEST(Distinguishable, MaterializedSyndromeSetsAgree) {
  // Third route: build Ω(f) explicitly and intersect.
  for (std::size_t n = 2; n <= 4; ++n) {
    for (const auto& g : all_connected_graphs(n)) {
      for (auto model : kModels) {
        std::vector<std::set<std::vector<std::uint8_t>>> sets;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) sets.push_back(omega(g, NodeSet::from_mask(n, m), model));
        for (std::uint64_t a = 0; a < sets.size(); ++a)
          for (std::uint64_t b = 0; b < sets.size(); ++b) {
            if (a == b) continue;
            const auto f1 = NodeSet::from_mask(n, a), f2 = NodeSet::from_mask(n, b);
            const bool expected = disjoint(sets[a], sets[b]);
            ASSERT_EQ(distinguishable(g, f1, f2, model).distinguishable, expected);
            ASSERT_EQ(distinguishable_oracle(g, f1, f2, model), expected);
          }
      }
    }
  }
}

TEST(Distinguishable, OracleAgreesOnRandomPairs) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto n = 6 + trial % 5;
    const auto g = random_connected(n, 0.3, rng);
    const auto f1 = random_subset(n, rng);
    auto f2 = random_subset(n, rng);
    if (f1 == f2) continue;
    const MaskGraph mg(g);
    for (auto model : kModels) {
      const auto structural = distinguishable(g, f1, f2, model).distinguishable;
      ASSERT_EQ(structural, distinguishable_oracle(g, f1, f2, model));
      ASSERT_EQ(structural, distinguishable_mask(mg, f1.mask(), f2.mask(), model));
      ASSERT_EQ(structural, distinguishable(g, f2, f1, model).distinguishable);
    }
  }
}

TEST(Distinguishable, WitnessPersistsWhenCommonFaultsAreAdded) {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto g = random_connected(9, 0.3, rng);
    const auto f1 = random_subset(9, rng), f2 = random_subset(9, rng);
    if (f1 == f2) continue;
    for (auto model : kModels) {
      const auto v = distinguishable(g, f1, f2, model);
      if (!v.distinguishable) continue;
      // Grow both sides by the same nodes, never the witness or its neighbors used.
      auto extra = random_subset(9, rng) - (f1 ^ f2);
      extra.erase(v.witness->w);
      if (model == DiagnosisModel::MmStar) {
        extra.erase(v.witness->first);
        extra.erase(v.witness->second);
      }
      EXPECT_TRUE(distinguishable(g, f1 | extra, f2 | extra, model).distinguishable);
      ++checked;
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(HComponentVerdict, Examples) {
  const auto q3 = gen_hypercube(3);
  const auto cut = h_component_verdict(q3, ids(8, {1, 2, 4}), 2);
  EXPECT_TRUE(cut.is_cut);
  EXPECT_EQ(cut.component_count, 2u);
  EXPECT_EQ(cut.max_h, 2u);
  EXPECT_TRUE(cut.disconnected);
  const auto whole = h_component_verdict(q3, NodeSet(8), 2);
  EXPECT_FALSE(whole.is_cut);
  EXPECT_FALSE(whole.disconnected);
  // Every set is a 1-component set while a node survives.
  EXPECT_TRUE(h_component_verdict(q3, NodeSet(8), 1).is_cut);
}

TEST(HComponentVerdict, NeighborhoodOfTheoremSeedIsolatesItsMembers) {
  const auto ccn3 = gen_ccn(3).graph;
  const auto w = find_condition_a(ccn3, 4, 1);
  ASSERT_TRUE(w);
  NodeSet a(ccn3.node_count());
  for (auto x : w->a) a.insert(x);
  const auto f = neighbors_of_set(ccn3, a);
  EXPECT_EQ(f.count(), 6u);
  EXPECT_GE(h_component_verdict(ccn3, f, 2).component_count, 3u);  // both members of A plus the rest
}

TEST(ExactDiagnosability, GoldenValues) {
  struct Case {
    const char* name;
    Graph g;
    DiagnosisModel model;
    std::int64_t classical;
    std::int64_t component;
  };
  const std::vector<Case> cases{
      {"Q3 pmc", gen_hypercube(3), DiagnosisModel::Pmc, 3, 3},
      {"Q3 mm", gen_hypercube(3), DiagnosisModel::MmStar, 2, 2},
      {"C6 pmc", cycle(6), DiagnosisModel::Pmc, 2, 2},
      {"C6 mm", cycle(6), DiagnosisModel::MmStar, 1, 1},
      {"C4 pmc", cycle(4), DiagnosisModel::Pmc, 1, 1},
      {"C4 mm", cycle(4), DiagnosisModel::MmStar, 0, 1},
  };
  for (const auto& c : cases) {
    const auto classical = classical_diagnosability_exact(c.g, c.model);
    EXPECT_EQ(classical.value, c.classical) << c.name;
    EXPECT_LE(classical.value, static_cast<std::int64_t>(c.g.min_degree())) << c.name;
    expect_valid_certificate(c.g, 0, c.model, classical);
    const auto ct = component_diagnosability_exact(c.g, 2, c.model);
    EXPECT_EQ(ct.value, c.component) << c.name;
    EXPECT_FALSE(ct.vacuous);
    EXPECT_GE(ct.value, classical.value) << c.name;
    expect_valid_certificate(c.g, 2, c.model, ct);
  }
  const auto q3 = component_diagnosability_exact(gen_hypercube(3), 2, DiagnosisModel::Pmc);
  EXPECT_EQ(q3.certificate->f1.to_vector(), (std::vector<NodeId>{0, 5, 6, 7}));
  EXPECT_EQ(q3.certificate->f2.to_vector(), (std::vector<NodeId>{1, 2, 3, 4}));
  const auto q3mm = component_diagnosability_exact(gen_hypercube(3), 2, DiagnosisModel::MmStar);
  EXPECT_EQ(q3mm.certificate->f1.to_vector(), (std::vector<NodeId>{0, 3, 5}));
  EXPECT_EQ(q3mm.certificate->f2.to_vector(), (std::vector<NodeId>{0, 3, 6}));
  const auto c6 = component_diagnosability_exact(cycle(6), 2, DiagnosisModel::Pmc);
  EXPECT_EQ(c6.certificate->f1.to_vector(), (std::vector<NodeId>{0, 1, 3}));
  EXPECT_EQ(c6.certificate->f2.to_vector(), (std::vector<NodeId>{0, 2, 3}));
  const auto c4 = component_diagnosability_exact(cycle(4), 2, DiagnosisModel::Pmc);
  EXPECT_EQ(c4.certificate->f1.to_vector(), (std::vector<NodeId>{0, 2}));
  EXPECT_EQ(c4.certificate->f2.to_vector(), (std::vector<NodeId>{1, 3}));
}

TEST(ExactDiagnosability, VacuousWhenNoCutPairExists) {
  const auto k2 = complete(2);
  for (auto model : kModels) {
    EXPECT_EQ(classical_diagnosability_exact(k2, model).value, 0);
    const auto r = component_diagnosability_exact(k2, 2, model);
    EXPECT_TRUE(r.vacuous);
    EXPECT_EQ(r.value, 0);
    EXPECT_FALSE(r.certificate);
    EXPECT_FALSE(r.largest_admissible_size);  // K2 has no 2-component set at all
  }
  // A complete graph never splits: no h=2 sets, value |V| - h.
  const auto k5 = component_diagnosability_exact(complete(5), 2, DiagnosisModel::Pmc);
  EXPECT_TRUE(k5.vacuous);
  EXPECT_EQ(k5.value, 3);
  // The 3-star splits only when the center fails. {0} and {0,1} leave leaf 1
  // untested by any survivor, so ct_2 = 1.
  const auto star = graph_of(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto s = component_diagnosability_exact(star, 2, DiagnosisModel::Pmc);
  EXPECT_FALSE(s.vacuous);
  EXPECT_EQ(s.value, 1);
  EXPECT_EQ(s.certificate->f1, ids(4, {0}));
  EXPECT_EQ(s.certificate->f2, ids(4, {0, 1}));
}

TEST(ExactDiagnosability, ErrorsAndCaps) {
  EXPECT_THROW(component_diagnosability_exact(cycle(4), 0, DiagnosisModel::Pmc), ContractViolation);
  EXPECT_THROW(component_diagnosability_exact(cycle(15), 2, DiagnosisModel::Pmc), CapExceeded);
  Limits tiny;
  tiny.enumeration_cap = 100;
  EXPECT_THROW(component_diagnosability_exact(gen_hypercube(3), 2, DiagnosisModel::Pmc, tiny), CapExceeded);
}

TEST(ExactDiagnosability, ComponentValueDominatesClassicalOnSmallGraphs) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_connected(5 + trial % 4, 0.35, rng);
    for (auto model : kModels) {
      const auto classical = classical_diagnosability_exact(g, model);
      const auto ct = component_diagnosability_exact(g, 2, model);
      EXPECT_GE(ct.value, classical.value);
      if (!ct.vacuous) expect_valid_certificate(g, 2, model, ct);
    }
  }
}

TEST(UpperBound, GoldenValuesAndDominance) {
  const auto q3 = component_diagnosability_upper_bound(gen_hypercube(3), 2, DiagnosisModel::Pmc);
  ASSERT_TRUE(q3.value);
  EXPECT_EQ(*q3.value, 4);
  EXPECT_GE(*q3.value, component_diagnosability_exact(gen_hypercube(3), 2, DiagnosisModel::Pmc).value);
  const auto c6 = component_diagnosability_upper_bound(cycle(6), 2, DiagnosisModel::Pmc);
  ASSERT_TRUE(c6.value);
  EXPECT_EQ(*c6.value, 2);
  EXPECT_FALSE(component_diagnosability_upper_bound(cycle(4), 2, DiagnosisModel::Pmc).value);

  for (const char* spec : {"ccn:n=3", "dc:n=4", "dq:m=6,d=6,n=3"})
    for (auto model : kModels) {
      const auto g = generate(parse_network_spec(spec)).graph;
      const auto b = component_diagnosability_upper_bound(g, 2, model);
      ASSERT_TRUE(b.value) << spec;
      EXPECT_EQ(*b.value, 6) << spec;
      const auto& [f1, f2] = *b.certificate;
      EXPECT_FALSE(distinguishable_oracle(g, f1, f2, model));
      EXPECT_GE(component_count(g, f1), 2u);
      EXPECT_GE(component_count(g, f2), 2u);
    }
}

TEST(UpperBound, BudgetExhaustionIsReported) {
  const auto b = component_diagnosability_upper_bound(gen_hypercube(4), 2, DiagnosisModel::Pmc, 3);
  EXPECT_TRUE(b.budget_exhausted);
  EXPECT_EQ(b.seeds_examined, 3u);
  EXPECT_THROW(component_diagnosability_upper_bound(cycle(5), 0, DiagnosisModel::Pmc), ContractViolation);
}

TEST(Determinism, ResultsIndependentOfWorkerCount) {
  const auto q3 = gen_hypercube(3);
  const auto ccn3 = gen_ccn(3).graph;
  std::vector<std::string> runs;
  for (std::size_t workers : {1u, 4u}) {
    set_workers(workers);
    std::string out;
    for (auto model : kModels) {
      const auto e = component_diagnosability_exact(q3, 2, model);
      out += std::to_string(e.value) + ":" + report::pair(q3, e.certificate).dump() + ";";
      const auto b = component_diagnosability_upper_bound(ccn3, 2, model);
      out += std::to_string(*b.value) + ":" + report::pair(ccn3, b.certificate).dump() + ";";
    }
    runs.push_back(out);
  }
  set_workers(0);
  EXPECT_EQ(runs[0], runs[1]);
}
