#include <gtest/gtest.h>

#include <random>

#include "compdiag/compdiag.hpp"
#include "test_support.hpp"

using namespace compdiag;
using namespace testing_support;

namespace {

Graph net(const char* spec) { return generate(parse_network_spec(spec)).graph; }

// Recomputes every clause of condition (a) from neighbor lists alone.
void expect_condition_a_holds(const Graph& g, const ConditionAWitness& w) {
  ASSERT_EQ(w.a.size(), static_cast<std::size_t>(w.h + 1));
  EXPECT_EQ(static_cast<std::int64_t>(g.degree(w.v)), w.r);
  for (std::size_t i = 0; i < w.a.size(); ++i) {
    EXPECT_TRUE(g.adjacent(w.v, w.a[i]));
    EXPECT_EQ(static_cast<std::int64_t>(g.degree(w.a[i])), w.r);
    EXPECT_EQ(common_neighbor_count(g, w.v, w.a[i]), 0u);
    for (std::size_t j = i + 1; j < w.a.size(); ++j) {
      EXPECT_EQ(common_neighbor_count(g, w.a[i], w.a[j]), 2u);
    }
  }
  // Node v is always a common neighbor of A; k-wise intersections must be {v}.
  if (w.a.size() >= 3) {
    for (NodeId x = 0; x < g.node_count(); ++x) {
      if (x == w.v) continue;
      std::size_t hits = 0;
      for (auto a : w.a) hits += g.adjacent(x, a) ? 1 : 0;
      EXPECT_LT(hits, 3u) << "node " << x << " is a common neighbor of three members";
    }
  }
}

// Brute-force connectivity condition: count removals S with |S| <= budget
// for which G - S splits and the largest piece misses more than h-1 nodes.
std::uint64_t brute_force_violations(const Graph& g, std::int64_t budget, std::int64_t h) {
  const auto n = g.node_count();
  std::uint64_t count = 0;
  for (const auto& slice : subset_slices(n, 0, static_cast<std::size_t>(budget)))
    for_each_in_slice(n, slice, [&](const std::vector<NodeId>& members) {
      const auto d = components(g, NodeSet::from_ids(n, members));
      const auto survivors = n - members.size();
      if (d.count() >= 2 && static_cast<std::int64_t>(d.largest) < static_cast<std::int64_t>(survivors) - (h - 1))
        ++count;
      return false;
    });
  return count;
}

}  // namespace

TEST(Formulas, NeighborhoodSizeAndBudget) {
  EXPECT_EQ(neighborhood_size_formula(4, 1), 6);
  EXPECT_EQ(neighborhood_size_formula(4, 2), 7);
  EXPECT_EQ(condition_b_budget(4, 1), 3);
  EXPECT_EQ(condition_b_budget(4, 2), 5);
  EXPECT_EQ(condition_b_budget(0, 1), -1);
  for (std::int64_t r = 4; r <= 20; ++r)
    for (std::int64_t h = 1; h <= r - 3; ++h) EXPECT_EQ(ct_general(r, h), neighborhood_size_formula(r, h));
}

TEST(ConditionA, FoundOnTheoremNetworks) {
  for (const char* spec : {"ccn:n=3", "hcn:n=3", "dq:m=6,d=6,n=3", "dc:n=4", "bubble:n=5", "geh:s=3,t=3"}) {
    const auto spec_parsed = parse_network_spec(spec);
    const auto r = ct_formula(spec_parsed, 1).r;
    const auto g = generate(spec_parsed).graph;
    const auto w = find_condition_a(g, r, 1);
    ASSERT_TRUE(w) << spec;
    expect_condition_a_holds(g, *w);
    EXPECT_TRUE(w->neighborhood_identity) << spec;
    EXPECT_FALSE(w->relaxed_parameters) << spec;
  }
}

TEST(ConditionA, LargerHOnCcn4) {
  const auto g = net("ccn:n=4");
  const auto w = find_condition_a(g, 5, 2);
  ASSERT_TRUE(w);
  expect_condition_a_holds(g, *w);
  EXPECT_EQ(w->neighborhood_size, 10u);
  EXPECT_TRUE(w->neighborhood_identity);
}

TEST(ConditionA, AbsentWhereNoTwoCommonNeighborsExist) {
  EXPECT_FALSE(find_condition_a(cycle(6), 2, 1));
  EXPECT_FALSE(find_condition_a(petersen(), 3, 1));  // girth 5: pairs share at most one neighbor
  EXPECT_FALSE(find_condition_a(gen_hypercube(3), 4, 1));  // no degree-4 node
  EXPECT_THROW(find_condition_a(cycle(6), 2, -1), ContractViolation);
}

TEST(ConditionA, FlagsRelaxedParameters) {
  // Q3 has the local pattern for r = 3, h = 1, below the r >= 4 range.
  const auto q3 = gen_hypercube(3);
  const auto w = find_condition_a(q3, 3, 1);
  ASSERT_TRUE(w);
  expect_condition_a_holds(q3, *w);
  EXPECT_TRUE(w->relaxed_parameters);
}

TEST(ConditionB, Ccn3WithOneComponentBudget) {
  const auto g = net("ccn:n=3");
  const auto rep = check_condition_b(g, 4, 1, {ConditionBMode::Exhaustive});
  EXPECT_TRUE(rep.exhaustive);
  EXPECT_EQ(rep.budget, 3);
  EXPECT_EQ(rep.sets_checked, binomial_prefix(64, 3));
  EXPECT_TRUE(rep.passed());
  EXPECT_TRUE(rep.violations.empty());
}

TEST(ConditionB, EmptyBudgetGivesEmptyReport) {
  const auto rep = check_condition_b(cycle(5), 0, 1);
  EXPECT_EQ(rep.budget, -1);
  EXPECT_EQ(rep.sets_checked, 0u);
  EXPECT_TRUE(rep.passed());
}

TEST(ConditionB, MatchesBruteForceCounts) {
  // r = 3, h = 1 gives budget 2: on a cycle every non-adjacent pair splits it.
  for (std::size_t n : {12u, 30u, 70u}) {  // 70 exercises the non-mask path
    const auto g = cycle(n);
    const auto rep = check_condition_b(g, 3, 1, {ConditionBMode::Exhaustive});
    EXPECT_EQ(rep.violation_count, n * (n - 1) / 2 - n) << n;
    EXPECT_EQ(rep.violation_count, brute_force_violations(g, 2, 1)) << n;
    ASSERT_FALSE(rep.violations.empty());
    // First violation in canonical order: {0, 2}.
    EXPECT_EQ(rep.violations.front().removed.to_vector(), (std::vector<NodeId>{0, 2}));
    EXPECT_EQ(rep.violations.front().largest_component, n - 3);
    EXPECT_LE(rep.violations.size(), 10u);
  }
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_connected(11, 0.25, rng);
    for (std::int64_t h = 1; h <= 2; ++h) {
      const auto rep = check_condition_b(g, 3, h, {ConditionBMode::Exhaustive});
      EXPECT_EQ(rep.violation_count, brute_force_violations(g, rep.budget, h));
    }
  }
}

TEST(ConditionB, SampledModeIsSeededAndFindsViolations) {
  const auto g = cycle(70);
  ConditionBOptions opt{ConditionBMode::Sampled};
  opt.trials = 500;
  const auto a = check_condition_b(g, 3, 1, opt);
  const auto b = check_condition_b(g, 3, 1, opt);
  EXPECT_FALSE(a.exhaustive);
  EXPECT_EQ(a.trials, 500u);
  EXPECT_EQ(a.violation_count, b.violation_count);
  EXPECT_GT(a.violation_count, 0u);
  ASSERT_EQ(a.violations.size(), b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) EXPECT_EQ(a.violations[i].removed, b.violations[i].removed);
}

TEST(ConditionB, ExhaustiveCapSuggestsSampling) {
  try {
    check_condition_b(gen_hypercube(10), 10, 1, {ConditionBMode::Exhaustive});
    FAIL() << "expected a cap error";
  } catch (const CapExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("sampled"), std::string::npos);
  }
  // Auto mode falls back to sampling instead.
  ConditionBOptions opt;
  opt.trials = 50;
  EXPECT_FALSE(check_condition_b(gen_hypercube(10), 10, 1, opt).exhaustive);
}

TEST(Theorem1Pair, SizesAndVerdictsOnFourNetworks) {
  for (const char* spec : {"ccn:n=3", "hcn:n=3", "dq:m=6,d=6,n=3", "dc:n=4"}) {
    const auto parsed = parse_network_spec(spec);
    const auto formula = ct_formula(parsed, 1);
    EXPECT_EQ(formula.value, 6) << spec;
    const auto g = generate(parsed).graph;
    const auto w = find_condition_a(g, formula.r, 1);
    ASSERT_TRUE(w) << spec;
    const auto p = construct_theorem1_pair(g, *w);
    EXPECT_EQ(p.f1.count(), 6u) << spec;
    EXPECT_EQ(p.f2.count(), 7u) << spec;
    EXPECT_GE(p.f1_components, 2u);
    EXPECT_GE(p.f2_components, 2u);
    EXPECT_TRUE(p.indistinguishable_pmc);
    EXPECT_TRUE(p.indistinguishable_mm);
    EXPECT_TRUE(p.has_perfect_matching);
    // Independent re-check through the syndrome-slot oracle.
    EXPECT_FALSE(distinguishable_oracle(g, p.f1, p.f2, DiagnosisModel::Pmc));
    EXPECT_FALSE(distinguishable_oracle(g, p.f1, p.f2, DiagnosisModel::MmStar));
    EXPECT_EQ(static_cast<std::int64_t>(p.f1.count()), formula.value);
  }
}

TEST(Theorem1Pair, MismatchWhenWitnessDoesNotFitTheGraph) {
  // On C6, A = {1, 5} around v = 0 has N(A) = {0, 2, 4}, one more than the
  // formula predicts for r = 2.
  ConditionAWitness w;
  w.v = 0;
  w.a = {1, 5};
  w.r = 2;
  w.h = 1;
  EXPECT_THROW(construct_theorem1_pair(cycle(6), w), MismatchError);
  w.a = {1};
  EXPECT_THROW(construct_theorem1_pair(cycle(6), w), ContractViolation);
}

TEST(CtFormula, ClosedForms) {
  EXPECT_EQ(ct_formula(parse_network_spec("ccn:n=3"), 1).value, 6);
  EXPECT_EQ(ct_formula(parse_network_spec("bubble:n=5"), 1).value, 6);
  EXPECT_EQ(ct_formula(parse_network_spec("cayley:n=5,tree=1-2,2-3,3-4,4-5"), 1).value, 6);
  EXPECT_EQ(ct_formula(Family::Hhc, {{"m", 5}}, 1).value, 10);
  EXPECT_EQ(ct_formula(Family::DualCube, {{"n", 4}}, 1).value, 6);
  EXPECT_EQ(ct_formula(Family::DqCube, {{"m", 6}, {"d", 6}, {"n", 3}}, 1).value, 6);
  EXPECT_EQ(ct_formula(Family::DqCube, {{"m", 6}, {"d", 6}, {"n", 5}}, 4).value, 5 * 5 - 10 + 1);  // 5n - 9 at h = 4
  EXPECT_EQ(ct_formula(Family::Geh, {{"s", 3}, {"t", 4}}, 1).value, 6);
  EXPECT_THROW(ct_formula(Family::Hypercube, {{"n", 3}}, 1), Error);
  EXPECT_THROW(ct_formula(Family::DiscRing, {{"m", 3}, {"d", 1}}, 1), Error);
  EXPECT_FALSE(has_ct_formula(Family::Hypercube));
  EXPECT_TRUE(has_ct_formula(Family::Ccn));
}

TEST(CtFormula, FamilyFormsAgreeWithGeneralFormInRange) {
  struct Sweep {
    Family family;
    const char* key;
  };
  for (auto [family, key] : {Sweep{Family::Ccn, "n"}, Sweep{Family::Hcn, "n"}, Sweep{Family::DualCube, "n"},
                             Sweep{Family::Hhc, "m"}, Sweep{Family::BubbleSort, "n"}, Sweep{Family::DqCube, "n"}}) {
    for (std::uint64_t p = 1; p <= 12; ++p)
      for (std::int64_t h = 1; h <= 10; ++h) {
        const auto f = ct_formula(family, {{key, p}, {"s", p}, {"t", p}, {"m", p}, {"d", p}}, h);
        EXPECT_TRUE(f.consistent);
        if (f.in_range) EXPECT_LE(h, f.r - 3);
      }
  }
  const auto outside = ct_formula(Family::Ccn, {{"n", 2}}, 1);
  EXPECT_FALSE(outside.in_range);
  EXPECT_EQ(outside.value, 4);  // still computed
  EXPECT_FALSE(ct_formula(Family::Geh, {{"s", 4}, {"t", 3}}, 1).in_range);  // needs s <= t
}

TEST(Tables, Fig10Rows) {
  const auto t = comparison_table(TableKind::Fig10, 4, 16);
  ASSERT_EQ(t.rows.size(), 13u);
  EXPECT_EQ(t.rows.front(), (std::vector<std::int64_t>{4, 4, 6}));
  for (const auto& row : t.rows) EXPECT_GT(row[2], row[1]);
  EXPECT_TRUE(t.provenance.empty());
  const auto low = comparison_table(TableKind::Fig10, 3, 4);
  EXPECT_EQ(to_csv(low), "r,delta,ct2\n# out-of-range: next row lies outside the proven range r >= 4\n3,3,4\n4,4,6\n");
}

TEST(Tables, Fig11RowsAndCrossover) {
  const auto t = comparison_table(TableKind::Fig11, 3, 12);
  ASSERT_EQ(t.rows.size(), 10u);
  const auto& n5 = t.rows[2];
  EXPECT_EQ(n5, (std::vector<std::int64_t>{5, 6, 6, 10, 17, 16}));
  const auto& n12 = t.rows.back();
  EXPECT_EQ(n12[5], 51);
  EXPECT_EQ(n12[4], 45);
  for (const auto& row : t.rows) EXPECT_EQ(row[5] > row[4], row[0] > 6) << row[0];
  EXPECT_EQ(t.rows[3][5], t.rows[3][4]);  // n = 6: tie
  ASSERT_EQ(t.provenance.size(), 4u);
  const auto csv = to_csv(comparison_table(TableKind::Fig11, 6, 6));
  EXPECT_EQ(csv,
            "# provenance t: external (Lv et al.)\n"
            "# provenance strong: external (Lv et al.)\n"
            "# provenance pessimistic: external (Lv et al.)\n"
            "# provenance conditional: external (Lv et al.)\n"
            "n,t,strong,pessimistic,conditional,ct5\n"
            "6,7,7,12,21,21\n");
  EXPECT_THROW(comparison_table(TableKind::Fig11, 5, 4), ContractViolation);
}

TEST(Reports, StableKeys) {
  const auto g = net("ccn:n=3");
  const auto w = find_condition_a(g, 4, 1);
  ASSERT_TRUE(w);
  const auto j = report::condition_a(g, *w);
  EXPECT_EQ(j["A"].size(), 2u);
  EXPECT_EQ(j["neighborhood_size"], 6);
  const auto p = report::theorem1_pair(g, construct_theorem1_pair(g, *w));
  EXPECT_EQ(p["f1"]["size"], 6);
  EXPECT_EQ(p["f2"]["size"], 7);
  const auto b = report::condition_b(g, check_condition_b(g, 4, 1));
  EXPECT_EQ(b["mode"], "exhaustive");
  EXPECT_FALSE(b.contains("seed"));
  const auto f = report::formula(ct_formula(parse_network_spec("ccn:n=3"), 1));
  EXPECT_EQ(f["value"], 6);
  EXPECT_EQ(f["consistent"], true);
}
