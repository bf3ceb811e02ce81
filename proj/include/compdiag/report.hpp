#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "compdiag/core/graph.hpp"
#include "compdiag/core/node_set.hpp"
#include "compdiag/diagnosis/diagnosability.hpp"
#include "compdiag/diagnosis/distinguish.hpp"
#include "compdiag/netgen/validate.hpp"
#include "compdiag/theorem/conditions.hpp"
#include "compdiag/theorem/formulas.hpp"

// JSON documents for every verdict. Keys are stable; node sets appear as
// sorted id arrays with a parallel label array.
namespace compdiag::report {

using nlohmann::ordered_json;

inline ordered_json node_set(const Graph& g, const NodeSet& s) {
  ordered_json ids = ordered_json::array(), labels = ordered_json::array();
  s.for_each([&](NodeId u) {
    ids.push_back(u);
    labels.push_back(g.label(u));
  });
  return {{"size", s.count()}, {"ids", ids}, {"labels", labels}};
}

inline ordered_json validation(const ValidationReport& r) {
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"subject", r.subject}, {"passed", r.passed()}, {"checks", checks}, {"notes", r.notes}};
}

inline ordered_json witness(const Graph& g, DiagnosisModel model, const DistinguishWitness& w) {
  ordered_json j{{"w", g.label(w.w)}, {"condition", w.condition}};
  if (model == DiagnosisModel::Pmc) {
    j["test"] = {g.label(w.w), g.label(w.first)};
  } else {
    j["neighbors"] = {g.label(w.first), g.label(w.second)};
  }
  return j;
}

inline ordered_json verdict(const Graph& g, DiagnosisModel model, const NodeSet& f1, const NodeSet& f2,
                            const DistinguishVerdict& v) {
  ordered_json j{{"model", model_name(model)},
                 {"f1", node_set(g, f1)},
                 {"f2", node_set(g, f2)},
                 {"distinguishable", v.distinguishable},
                 {"witness", nullptr},
                 {"f1_components", component_count(g, f1)},
                 {"f2_components", component_count(g, f2)}};
  if (v.witness) j["witness"] = witness(g, model, *v.witness);
  return j;
}

inline ordered_json pair(const Graph& g, const std::optional<FaultPair>& p) {
  if (!p) return nullptr;
  return {{"f1", node_set(g, p->f1)}, {"f2", node_set(g, p->f2)}};
}

inline ordered_json exact(const Graph& g, const ExactDiagnosability& r) {
  ordered_json j{{"value", r.value}, {"vacuous", r.vacuous}, {"certificate", pair(g, r.certificate)},
                 {"pairs_checked", r.pairs_checked}};
  if (r.largest_admissible_size) j["vacuous_beyond"] = *r.largest_admissible_size;
  return j;
}

inline ordered_json bound(const Graph& g, const DiagnosabilityBound& b) {
  ordered_json j{{"value", nullptr}, {"certificate", pair(g, b.certificate)}, {"seeds_examined", b.seeds_examined},
                 {"budget_exhausted", b.budget_exhausted}};
  if (b.value) j["value"] = *b.value;
  return j;
}

inline ordered_json condition_a(const Graph& g, const ConditionAWitness& w) {
  ordered_json a = ordered_json::array();
  for (auto x : w.a) a.push_back(g.label(x));
  return {{"v", g.label(w.v)},
          {"A", a},
          {"r", w.r},
          {"h", w.h},
          {"relaxed_parameters", w.relaxed_parameters},
          {"neighborhood_size", w.neighborhood_size},
          {"neighborhood_identity", w.neighborhood_identity}};
}

inline ordered_json condition_b(const Graph& g, const ConditionBReport& r) {
  ordered_json violations = ordered_json::array();
  for (const auto& v : r.violations)
    violations.push_back({{"removed", node_set(g, v.removed)}, {"largest_component", v.largest_component}});
  ordered_json j{{"h", r.h},
                 {"r", r.r},
                 {"budget", r.budget},
                 {"mode", r.exhaustive ? "exhaustive" : "sampled"},
                 {"sets_checked", r.sets_checked},
                 {"violation_count", r.violation_count},
                 {"violations", violations},
                 {"passed", r.passed()}};
  if (!r.exhaustive) {
    j["seed"] = r.seed;
    j["trials_per_size"] = r.trials;
  }
  return j;
}

inline ordered_json theorem1_pair(const Graph& g, const Theorem1Pair& p) {
  return {{"f1", node_set(g, p.f1)},
          {"f2", node_set(g, p.f2)},
          {"expected_f1_size", p.expected_f1_size},
          {"f1_components", p.f1_components},
          {"f2_components", p.f2_components},
          {"indistinguishable_pmc", p.indistinguishable_pmc},
          {"indistinguishable_mm", p.indistinguishable_mm},
          {"size_hypothesis", p.size_hypothesis},
          {"has_perfect_matching", p.has_perfect_matching}};
}

inline ordered_json formula(const FormulaValue& f) {
  return {{"value", f.value},       {"r", f.r},
          {"general_value", f.general_value}, {"consistent", f.consistent},
          {"in_range", f.in_range}, {"range", f.range}};
}

}  // namespace compdiag::report
