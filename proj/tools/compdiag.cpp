// compdiag: generate networks, validate them, decide distinguishability,
// compute or bound component diagnosability, and emit comparison tables.
//
// Exit codes: 0 success, 1 check or verdict failure, 2 usage error,
// 3 enumeration or materialization cap exceeded.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "compdiag/compdiag.hpp"

namespace {

using namespace compdiag;
using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kCap = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  Graph graph;
  std::optional<NetworkSpec> spec;
  std::optional<ClusterStructure> clusters;
  std::vector<std::string> tags;
  std::vector<std::string> problems;  // lenient file loads only
};

Limits limits_from_env() {
  Limits limits;
  if (const char* cap = std::getenv("COMPDIAG_ENUM_CAP")) {
    try {
      limits.enumeration_cap = std::stoull(cap);
    } catch (const std::exception&) {
      throw UsageError(std::string("COMPDIAG_ENUM_CAP is not an integer: ") + cap);
    }
  }
  return limits;
}

// An existing path is read as an edge-list file; anything else as a spec.
Loaded load(const std::string& input, const Limits& limits, bool lenient = false) {
  Loaded out;
  if (std::filesystem::exists(input)) {
    std::ifstream is(input);
    if (!is) throw UsageError("cannot open '" + input + "'");
    if (lenient) {
      auto r = read_edge_list_lenient(is);
      out.graph = std::move(r.graph);
      out.problems = std::move(r.problems);
    } else {
      out.graph = read_edge_list(is);
    }
    return out;
  }
  const auto spec = parse_network_spec(input);
  auto net = generate(spec, limits);
  out.graph = std::move(net.graph);
  out.spec = spec;
  out.clusters = std::move(net.clusters);
  out.tags = std::move(net.tags);
  return out;
}

NodeSet load_fault_set(const std::string& path, const Graph& g) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open fault-set file '" + path + "'");
  return read_fault_set(is, g);
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = std::stoll(text);
      return {v, v};
    }
    return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("range must look like a..b, got '" + text + "'");
  }
}

// "r=4,h=1"
std::pair<std::int64_t, std::int64_t> parse_theorem_params(const std::string& text) {
  std::optional<std::int64_t> r, h;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--theorem1 expects r=..,h=..");
    const auto key = item.substr(0, eq);
    std::int64_t value = 0;
    try {
      value = std::stoll(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--theorem1 value for '" + key + "' is not an integer");
    }
    if (key == "r") r = value;
    else if (key == "h") h = value;
    else throw UsageError("--theorem1 accepts only r and h");
  }
  if (!r || !h) throw UsageError("--theorem1 needs both r and h");
  return {*r, *h};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw UsageError("cannot write '" + path + "'");
  os << text;
}

ordered_json config_header(const std::string& command, const Limits& limits) {
  return {{"command", command},
          {"enumeration_cap", limits.enumeration_cap},
          {"exhaustive_nodes", limits.exhaustive_nodes}};
}

std::string set_text(const Graph& g, const NodeSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](NodeId u) {
    out += (first ? "" : ",") + g.label(u);
    first = false;
  });
  return out + "}";
}

int cmd_gen(const std::string& spec_text, const std::string& out_path, const Limits& limits) {
  const auto spec = parse_network_spec(spec_text);
  Network net;
  try {
    net = generate(spec, limits);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  const auto text = write_edge_list(net.graph);
  if (out_path.empty()) {
    std::cout << text;
    return kOk;
  }
  write_text(out_path, text);
  if (net.clusters) {
    std::ostringstream cs;
    write_cluster_sidecar(cs, *net.clusters);
    write_text(out_path + ".clusters", cs.str());
  }
  std::cout << spec.to_string() << ": " << net.graph.node_count() << " nodes, " << net.graph.edge_count()
            << " edges -> " << out_path << (net.clusters ? " (+ .clusters)" : "") << '\n';
  for (const auto& tag : net.tags) std::cout << "note: " << tag << '\n';
  return kOk;
}

struct VerifyOptions {
  std::string input;
  std::string theorem1;
  std::string mode = "auto";
  std::uint64_t seed = ConditionBOptions{}.seed;
  std::uint64_t trials = ConditionBOptions{}.trials;
  std::string report_path;
};

int cmd_verify(const VerifyOptions& o, const Limits& limits) {
  const auto loaded = load(o.input, limits, /*lenient=*/true);
  ValidationReport rep;
  if (loaded.spec) {
    rep = validate(*loaded.spec, loaded.graph, loaded.clusters, loaded.tags);
  } else {
    rep = validate_graph(loaded.graph, o.input);
    for (const auto& p : loaded.problems)
      if (p.rfind("line ", 0) == 0 || p.rfind("header", 0) == 0) rep.add("edge-list-format", false, p);
  }
  ordered_json doc = config_header("verify", limits);
  bool ok = rep.passed();

  if (!o.theorem1.empty()) {
    if (!rep.passed()) throw UsageError("condition checks need a structurally valid graph");
    const auto [r, h] = parse_theorem_params(o.theorem1);
    ConditionBOptions bopt;
    bopt.seed = o.seed;
    bopt.trials = o.trials;
    if (o.mode == "exhaustive") bopt.mode = ConditionBMode::Exhaustive;
    else if (o.mode == "sampled") bopt.mode = ConditionBMode::Sampled;
    else if (o.mode != "auto") throw UsageError("--mode must be auto, exhaustive or sampled");
    ordered_json th{{"r", r}, {"h", h}};
    const auto w = find_condition_a(loaded.graph, r, h);
    if (w) {
      th["condition_a"] = report::condition_a(loaded.graph, *w);
      std::cout << "condition (a): witness v=" << loaded.graph.label(w->v) << " A=" << set_text(loaded.graph, NodeSet::from_ids(loaded.graph.node_count(), w->a))
                << (w->relaxed_parameters ? " (relaxed parameters)" : "") << "\n";
      try {
        const auto pair = construct_theorem1_pair(loaded.graph, *w);
        th["pair"] = report::theorem1_pair(loaded.graph, pair);
        std::cout << "pair: |f1|=" << pair.f1.count() << " |f2|=" << pair.f2.count()
                  << " indistinguishable under pmc and mm*" << (pair.size_hypothesis ? "" : "; |V| < 2^(2r-2)") << '\n';
      } catch (const MismatchError& e) {
        th["pair_error"] = e.what();
        std::cout << "pair: FAIL " << e.what() << '\n';
        ok = false;
      }
    } else {
      th["condition_a"] = nullptr;
      std::cout << "condition (a): no witness\n";
      ok = false;
    }
    const auto b = check_condition_b(loaded.graph, r, h, bopt, limits);
    th["condition_b"] = report::condition_b(loaded.graph, b);
    std::cout << "condition (b): " << (b.exhaustive ? "exhaustive" : "sampled") << ", budget " << b.budget << ", "
              << b.sets_checked << " sets, " << b.violation_count << " violations\n";
    if (!b.exhaustive) std::cout << "  seed " << b.seed << ", " << b.trials << " trials per size\n";
    ok = ok && b.passed();
    doc["theorem1"] = th;
  }

  for (const auto& c : rep.checks)
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
  for (const auto& n : rep.notes) std::cout << "note: " << n << '\n';
  doc["validation"] = report::validation(rep);
  doc["passed"] = ok;
  if (!o.report_path.empty()) write_text(o.report_path, doc.dump(2) + "\n");
  std::cout << (ok ? "verify: pass" : "verify: FAIL") << '\n';
  return ok ? kOk : kCheckFailed;
}

int cmd_distinguish(const std::string& graph_in, const std::string& f1_path, const std::string& f2_path,
                    const std::string& model_text, bool oracle, const std::string& report_path, const Limits& limits) {
  const auto model = parse_model(model_text);
  const auto loaded = load(graph_in, limits);
  const auto& g = loaded.graph;
  const auto f1 = load_fault_set(f1_path, g);
  const auto f2 = load_fault_set(f2_path, g);
  if (f1 == f2) throw UsageError("f1 and f2 are the same fault set");
  const auto v = distinguishable(g, f1, f2, model);
  auto doc = config_header("distinguish", limits);
  doc["verdict"] = report::verdict(g, model, f1, f2, v);
  if (!v.distinguishable) {
    std::cout << "indistinguishable\n";
  } else if (model == DiagnosisModel::Pmc) {
    std::cout << "distinguishable, witness <" << g.label(v.witness->w) << "," << g.label(v.witness->first) << ">\n";
  } else {
    std::cout << "distinguishable, witness " << g.label(v.witness->w) << " condition " << v.witness->condition << " ("
              << g.label(v.witness->first) << "," << g.label(v.witness->second) << ")\n";
  }
  int code = kOk;
  if (oracle) {
    const bool o = distinguishable_oracle(g, f1, f2, model);
    doc["oracle_agrees"] = o == v.distinguishable;
    std::cout << "oracle: " << (o == v.distinguishable ? "agrees" : "DISAGREES") << '\n';
    if (o != v.distinguishable) code = kCheckFailed;
  }
  if (!report_path.empty()) write_text(report_path, doc.dump(2) + "\n");
  return code;
}

int cmd_ct(const std::string& input, std::size_t h, const std::string& model_text, const std::string& mode,
           std::size_t budget, const std::string& report_path, const Limits& limits) {
  const auto model = parse_model(model_text);
  if (h < 1) throw UsageError("--h must be at least 1");
  const auto loaded = load(input, limits);
  const auto& g = loaded.graph;
  auto doc = config_header("ct", limits);
  doc["model"] = model_name(model);
  doc["h"] = h;
  std::optional<FormulaValue> formula;
  if (loaded.spec && has_ct_formula(loaded.spec->family) && h >= 2) {
    formula = ct_formula(*loaded.spec, static_cast<std::int64_t>(h) - 1);
    doc["formula"] = report::formula(*formula);
  }
  std::string suffix;
  if (formula) suffix = " (formula " + std::to_string(formula->value) + (formula->in_range ? "" : ", out of range") + ")";
  if (mode == "exact") {
    const auto r = component_diagnosability_exact(g, h, model, limits);
    doc["exact"] = report::exact(g, r);
    std::cout << "exact " << r.value << suffix << '\n';
    if (r.certificate)
      std::cout << "certificate f1=" << set_text(g, r.certificate->f1) << " f2=" << set_text(g, r.certificate->f2) << '\n';
    if (r.vacuous)
      std::cout << "vacuous: no indistinguishable pair of " << h << "-component fault sets"
                << (r.largest_admissible_size ? "; largest such set has " + std::to_string(*r.largest_admissible_size) + " nodes" : "")
                << '\n';
  } else if (mode == "bound") {
    doc["budget"] = budget;
    const auto b = component_diagnosability_upper_bound(g, h, model, budget);
    doc["bound"] = report::bound(g, b);
    if (b.value) {
      std::cout << "upper bound " << *b.value << suffix << '\n';
      std::cout << "certificate f1=" << set_text(g, b.certificate->f1) << " f2=" << set_text(g, b.certificate->f2) << '\n';
    } else {
      std::cout << "no bound found within " << b.seeds_examined << " seeds" << suffix << '\n';
    }
  } else {
    throw UsageError("--mode must be exact or bound");
  }
  if (!report_path.empty()) write_text(report_path, doc.dump(2) + "\n");
  return kOk;
}

int cmd_compare(const std::string& kind, const std::string& r_range, const std::string& n_range,
                const std::string& out_path) {
  FormulaTable table;
  if (kind == "fig10") {
    if (r_range.empty()) throw UsageError("fig10 needs --r a..b");
    const auto [lo, hi] = parse_range(r_range);
    table = comparison_table(TableKind::Fig10, lo, hi);
  } else if (kind == "fig11") {
    if (n_range.empty()) throw UsageError("fig11 needs --n a..b");
    const auto [lo, hi] = parse_range(n_range);
    table = comparison_table(TableKind::Fig11, lo, hi);
  } else {
    throw UsageError("compare kind must be fig10 or fig11");
  }
  const auto csv = to_csv(table);
  if (out_path.empty()) std::cout << csv;
  else write_text(out_path, csv);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"component diagnosability toolkit"};
  app.require_subcommand(1);
  std::size_t workers = 0;
  app.add_option("--workers", workers, "worker threads (0 = available parallelism)");

  std::string gen_spec, gen_out;
  auto* gen = app.add_subcommand("gen", "generate a network as an edge list");
  gen->add_option("spec", gen_spec, "network spec, e.g. ccn:n=3")->required();
  gen->add_option("-o,--out", gen_out, "output path (cluster sidecar goes to PATH.clusters)");

  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "validate a generated network or an edge-list file");
  verify->add_option("input", vopt.input, "network spec or edge-list file")->required();
  verify->add_option("--theorem1", vopt.theorem1, "check conditions (a)/(b) and the pair, e.g. r=4,h=1");
  verify->add_option("--mode", vopt.mode, "condition (b) mode: auto, exhaustive, sampled");
  verify->add_option("--seed", vopt.seed, "seed for sampled mode");
  verify->add_option("--trials", vopt.trials, "random sets per size in sampled mode");
  verify->add_option("--report", vopt.report_path, "write a JSON report");

  std::string d_graph, d_f1, d_f2, d_model = "pmc", d_report;
  bool d_oracle = false;
  auto* dist = app.add_subcommand("distinguish", "decide whether two fault sets are distinguishable");
  dist->add_option("graph", d_graph, "edge-list file or network spec")->required();
  dist->add_option("f1", d_f1, "fault-set file")->required();
  dist->add_option("f2", d_f2, "fault-set file")->required();
  dist->add_option("--model", d_model, "pmc or mm");
  dist->add_flag("--oracle", d_oracle, "cross-check against the syndrome-slot oracle");
  dist->add_option("--report", d_report, "write a JSON report");

  std::string c_input, c_model = "pmc", c_mode = "bound", c_report;
  std::size_t c_h = 2, c_budget = 5000;
  auto* ct = app.add_subcommand("ct", "compute or bound h-component diagnosability");
  ct->add_option("input", c_input, "edge-list file or network spec")->required();
  ct->set_help_flag("--help", "print this help message and exit");  // frees -h for --h
  ct->add_option("--h", c_h, "component count h");
  ct->add_option("--model", c_model, "pmc or mm");
  ct->add_option("--mode", c_mode, "exact or bound");
  ct->add_option("--budget", c_budget, "seed budget for bound mode");
  ct->add_option("--report", c_report, "write a JSON report");

  std::string k_kind, k_r, k_n, k_out;
  auto* cmp = app.add_subcommand("compare", "emit comparison tables as CSV");
  cmp->add_option("kind", k_kind, "fig10 or fig11")->required();
  cmp->add_option("--r", k_r, "r range a..b (fig10)");
  cmp->add_option("--n", k_n, "n range a..b (fig11)");
  cmp->add_option("-o,--out", k_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    set_workers(workers);
    const auto limits = limits_from_env();
    if (*gen) return cmd_gen(gen_spec, gen_out, limits);
    if (*verify) return cmd_verify(vopt, limits);
    if (*dist) return cmd_distinguish(d_graph, d_f1, d_f2, d_model, d_oracle, d_report, limits);
    if (*ct) return cmd_ct(c_input, c_h, c_model, c_mode, c_budget, c_report, limits);
    if (*cmp) return cmd_compare(k_kind, k_r, k_n, k_out);
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kCap;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractViolation& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}
