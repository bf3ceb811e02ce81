#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "compdiag/core/error.hpp"
#include "compdiag/core/graph.hpp"
#include "compdiag/core/node_set.hpp"

// Edge-list interchange format:
//
//   p <node_count> <edge_count>
//   e <u> <v>          one per edge, u < v, sorted lexicographically
//   n <id> <label>     optional, one per labelled node
//
// Readers skip blank lines and lines starting with '#'. Line numbers in
// ParseError are 1-based.
namespace compdiag {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const auto start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

inline bool parse_u64(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && p == end;
}

inline std::uint64_t expect_u64(std::string_view s, std::size_t line, const char* what) {
  std::uint64_t v = 0;
  if (!parse_u64(s, v)) throw ParseError(std::string("expected non-negative integer for ") + what + ", got '" +
                                             std::string(s) + "'", line);
  return v;
}

}  // namespace detail

inline void write_edge_list(std::ostream& os, const Graph& g, bool with_labels = true) {
  g.require_well_formed();
  os << "p " << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) os << "e " << e.u << ' ' << e.v << '\n';
  if (with_labels && g.has_labels())
    for (NodeId u = 0; u < g.node_count(); ++u) os << "n " << u << ' ' << g.labels()[u] << '\n';
}

inline std::string write_edge_list(const Graph& g, bool with_labels = true) {
  std::ostringstream os;
  write_edge_list(os, g, with_labels);
  return os.str();
}

struct EdgeListRead {
  Graph graph;
  std::vector<std::string> problems;      // structural defects found while loading
  std::vector<std::string> format_notes;  // departures from canonical line order
};

// Loads whatever the file describes. Syntax errors throw ParseError;
// structural defects (bad counts, ordering, dangling or repeated edges) are
// collected in `problems` and preserved in the graph's adjacency rows.
inline EdgeListRead read_edge_list_lenient(std::istream& is) {
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0, declared_edges = 0, seen_edges = 0;
  std::vector<std::vector<NodeId>> rows;
  std::vector<std::string> labels;
  bool any_label = false;
  EdgeListRead out;
  Edge previous{0, 0};
  bool have_previous = false;
  while (std::getline(is, raw)) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tok = detail::split_ws(line);
    if (tok[0] == "p") {
      if (have_header) throw ParseError("duplicate 'p' header", line_no);
      if (tok.size() != 3) throw ParseError("header must be 'p <node_count> <edge_count>'", line_no);
      n = detail::expect_u64(tok[1], line_no, "node_count");
      declared_edges = detail::expect_u64(tok[2], line_no, "edge_count");
      if (n > (std::uint64_t{1} << 31)) throw ParseError("node_count too large", line_no);
      rows.assign(n, {});
      labels.assign(n, {});
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("first record must be the 'p' header", line_no);
    if (tok[0] == "e") {
      if (tok.size() != 3) throw ParseError("edge line must be 'e <u> <v>'", line_no);
      const auto u64 = detail::expect_u64(tok[1], line_no, "u");
      const auto v64 = detail::expect_u64(tok[2], line_no, "v");
      if (u64 > UINT32_MAX || v64 > UINT32_MAX) throw ParseError("node id too large", line_no);
      const Edge e{static_cast<NodeId>(u64), static_cast<NodeId>(v64)};
      ++seen_edges;
      const auto where = "line " + std::to_string(line_no) + ": ";
      if (e.u >= n || e.v >= n) out.problems.push_back(where + "edge endpoint out of range");
      if (e.u == e.v) out.problems.push_back(where + "self-loop");
      else if (e.u > e.v) out.format_notes.push_back(where + "edge not written with u < v");
      if (have_previous && !(previous < e)) out.format_notes.push_back(where + "edges not strictly sorted");
      previous = e;
      have_previous = true;
      if (e.u < n) rows[e.u].push_back(e.v);
      if (e.v < n && e.v != e.u) rows[e.v].push_back(e.u);
      continue;
    }
    if (tok[0] == "n") {
      if (tok.size() < 3) throw ParseError("label line must be 'n <id> <label>'", line_no);
      const auto id = detail::expect_u64(tok[1], line_no, "id");
      if (id >= n) throw ParseError("label for node out of range", line_no);
      const auto label_start = static_cast<std::size_t>(tok[2].data() - line.data());
      labels[id] = std::string(line.substr(label_start));
      any_label = true;
      continue;
    }
    throw ParseError("unknown record '" + std::string(tok[0]) + "'", line_no);
  }
  if (!have_header) throw ParseError("missing 'p' header", line_no);
  if (seen_edges != declared_edges)
    out.problems.push_back("header declares " + std::to_string(declared_edges) + " edges, found " +
                           std::to_string(seen_edges));
  if (any_label)
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i].empty()) labels[i] = std::to_string(i);
  out.graph = Graph::from_adjacency_unchecked(std::move(rows), any_label ? std::move(labels) : std::vector<std::string>{});
  for (auto& issue : out.graph.structural_issues()) out.problems.push_back(std::move(issue));
  return out;
}

// Strict reader: any structural defect is a ValidationError; non-canonical
// line order is accepted.
inline Graph read_edge_list(std::istream& is) {
  auto r = read_edge_list_lenient(is);
  if (!r.problems.empty()) throw ValidationError("malformed edge list: " + r.problems.front());
  return std::move(r.graph);
}

inline Graph read_edge_list(const std::string& text) {
  std::istringstream is(text);
  return read_edge_list(is);
}

// Resolves a node token: an exact label match first, else a decimal id.
inline NodeId resolve_node_token(const Graph& g, const std::unordered_map<std::string, NodeId>& index,
                                 std::string_view token, std::size_t line) {
  if (auto it = index.find(std::string(token)); it != index.end()) return it->second;
  std::uint64_t id = 0;
  if (!detail::parse_u64(token, id)) throw ParseError("unknown node '" + std::string(token) + "'", line);
  if (id >= g.node_count()) throw InvalidNode(id, g.node_count());
  return static_cast<NodeId>(id);
}

// Fault-set file: whitespace-separated node ids or labels, '#' starts a comment.
inline NodeSet read_fault_set(std::istream& is, const Graph& g) {
  const auto index = label_index(g);
  NodeSet out(g.node_count());
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    for (auto tok : detail::split_ws(line)) out.insert(resolve_node_token(g, index, tok, line_no));
  }
  return out;
}

inline NodeSet read_fault_set(const std::string& text, const Graph& g) {
  std::istringstream is(text);
  return read_fault_set(is, g);
}

inline void write_fault_set(std::ostream& os, const Graph& g, const NodeSet& f) {
  f.for_each([&](NodeId u) { os << g.label(u) << '\n'; });
}

}  // namespace compdiag
