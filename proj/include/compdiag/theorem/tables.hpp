#pragma once

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "compdiag/core/error.hpp"

namespace compdiag {

enum class TableKind { Fig10, Fig11 };

struct FormulaTable {
  TableKind kind = TableKind::Fig10;
  std::vector<std::string> columns;
  std::vector<std::string> provenance;  // one comment per externally sourced column
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<bool> in_range;           // per row: inside the proven parameter range
  std::string range_note;
};

inline constexpr const char* kExternalProvenance = "external (Lv et al.)";

// fig10: (r, delta = r, ct_2 = 2r - 2) for r in [lo, hi].
// fig11: DQcube (n, t, strong, pessimistic, conditional, ct_5) for n in [lo, hi].
inline FormulaTable comparison_table(TableKind kind, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw ContractViolation("comparison range is empty");
  FormulaTable t;
  t.kind = kind;
  if (kind == TableKind::Fig10) {
    t.columns = {"r", "delta", "ct2"};
    t.range_note = "r >= 4";
    for (auto r = lo; r <= hi; ++r) {
      t.rows.push_back({r, r, 2 * r - 2});
      t.in_range.push_back(r >= 4);
    }
    return t;
  }
  t.columns = {"n", "t", "strong", "pessimistic", "conditional", "ct5"};
  for (const auto* c : {"t", "strong", "pessimistic", "conditional"})
    t.provenance.push_back(std::string(c) + ": " + kExternalProvenance);
  t.range_note = "n >= 6";
  for (auto n = lo; n <= hi; ++n) {
    t.rows.push_back({n, n + 1, n + 1, 2 * n, 4 * n - 3, 5 * n - 9});
    t.in_range.push_back(n >= 6);
  }
  return t;
}

// CSV with '#' comment lines: provenance first, then the header, then rows.
// A row outside the proven range is preceded by a watermark comment.
inline void write_csv(std::ostream& os, const FormulaTable& t) {
  for (const auto& p : t.provenance) os << "# provenance " << p << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (!t.in_range[r]) os << "# out-of-range: next row lies outside the proven range " << t.range_note << '\n';
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) os << (i ? "," : "") << t.rows[r][i];
    os << '\n';
  }
}

inline std::string to_csv(const FormulaTable& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

}  // namespace compdiag
