#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "compdiag/core/error.hpp"
#include "compdiag/netgen/network_spec.hpp"

namespace compdiag {

// ct_{h+1} for a named family.
struct FormulaValue {
  std::int64_t value = 0;          // family closed form
  std::int64_t r = 0;              // common degree used by the general form
  std::int64_t general_value = 0;  // (h+1)(r-1) - h(h+1)/2 + 1
  bool consistent = false;         // value == general_value
  bool in_range = false;           // parameters inside the proven range
  std::string range;               // human-readable proven range
};

inline std::int64_t ct_general(std::int64_t r, std::int64_t h) { return (h + 1) * (r - 1) - h * (h + 1) / 2 + 1; }

// Evaluates the closed form for `family` at `params` (same keys as network
// specs; eh and bubble-sort use the geh and cayley forms). Out-of-range
// parameters are computed and flagged.
inline FormulaValue ct_formula(Family family, const std::map<std::string, std::uint64_t>& params, std::int64_t h) {
  auto get = [&](const char* key) -> std::int64_t {
    const auto it = params.find(key);
    if (it == params.end()) throw ValidationError(std::string("formula needs parameter '") + key + "'");
    return static_cast<std::int64_t>(it->second);
  };
  const std::int64_t tri = h * (h + 1) / 2;
  FormulaValue f;
  switch (family) {
    case Family::Ccn:
    case Family::Hcn: {
      const auto n = get("n");
      f.value = (h + 1) * n - tri + 1;
      f.r = n + 1;
      f.in_range = n >= 3 && h >= 1 && h <= n - 2;
      f.range = "n >= 3, 1 <= h <= n-2";
      break;
    }
    case Family::Geh:
    case Family::Eh: {
      const auto s = get("s"), t = get("t");
      f.value = (h + 1) * s - tri + 1;
      f.r = s + 1;
      f.in_range = s >= 3 && s <= t && h >= 1 && h <= s - 2;
      f.range = "3 <= s <= t, 1 <= h <= s-2";
      break;
    }
    case Family::DualCube: {
      const auto n = get("n");
      f.value = (h + 1) * (n - 1) - tri + 1;
      f.r = n;
      f.in_range = n >= 4 && h >= 1 && h <= n - 3;
      f.range = "n >= 4, 1 <= h <= n-3";
      break;
    }
    case Family::Hhc: {
      const auto m = get("m");
      f.value = (h + 1) * m - tri + 1;
      f.r = m + 1;
      f.in_range = m >= 5 && h >= 1 && h <= m - 2;
      f.range = "m >= 5, 1 <= h <= m-2";
      break;
    }
    case Family::Cayley:
    case Family::BubbleSort: {
      const auto n = get("n");
      f.value = (h + 1) * (n - 2) - tri + 1;
      f.r = n - 1;
      f.in_range = n >= 5 && h >= 1 && h <= n - 4;
      f.range = "n >= 5, 1 <= h <= n-4";
      break;
    }
    case Family::DqCube: {
      const auto n = get("n");
      f.value = (h + 1) * n - tri + 1;
      f.r = n + 1;
      f.in_range = n >= 3 && h >= 1 && h <= n - 2;
      f.range = "n >= 3, 1 <= h <= n-2";
      break;
    }
    default:
      throw Error("no component-diagnosability formula for family '" + std::string(family_name(family)) + "'");
  }
  f.general_value = ct_general(f.r, h);
  f.consistent = f.value == f.general_value;
  return f;
}

inline FormulaValue ct_formula(const NetworkSpec& spec, std::int64_t h) { return ct_formula(spec.family, spec.params, h); }

inline bool has_ct_formula(Family family) {
  switch (family) {
    case Family::Hypercube:
    case Family::DiscRing: return false;
    default: return true;
  }
}

}  // namespace compdiag
