#pragma once

#include <cstdint>
#include <limits>

#include "compdiag/core/error.hpp"

namespace compdiag {

// Resource limits shared by every enumerating or materializing operation.
struct Limits {
  // Maximum predicted number of set checks for any subset enumeration.
  std::uint64_t enumeration_cap = 100'000'000;
  // Maximum node count a generator may materialize.
  std::uint64_t node_cap = std::uint64_t{1} << 24;
  // Maximum node count for exhaustive diagnosability computations.
  std::uint64_t exhaustive_nodes = 14;
  // Maximum number of faulty-controlled syndrome slots for exhaustive Ω(F).
  std::uint64_t syndrome_slots = 20;
};

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

// C(n, k), saturating at kSaturated.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is exact at every step; guard the multiply.
    const std::uint64_t factor = n - k + i;
    if (result > kSaturated / factor) return kSaturated;
    result = result * factor / i;
  }
  return result;
}

// sum_{k=0}^{max_k} C(n, k), saturating.
inline std::uint64_t binomial_prefix(std::uint64_t n, std::uint64_t max_k) {
  std::uint64_t total = 0;
  for (std::uint64_t k = 0; k <= max_k && k <= n; ++k) total = saturating_add(total, binomial(n, k));
  return total;
}

inline void require_within_cap(const char* what, std::uint64_t requested, std::uint64_t cap) {
  if (requested > cap) throw CapExceeded(what, requested, cap);
}

}  // namespace compdiag
