#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "compdiag/core/node_set.hpp"

namespace compdiag {

// One slice of the canonical subset order: every k-subset of [0, n) whose
// smallest member is `first` (k = 0 has the single slice {size 0}).
struct SubsetSlice {
  std::size_t size;
  NodeId first;
};

// Slices for all subsets of size [min_size, max_size], in canonical order
// (size ascending, then lexicographic).
inline std::vector<SubsetSlice> subset_slices(std::size_t n, std::size_t min_size, std::size_t max_size) {
  std::vector<SubsetSlice> slices;
  for (std::size_t k = min_size; k <= max_size && k <= n; ++k) {
    if (k == 0) {
      slices.push_back({0, 0});
      continue;
    }
    for (std::size_t first = 0; first + k <= n; ++first) slices.push_back({k, static_cast<NodeId>(first)});
  }
  return slices;
}

// Calls f(members) for each subset of the slice in lexicographic order until
// f returns true. Returns whether f stopped the walk.
template <class F>
bool for_each_in_slice(std::size_t n, const SubsetSlice& slice, F&& f) {
  std::vector<NodeId> members(slice.size);
  if (slice.size == 0) return f(members);
  members[0] = slice.first;
  for (std::size_t i = 1; i < slice.size; ++i) members[i] = static_cast<NodeId>(slice.first + i);
  const std::size_t k = slice.size;
  for (;;) {
    if (f(members)) return true;
    if (k == 1) return false;
    // Rightmost advanceable position among 1..k-1; position 0 stays fixed.
    std::size_t i = k - 1;
    while (members[i] == n - (k - i)) {
      if (i == 1) return false;
      --i;
    }
    ++members[i];
    for (std::size_t j = i + 1; j < k; ++j) members[j] = members[j - 1] + 1;
  }
}

inline std::uint64_t members_mask(const std::vector<NodeId>& members) {
  std::uint64_t m = 0;
  for (auto id : members) m |= std::uint64_t{1} << id;
  return m;
}

}  // namespace compdiag
