#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "compdiag/core/error.hpp"

namespace compdiag {

using NodeId = std::uint32_t;

// Dense bitset over the node universe [0, universe). Binary operations
// require both operands to share a universe.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  static NodeSet of(std::size_t universe, std::initializer_list<NodeId> ids) {
    return from_ids(universe, std::span<const NodeId>(ids.begin(), ids.size()));
  }

  static NodeSet from_ids(std::size_t universe, std::span<const NodeId> ids) {
    NodeSet s(universe);
    for (NodeId id : ids) s.insert(id);
    return s;
  }

  // Set of the low `universe` bits of `mask` (universe <= 64).
  static NodeSet from_mask(std::size_t universe, std::uint64_t mask) {
    if (universe > 64) throw ContractViolation("NodeSet::from_mask requires universe <= 64");
    NodeSet s(universe);
    if (universe != 0) s.words_[0] = universe == 64 ? mask : mask & ((std::uint64_t{1} << universe) - 1);
    return s;
  }

  static NodeSet full(std::size_t universe) {
    NodeSet s(universe);
    std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
    s.trim();
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  bool contains(NodeId id) const {
    check(id);
    return (words_[id >> 6] >> (id & 63)) & 1U;
  }

  void insert(NodeId id) {
    check(id);
    words_[id >> 6] |= std::uint64_t{1} << (id & 63);
  }

  void erase(NodeId id) {
    check(id);
    words_[id >> 6] &= ~(std::uint64_t{1} << (id & 63));
  }

  NodeSet& operator|=(const NodeSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  NodeSet& operator&=(const NodeSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  // Set difference.
  NodeSet& operator-=(const NodeSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  // Symmetric difference.
  NodeSet& operator^=(const NodeSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }

  friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
  friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
  friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }
  friend NodeSet operator^(NodeSet a, const NodeSet& b) { return a ^= b; }

  NodeSet complement() const {
    NodeSet s = *this;
    for (auto& w : s.words_) w = ~w;
    s.trim();
    return s;
  }

  bool is_subset_of(const NodeSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool intersects(const NodeSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        const auto bit = static_cast<unsigned>(std::countr_zero(w));
        f(static_cast<NodeId>(wi * 64 + bit));
        w &= w - 1;
      }
    }
  }

  // Members in ascending order.
  std::vector<NodeId> to_vector() const {
    std::vector<NodeId> out;
    out.reserve(count());
    for_each([&](NodeId id) { out.push_back(id); });
    return out;
  }

  // Low word as a mask; only meaningful when universe <= 64.
  std::uint64_t mask() const noexcept { return words_.empty() ? 0 : words_[0]; }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

  // Canonical order: smaller sets first, then lexicographic on sorted members.
  friend std::strong_ordering canonical_compare(const NodeSet& a, const NodeSet& b) {
    if (auto c = a.count() <=> b.count(); c != 0) return c;
    const auto va = a.to_vector();
    const auto vb = b.to_vector();
    return std::lexicographical_compare_three_way(va.begin(), va.end(), vb.begin(), vb.end());
  }

  std::size_t hash() const noexcept {
    std::size_t h = std::hash<std::size_t>{}(universe_);
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  void check(NodeId id) const {
    if (id >= universe_) throw InvalidNode(id, universe_);
  }
  void same_universe(const NodeSet& o) const {
    if (o.universe_ != universe_) throw ContractViolation("NodeSet universe mismatch");
  }
  void trim() {
    if (universe_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct NodeSetHash {
  std::size_t operator()(const NodeSet& s) const noexcept { return s.hash(); }
};

}  // namespace compdiag
