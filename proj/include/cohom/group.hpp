#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "cohom/error.hpp"

namespace cohom {

using GroupElement = std::uint32_t;

enum class AssociativityCheck { Exhaustive, Sampled, Skip };

/// A finite group given by its multiplication table. Index 0 is always the
/// identity. Immutable after construction.
class FiniteGroup {
 public:
  static constexpr GroupElement identity = 0;

  std::size_t order() const noexcept { return order_; }

  // Unchecked table lookups for inner loops.
  GroupElement mul(GroupElement a, GroupElement b) const noexcept { return table_[a * order_ + b]; }
  GroupElement inv(GroupElement a) const noexcept { return inverse_[a]; }

  GroupElement multiply(std::size_t a, std::size_t b) const {
    check_index(a);
    check_index(b);
    return mul(static_cast<GroupElement>(a), static_cast<GroupElement>(b));
  }
  GroupElement inverse(std::size_t a) const {
    check_index(a);
    return inv(static_cast<GroupElement>(a));
  }

  const std::string& label(GroupElement a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::optional<GroupElement> find(const std::string& label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<GroupElement>& table() const noexcept { return table_; }

  bool is_abelian() const {
    for (GroupElement a = 0; a < order_; ++a)
      for (GroupElement b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::optional<std::pair<GroupElement, GroupElement>> non_commuting_pair() const {
    for (GroupElement a = 0; a < order_; ++a)
      for (GroupElement b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return std::make_pair(a, b);
    return std::nullopt;
  }

  std::size_t element_order(GroupElement a) const {
    std::size_t k = 1;
    for (GroupElement x = a; x != identity; x = mul(x, a)) ++k;
    return k;
  }

  /// Product of a sequence, left to right. Empty product is the identity.
  template <class Range>
  GroupElement product(const Range& elems) const {
    GroupElement acc = identity;
    for (auto e : elems) acc = mul(acc, static_cast<GroupElement>(e));
    return acc;
  }
  template <class It>
  GroupElement product(It first, It last) const {
    GroupElement acc = identity;
    for (; first != last; ++first) acc = mul(acc, static_cast<GroupElement>(*first));
    return acc;
  }

  friend std::shared_ptr<const FiniteGroup> make_group_unchecked(std::vector<GroupElement> table,
                                                                 std::vector<std::string> labels);

 private:
  FiniteGroup() = default;

  void check_index(std::size_t a) const {
    if (a >= order_)
      throw Error(ErrorKind::IndexOutOfRange, "element index " + std::to_string(a) + " out of range", {a});
  }

  std::size_t order_ = 0;
  std::vector<GroupElement> table_;
  std::vector<GroupElement> inverse_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, GroupElement> label_index_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Builds a group from a flat table that already has the identity at index 0.
/// Inverses are found by table search; associativity is not checked here.
inline GroupPtr make_group_unchecked(std::vector<GroupElement> table, std::vector<std::string> labels) {
  const std::size_t n = labels.size();
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->order_ = n;
  g->table_ = std::move(table);
  g->labels_ = std::move(labels);
  g->inverse_.assign(n, 0);
  for (GroupElement a = 0; a < n; ++a) {
    bool found = false;
    for (GroupElement b = 0; b < n; ++b) {
      if (g->mul(a, b) == FiniteGroup::identity && g->mul(b, a) == FiniteGroup::identity) {
        g->inverse_[a] = b;
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorKind::NoInverse, "element " + g->labels_[a] + " has no inverse", {a});
  }
  for (GroupElement a = 0; a < n; ++a) {
    if (!g->label_index_.emplace(g->labels_[a], a).second)
      throw Error(ErrorKind::InvalidArgument, "duplicate element label " + g->labels_[a]);
  }
  return g;
}

namespace detail {

inline std::optional<std::array<std::size_t, 3>> find_nonassociative(const FiniteGroup& g,
                                                                     AssociativityCheck mode,
                                                                     std::uint64_t samples = 1'000'000,
                                                                     std::uint64_t seed = 0) {
  const std::size_t n = g.order();
  if (mode == AssociativityCheck::Skip) return std::nullopt;
  if (mode == AssociativityCheck::Exhaustive) {
    for (GroupElement a = 0; a < n; ++a)
      for (GroupElement b = 0; b < n; ++b) {
        const GroupElement ab = g.mul(a, b);
        for (GroupElement c = 0; c < n; ++c)
          if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) return std::array<std::size_t, 3>{a, b, c};
      }
    return std::nullopt;
  }
  std::mt19937_64 rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto a = static_cast<GroupElement>(rng() % n);
    const auto b = static_cast<GroupElement>(rng() % n);
    const auto c = static_cast<GroupElement>(rng() % n);
    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return std::array<std::size_t, 3>{a, b, c};
  }
  return std::nullopt;
}

}  // namespace detail

/// Validates a square multiplication table. The identity may sit at any
/// index; the result has it relabelled to index 0 (other elements keep their
/// relative order).
inline GroupPtr group_from_table(const std::vector<std::vector<std::size_t>>& table,
                                 std::vector<std::string> labels = {},
                                 AssociativityCheck check = AssociativityCheck::Exhaustive) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty multiplication table");
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw Error(ErrorKind::InvalidArgument, "table is not square");
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] >= n)
        throw Error(ErrorKind::IndexOutOfRange, "table entry out of range", {i, j});
  }
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != n) throw Error(ErrorKind::InvalidArgument, "label count does not match table size");

  std::optional<std::size_t> e;
  for (std::size_t i = 0; i < n && !e; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = table[i][j] == j && table[j][i] == j;
    if (ok) e = i;
  }
  if (!e) throw Error(ErrorKind::NoIdentity, "no two-sided identity in table");

  // old index -> new index
  std::vector<GroupElement> relabel(n);
  std::vector<std::size_t> order;
  order.push_back(*e);
  for (std::size_t i = 0; i < n; ++i)
    if (i != *e) order.push_back(i);
  for (std::size_t k = 0; k < n; ++k) relabel[order[k]] = static_cast<GroupElement>(k);

  std::vector<GroupElement> flat(n * n);
  std::vector<std::string> new_labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    new_labels[a] = labels[order[a]];
    for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = relabel[table[order[a]][order[b]]];
  }
  auto g = make_group_unchecked(std::move(flat), std::move(new_labels));
  if (auto w = detail::find_nonassociative(*g, check)) {
    throw Error(ErrorKind::NotAssociative,
                "(" + g->label((*w)[0]) + "*" + g->label((*w)[1]) + ")*" + g->label((*w)[2]) + " differs",
                {order[(*w)[0]], order[(*w)[1]], order[(*w)[2]]});
  }
  return g;
}

/// A homomorphism G -> {+1,-1} that is non-trivial, if one exists. Built from
/// the subgroup generated by squares: any index-2 subgroup contains it.
inline std::optional<std::vector<int>> sign_character(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<char> in_sub(n, 0);
  auto close = [&](std::vector<char>& sub) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (GroupElement a = 0; a < n; ++a) {
        if (!sub[a]) continue;
        for (GroupElement b = 0; b < n; ++b)
          if (sub[b] && !sub[g.mul(a, b)]) {
            sub[g.mul(a, b)] = 1;
            changed = true;
          }
      }
    }
  };
  in_sub[FiniteGroup::identity] = 1;
  for (GroupElement a = 0; a < n; ++a) in_sub[g.mul(a, a)] = 1;
  close(in_sub);
  std::optional<GroupElement> t;
  for (GroupElement a = 0; a < n && !t; ++a)
    if (!in_sub[a]) t = a;
  if (!t) return std::nullopt;
  // Grow a maximal subgroup avoiding t. Modulo squares every element has
  // order 2, so the result has index 2.
  for (GroupElement x = 0; x < n; ++x) {
    if (in_sub[x] || in_sub[g.mul(g.inv(*t), x)]) continue;
    std::vector<char> trial = in_sub;
    trial[x] = 1;
    close(trial);
    if (!trial[*t]) in_sub = std::move(trial);
  }
  std::vector<int> chi(n);
  for (GroupElement a = 0; a < n; ++a) chi[a] = in_sub[a] ? 1 : -1;
  return chi;
}

}  // namespace cohom
