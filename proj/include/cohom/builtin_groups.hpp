#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cohom/error.hpp"
#include "cohom/group.hpp"

namespace cohom {

inline GroupPtr trivial_group() { return make_group_unchecked({0}, {"e"}); }

inline GroupPtr cyclic_group(std::size_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "cyclic group needs m >= 1");
  std::vector<GroupElement> t(m * m);
  std::vector<std::string> labels(m);
  for (std::size_t a = 0; a < m; ++a) {
    labels[a] = a == 0 ? "e" : a == 1 ? "g" : "g^" + std::to_string(a);
    for (std::size_t b = 0; b < m; ++b) t[a * m + b] = static_cast<GroupElement>((a + b) % m);
  }
  return make_group_unchecked(std::move(t), std::move(labels));
}

/// Dihedral group of order 2n, elements r^i s^j stored at index i + n*j.
inline GroupPtr dihedral_group(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "dihedral group needs n >= 1");
  const std::size_t order = 2 * n;
  std::vector<GroupElement> t(order * order);
  std::vector<std::string> labels(order);
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t i = x % n, j = x / n;
    std::string r = i == 0 ? "" : i == 1 ? "r" : "r^" + std::to_string(i);
    labels[x] = (r.empty() && j == 0) ? "e" : r + (j ? "s" : "");
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t k = y % n, l = y / n;
      const std::size_t ri = j == 0 ? (i + k) % n : (i + n - k) % n;
      t[x * order + y] = static_cast<GroupElement>(ri + n * ((j + l) % 2));
    }
  }
  return make_group_unchecked(std::move(t), std::move(labels));
}

/// Symmetric group on {0..n-1}, permutations in lexicographic order of their
/// one-line notation; product is composition (p*q)(x) = p(q(x)).
inline GroupPtr symmetric_group(std::size_t n) {
  if (n < 1 || n > 5) throw Error(ErrorKind::InvalidArgument, "symmetric group supported for 1 <= n <= 5");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const std::size_t order = perms.size();
  std::vector<std::string> labels(order);
  for (std::size_t a = 0; a < order; ++a) {
    std::string s = "[";
    for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(perms[a][i]);
    labels[a] = s + "]";
  }
  std::vector<GroupElement> t(order * order);
  std::vector<std::size_t> comp(n);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      for (std::size_t x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];
      auto it = std::lower_bound(perms.begin(), perms.end(), comp);
      t[a * order + b] = static_cast<GroupElement>(it - perms.begin());
    }
  return make_group_unchecked(std::move(t), std::move(labels));
}

/// Quaternion group Q8: index = unit + 4*sign, units ordered 1,i,j,k.
inline GroupPtr quaternion_group() {
  // unit product table: value = unit index, sign flip flag
  static constexpr int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int flip[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  static const char* names[4] = {"1", "i", "j", "k"};
  std::vector<GroupElement> t(64);
  std::vector<std::string> labels(8);
  for (int x = 0; x < 8; ++x) {
    labels[x] = (x >= 4 ? std::string("-") : std::string()) + names[x % 4];
    for (int y = 0; y < 8; ++y) {
      const int u = unit[x % 4][y % 4];
      const int s = (x / 4 + y / 4 + flip[x % 4][y % 4]) % 2;
      t[x * 8 + y] = static_cast<GroupElement>(u + 4 * s);
    }
  }
  return make_group_unchecked(std::move(t), std::move(labels));
}

/// Direct product, element (a,b) at index a*|H| + b.
inline GroupPtr direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t n = g.order(), m = h.order(), order = n * m;
  std::vector<GroupElement> t(order * order);
  std::vector<std::string> labels(order);
  for (std::size_t x = 0; x < order; ++x) {
    const auto a = static_cast<GroupElement>(x / m), b = static_cast<GroupElement>(x % m);
    labels[x] = "(" + g.label(a) + "," + h.label(b) + ")";
    for (std::size_t y = 0; y < order; ++y) {
      const auto c = static_cast<GroupElement>(y / m), d = static_cast<GroupElement>(y % m);
      t[x * order + y] = static_cast<GroupElement>(g.mul(a, c) * m + h.mul(b, d));
    }
  }
  return make_group_unchecked(std::move(t), std::move(labels));
}

namespace detail {

inline std::vector<std::string_view> split_top_level(std::string_view s) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == ',' && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

inline std::size_t parse_parameter(std::string_view family, std::string_view arg) {
  if (arg.empty()) throw Error(ErrorKind::UnknownFamily, std::string(family) + " needs a parameter");
  std::size_t v = 0;
  for (char ch : arg) {
    if (ch < '0' || ch > '9') throw Error(ErrorKind::UnknownFamily, "bad parameter '" + std::string(arg) + "'");
    v = v * 10 + static_cast<std::size_t>(ch - '0');
  }
  return v;
}

}  // namespace detail

/// Builtin families: trivial, cyclic:m, dihedral:n (order 2n), symmetric:n,
/// quaternion, klein, prod(X,Y,...).
inline GroupPtr builtin_group(std::string_view descr) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  descr = trim(descr);
  if (descr == "trivial") return trivial_group();
  if (descr == "quaternion") return quaternion_group();
  if (descr == "klein") return direct_product(*cyclic_group(2), *cyclic_group(2));
  for (std::string_view prefix : {"prod(", "product("}) {
    if (descr.starts_with(prefix) && descr.ends_with(")")) {
      auto inner = descr.substr(prefix.size(), descr.size() - prefix.size() - 1);
      auto parts = detail::split_top_level(inner);
      GroupPtr acc = builtin_group(parts.front());
      for (std::size_t i = 1; i < parts.size(); ++i) acc = direct_product(*acc, *builtin_group(parts[i]));
      return acc;
    }
  }
  const auto colon = descr.find(':');
  if (colon != std::string_view::npos) {
    const auto family = descr.substr(0, colon);
    const auto arg = trim(descr.substr(colon + 1));
    if (family == "cyclic") return cyclic_group(detail::parse_parameter(family, arg));
    if (family == "dihedral") return dihedral_group(detail::parse_parameter(family, arg));
    if (family == "symmetric") return symmetric_group(detail::parse_parameter(family, arg));
  }
  throw Error(ErrorKind::UnknownFamily, "unknown group family '" + std::string(descr) + "'");
}

}  // namespace cohom
