#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cohom/cochain.hpp"
#include "cohom/error.hpp"
#include "cohom/modular.hpp"
#include "cohom/module.hpp"
#include "cohom/smith.hpp"

namespace cohom {

/// Resource bounds shared by the solvers and verifiers.
struct Limits {
  std::uint64_t max_matrix_entries = 10'000'000;
  std::uint64_t max_cochain_entries = 10'000'000;
  std::uint64_t exhaustive_threshold = 10'000'000;  // tuples
  std::uint64_t samples = 1'000'000;
  std::uint64_t max_table_entries = std::uint64_t{1} << 25;

  /// Defaults, with COCYCLE_MAX_TUPLES overriding the matrix and cochain bounds.
  static Limits from_env() {
    Limits l;
    if (const char* s = std::getenv("COCYCLE_MAX_TUPLES")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(s, &end, 10);
      if (end != s && *end == '\0' && v > 0) {
        l.max_matrix_entries = v;
        l.max_cochain_entries = v;
      }
    }
    return l;
  }
};

/// Integer matrix of δ^n on normalized cochains: columns indexed by
/// (tuple, coordinate) of degree n, rows by the same for degree n+1, tuples in
/// lexicographic order.
inline IntMatrix coboundary_matrix(const ModulePtr& m, std::size_t n, const Limits& limits = {}) {
  const auto& g = *m->group();
  const std::size_t k = m->rank();
  const std::uint64_t cols = tuple_count(g.order(), n) * k;
  const std::uint64_t rows = tuple_count(g.order(), n + 1) * k;
  std::uint64_t entries = 0;
  if (__builtin_mul_overflow(rows, cols, &entries) || entries > limits.max_matrix_entries)
    throw Error(ErrorKind::ResourceLimit, "coboundary matrix in degree " + std::to_string(n) + " would have " +
                                              std::to_string(rows) + "x" + std::to_string(cols) + " entries");
  IntMatrix out(rows, cols);
  const std::uint64_t base = g.order() - 1;
  auto key = [&](const Tuple& t) -> std::optional<std::uint64_t> {
    std::uint64_t c = 0;
    for (auto x : t) {
      if (x == 0) return std::nullopt;
      c = c * base + (x - 1);
    }
    return c;
  };
  Tuple s(n);
  std::uint64_t r = 0;
  for (TupleOdometer it(g.order(), n + 1); !it.done(); it.next(), ++r) {
    const Tuple& t = it.tuple();
    auto block = [&](std::uint64_t col_tuple, const IntMatrix* rho, std::int64_t sign) {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          const std::int64_t v = rho ? (*rho)(i, j) : (i == j ? 1 : 0);
          if (v != 0) out(r * k + i, col_tuple * k + j) += sign * v;
        }
    };
    std::copy(t.begin() + 1, t.end(), s.begin());
    if (auto c = key(s)) block(*c, &m->action(t[0]), 1);
    for (std::size_t i = 1; i <= n; ++i) {
      std::size_t w = 0;
      for (std::size_t j = 0; j < i - 1; ++j) s[w++] = t[j];
      s[w++] = g.mul(t[i - 1], t[i]);
      for (std::size_t j = i + 1; j <= n; ++j) s[w++] = t[j];
      if (auto c = key(s)) block(*c, nullptr, (i % 2) ? -1 : 1);
    }
    std::copy(t.begin(), t.begin() + n, s.begin());
    if (auto c = key(s)) block(*c, nullptr, ((n + 1) % 2) ? -1 : 1);
  }
  return out;
}

inline std::vector<std::int64_t> to_vector(const Cochain& f) {
  const std::size_t k = f.width();
  std::vector<std::int64_t> v(tuple_count(f.group()->order(), f.degree()) * k, 0);
  f.for_each_nonzero([&](std::uint64_t key, ElementView x) {
    for (std::size_t i = 0; i < k; ++i) v[key * k + i] = x[i];
  });
  return v;
}

inline Cochain from_vector(const ModulePtr& m, std::size_t n, std::span<const std::int64_t> v) {
  const std::size_t k = m->rank();
  Cochain f(m, n);
  if (k == 0) return f;
  ModuleElement x(k);
  for (std::size_t key = 0; key * k < v.size(); ++key) {
    for (std::size_t i = 0; i < k; ++i) x[i] = reduce_mod(v[key * k + i], m->factors()[i]);
    if (!m->is_zero(x)) f.set_key(key, x);
  }
  return f;
}

struct CohomologyResult {
  std::vector<std::int64_t> invariants;  // canonical invariant factors, 0 = Z
  std::vector<Cochain> representatives;  // one cocycle per factor
};

namespace detail {

inline std::optional<std::int64_t> common_modulus(const GModule& m) {
  const auto& d = m.factors();
  if (d.empty() || d[0] == 0) return std::nullopt;
  for (auto x : d)
    if (x != d[0]) return std::nullopt;
  return d[0];
}

inline void check_square(std::size_t cols, std::size_t n, const Limits& limits) {
  std::uint64_t square = 0;
  if (__builtin_mul_overflow(std::uint64_t{cols}, std::uint64_t{cols}, &square) || square > limits.max_matrix_entries)
    throw Error(ErrorKind::ResourceLimit, "degree " + std::to_string(n) + " cochain space has dimension " +
                                              std::to_string(cols) + ", too large for the Smith transform");
}

// M = (Z/d)^k: everything is linear algebra over Z/d, so entries stay small.
inline CohomologyResult cohomology_mod(const ModulePtr& m, std::size_t n, std::int64_t dm, const Limits& limits) {
  CohomologyResult out;
  const IntMatrix dprev = coboundary_matrix(m, n - 1, limits);
  const std::size_t cols = dprev.rows();
  if (cols == 0) return out;
  check_square(cols, n, limits);
  const IntMatrix z = modular_kernel(coboundary_matrix(m, n, limits), dm);
  const std::size_t nz = z.cols();
  if (nz == 0) return out;
  // Coefficient vectors w with z w in im δ^{n-1}.
  IntMatrix joint(cols, nz + dprev.cols());
  for (std::size_t r = 0; r < cols; ++r) {
    for (std::size_t c = 0; c < nz; ++c) joint(r, c) = z(r, c);
    for (std::size_t c = 0; c < dprev.cols(); ++c) joint(r, nz + c) = dprev(r, c);
  }
  const IntMatrix ker = modular_kernel(joint, dm);
  IntMatrix rel(nz, ker.cols());
  for (std::size_t r = 0; r < nz; ++r)
    for (std::size_t c = 0; c < ker.cols(); ++c) rel(r, c) = ker(r, c);
  const auto s = modular_diagonal(rel, dm, {.left_inverse = true});

  // Cyclic summands, then regrouped into invariant factors.
  std::vector<std::int64_t> orders;
  std::vector<std::size_t> which;
  for (std::size_t i = 0; i < nz; ++i) {
    const std::int64_t a = i < s.rank ? s.diagonal[i] : dm;
    if (a == 1) continue;
    orders.push_back(a);
    which.push_back(i);
  }
  if (orders.empty()) return out;
  IntMatrix diag(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) diag(i, i) = orders[i];
  const auto f = smith_int(diag, {.left_inverse = true});
  for (std::size_t j = 0; j < orders.size(); ++j) {
    const std::int64_t e = f.diagonal(j, j);
    if (e == 1) continue;
    out.invariants.push_back(e);
    std::vector<std::int64_t> w(nz, 0);
    for (std::size_t i = 0; i < orders.size(); ++i) {
      const std::int64_t c = mod_reduce(f.left_inverse(i, j), dm);
      if (c == 0) continue;
      for (std::size_t r = 0; r < nz; ++r) w[r] = (w[r] + mod_mul(c, s.left_inverse(r, which[i]), dm)) % dm;
    }
    std::vector<std::int64_t> x(cols, 0);
    for (std::size_t r = 0; r < nz; ++r) {
      if (w[r] == 0) continue;
      for (std::size_t c = 0; c < cols; ++c)
        if (z(c, r) != 0) x[c] = (x[c] + mod_mul(w[r], z(c, r), dm)) % dm;
    }
    out.representatives.push_back(from_vector(m, n, x));
  }
  return out;
}

}  // namespace detail

/// H^n(G; M) by Smith normal form on normalized cochains.
inline CohomologyResult cohomology(const ModulePtr& m, std::size_t n, const Limits& limits = {}) {
  CohomologyResult out;
  if (n == 0) {
    auto inv = invariants(m);
    out.invariants = inv.module->factors();
    for (std::size_t i = 0; i < inv.module->rank(); ++i) {
      ModuleElement e = inv.module->zero();
      e[i] = 1;
      out.representatives.push_back(constant_cochain(m, inv.map.apply(e)));
    }
    return out;
  }
  // For n ≥ 1, H^n is finite, so the cocycle lattice L_Z lies in the
  // saturation of L_B = im δ^{n-1} + (relations of M in C^n). H^n is then the
  // kernel of δ on T = sat(L_B)/L_B, which only needs the Smith form of the
  // generators of L_B and small lattice intersections.
  if (auto dm = detail::common_modulus(*m)) return detail::cohomology_mod(m, n, *dm, limits);
  const auto& d = m->factors();
  const std::size_t k = m->rank();
  const IntMatrix dprev = coboundary_matrix(m, n - 1, limits);
  const std::size_t cols = dprev.rows();
  if (cols == 0) return out;
  detail::check_square(cols, n, limits);

  std::vector<std::size_t> tcols;
  for (std::size_t c = 0; c < cols; ++c)
    if (d[c % k] != 0) tcols.push_back(c);
  IntMatrix gens(cols, dprev.cols() + tcols.size());
  for (std::size_t r = 0; r < cols; ++r)
    for (std::size_t c = 0; c < dprev.cols(); ++c) gens(r, c) = dprev(r, c);
  for (std::size_t c = 0; c < tcols.size(); ++c) gens(tcols[c], dprev.cols() + c) = d[tcols[c] % k];

  const auto snf = smith_int(gens, {.left_inverse = true, .diagonal_only = true, .sparse_pivot = true});
  std::vector<std::size_t> sel;
  std::vector<std::int64_t> e;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.diagonal(i, i) != 1) {
      sel.push_back(i);
      e.push_back(snf.diagonal(i, i));
    }
  const std::size_t r = sel.size();
  if (r == 0) return out;

  // Generators u_j of T as cochains, and their coboundaries.
  std::vector<std::vector<std::int64_t>> u(r, std::vector<std::int64_t>(cols));
  std::vector<Cochain> du;
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t c = 0; c < cols; ++c) u[j][c] = snf.left_inverse(c, sel[j]);
    du.push_back(coboundary(from_vector(m, n, u[j]), limits.max_cochain_entries));
  }

  // Constraints Σ y_j δu_j ≡ 0, one per coordinate of C^{n+1}(M).
  std::set<std::pair<std::vector<std::int64_t>, std::int64_t>> constraints;
  {
    std::map<std::uint64_t, std::vector<std::int64_t>> rows;  // key * k + coordinate -> row
    for (std::size_t j = 0; j < r; ++j)
      du[j].for_each_nonzero([&](std::uint64_t key, ElementView v) {
        for (std::size_t c = 0; c < k; ++c) {
          if (v[c] == 0) continue;
          auto& row = rows[key * k + c];
          row.resize(r, 0);
          row[j] = v[c];
        }
      });
    for (auto& [pos, row] : rows) constraints.emplace(std::move(row), d[pos % k]);
  }

  // K = {y ∈ Z^r : constraints hold}, as columns of b.
  IntMatrix b = IntMatrix::identity(r);
  for (const auto& [row, mod] : constraints) {
    std::vector<std::int64_t> w(r, 0);
    bool zero = true;
    for (std::size_t j = 0; j < r; ++j) {
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < r; ++i)
        if (row[i] != 0 && b(i, j) != 0) acc = add(acc, mul(row[i], b(i, j)));
      w[j] = reduce_mod(acc, mod);
      zero = zero && w[j] == 0;
    }
    if (zero) continue;
    if (mod == 0) throw Error(ErrorKind::InvalidArgument, "internal: integral constraint on a finite group");
    IntMatrix c(1, r + 1);
    for (std::size_t j = 0; j < r; ++j) c(0, j) = w[j];
    c(0, r) = -mod;
    const IntMatrix ker = kernel_basis<std::int64_t>(c);
    IntMatrix y(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) y(i, j) = ker(i, j);
    b = b * y;
  }

  // H^n = K / diag(e) Z^r.
  IntMatrix diag(r, r);
  for (std::size_t j = 0; j < r; ++j) diag(j, j) = e[j];
  const auto sols = solve_integer<std::int64_t>(b, diag);
  IntMatrix rel(r, r);
  for (std::size_t c = 0; c < r; ++c) {
    if (!sols[c]) throw Error(ErrorKind::InvalidArgument, "internal: coboundaries outside the cocycle lattice");
    for (std::size_t i = 0; i < r; ++i) rel(i, c) = (*sols[c])[i];
  }
  const auto hs = smith_int(rel, {.left_inverse = true});
  const IntMatrix gen = b * hs.left_inverse;  // T coordinates of the generators
  for (std::size_t i = 0; i < r; ++i) {
    const std::int64_t f = hs.diagonal(i, i);
    if (f == 1) continue;
    out.invariants.push_back(f);
    std::vector<std::int64_t> x(cols, 0);
    for (std::size_t c = 0; c < cols; ++c) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < r; ++j)
        if (gen(j, i) != 0 && u[j][c] != 0) acc = add(acc, mul(gen(j, i), u[j][c]));
      x[c] = reduce_mod(acc, d[c % k]);
    }
    out.representatives.push_back(from_vector(m, n, x));
  }
  return out;
}

/// x with δx = f, or nullopt when f is not a coboundary. The answer is
/// re-checked before returning.
inline std::optional<Cochain> solve_coboundary(const Cochain& f, const Limits& limits = {}) {
  if (f.degree() == 0) throw Error(ErrorKind::DegreeTooLow, "degree 0 cochains are never coboundaries");
  const auto& m = f.module();
  const auto& d = m->factors();
  const std::size_t k = m->rank();
  const std::size_t n = f.degree();
  if (f.is_zero()) return Cochain(m, n - 1);
  const IntMatrix dp = coboundary_matrix(m, n - 1, limits);
  const std::size_t rows = dp.rows(), cols = dp.cols();
  if (auto dm = detail::common_modulus(*m)) {
    auto x = modular_solve(dp, to_vector(f), *dm);
    if (!x) return std::nullopt;
    Cochain h = from_vector(m, n - 1, *x);
    if (!(coboundary(h, limits.max_cochain_entries) == f))
      throw Error(ErrorKind::InvalidArgument, "internal: coboundary solution failed re-check");
    return h;
  }
  std::vector<std::size_t> trows;
  for (std::size_t r = 0; r < rows; ++r)
    if (d[r % k] != 0) trows.push_back(r);
  IntMatrix a(rows, cols + trows.size());
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a(r, c) = dp(r, c);
  for (std::size_t c = 0; c < trows.size(); ++c) a(trows[c], cols + c) = -d[trows[c] % k];
  const auto fv = to_vector(f);
  IntMatrix rhs(rows, 1);
  for (std::size_t r = 0; r < rows; ++r) rhs(r, 0) = fv[r];

  auto sol = with_bigint_fallback([&](auto tag) -> std::optional<std::vector<std::int64_t>> {
    using T = decltype(tag);
    auto s = solve_integer<T>(a.template cast<T>(), rhs.template cast<T>());
    if (!s[0]) return std::nullopt;
    std::vector<std::int64_t> x(cols);
    for (std::size_t c = 0; c < cols; ++c) {
      BigInt v((*s[0])[c]);
      if (const std::int64_t dc = d[c % k]; dc != 0) v = reduce_mod(v, BigInt(dc));
      x[c] = to_int64(v);
    }
    return x;
  });
  if (!sol) return std::nullopt;
  Cochain x = from_vector(m, n - 1, *sol);
  if (!(coboundary(x, limits.max_cochain_entries) == f))
    throw Error(ErrorKind::InvalidArgument, "internal: coboundary solution failed re-check");
  return x;
}

/// A cochain with rational values numerator / denominator.
struct ScaledCochain {
  Cochain numerator;
  std::int64_t denominator = 1;
};

/// For a cocycle f with free coefficients, h with δh = f over Q, given as
/// H / |G| where H(g_1..g_{n-1}) = (-1)^n Σ_g f(g_1..g_{n-1}, g).
inline ScaledCochain averaging_homotopy(const Cochain& f, const Limits& limits = {}) {
  const auto& m = f.module();
  if (!m->is_free()) throw Error(ErrorKind::NotFreeModule, "averaging homotopy needs free coefficients");
  if (f.degree() == 0) throw Error(ErrorKind::DegreeTooLow, "averaging homotopy needs degree at least 1");
  if (auto c = is_cocycle(f, limits.max_cochain_entries); !c)
    throw Error(ErrorKind::NotACocycle, "input is not a cocycle", {c.witness.begin(), c.witness.end()});
  const auto& g = *f.group();
  const std::size_t n = f.degree();
  check_cochain_size(m, n - 1, limits.max_cochain_entries);
  ScaledCochain h{Cochain(m, n - 1), static_cast<std::int64_t>(g.order())};
  const std::int64_t sign = (n % 2) ? -1 : 1;
  ModuleElement acc(m->rank());
  Tuple t(n);
  std::uint64_t key = 0;
  for (TupleOdometer it(g.order(), n - 1); !it.done(); it.next(), ++key) {
    std::fill(acc.begin(), acc.end(), 0);
    std::copy(it.tuple().begin(), it.tuple().end(), t.begin());
    for (GroupElement x = 1; x < g.order(); ++x) {
      t[n - 1] = x;
      m->accumulate(acc, f.at(t), sign);
    }
    if (!m->is_zero(acc)) h.numerator.set_key(key, acc);
  }
  if (!(coboundary(h.numerator, limits.max_cochain_entries) == scale(h.denominator, f)))
    throw Error(ErrorKind::InvalidArgument, "internal: averaging homotopy failed its postcondition");
  return h;
}

}  // namespace cohom
