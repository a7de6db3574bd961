#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "cohom/error.hpp"
#include "cohom/matrix.hpp"

namespace cohom {

/// Diagonal form over Z/d: U A V = diag(s_0..s_{rank-1}) mod d, each s_i a
/// proper divisor of d. No divisibility chain between the s_i.
struct ModularDiagonal {
  std::int64_t modulus = 0;
  std::vector<std::int64_t> diagonal;
  IntMatrix left, right, left_inverse, attached;
  std::size_t rank = 0;
};

namespace detail {

inline std::int64_t mod_reduce(std::int64_t a, std::int64_t d) {
  a %= d;
  return a < 0 ? a + d : a;
}

inline std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t d) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % d);
}

// x, y with a x + b y = gcd(a, b), for a, b >= 0.
inline std::pair<std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const std::int64_t q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  return {x0, y0};
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t d) {
  return mod_reduce(ext_gcd(mod_reduce(a, d), d).first, d);
}

// A unit u of Z/d with u a = gcd(a, d) mod d.
inline std::int64_t normalizing_unit(std::int64_t a, std::int64_t d) {
  const std::int64_t g = std::gcd(a, d);
  const std::int64_t dd = d / g;
  if (dd == 1) return 1;
  std::int64_t u = mod_inverse(a / g, dd);
  while (std::gcd(u, d) != 1) u += dd;
  return u % d;
}

class ModularEliminator {
 public:
  struct Options {
    bool left = false, right = false, left_inverse = false;
  };

  ModularEliminator(const IntMatrix& a, std::int64_t d, Options opt, const IntMatrix* rhs)
      : a_(a.rows(), a.cols()), m_(a.rows()), n_(a.cols()), live_(a.rows()), d_(d), opt_(opt) {
    if (d < 2) throw Error(ErrorKind::InvalidArgument, "modular elimination needs a modulus of at least 2");
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) a_(i, j) = mod_reduce(a(i, j), d);
    if (opt_.left) u_ = IntMatrix::identity(m_);
    if (opt_.left_inverse) uinv_ = IntMatrix::identity(m_);
    if (opt_.right) v_ = IntMatrix::identity(n_);
    if (rhs) {
      rhs_ = IntMatrix(rhs->rows(), rhs->cols());
      for (std::size_t i = 0; i < rhs->rows(); ++i)
        for (std::size_t j = 0; j < rhs->cols(); ++j) rhs_(i, j) = mod_reduce((*rhs)(i, j), d);
      has_rhs_ = true;
    }
  }

  ModularDiagonal run() {
    std::size_t t = 0;
    for (; t < std::min(m_, n_); ++t) {
      t_ = t;
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(pi, pj)) break;
      row_swap(t, pi);
      col_swap(t, pj);
      reduce_pivot();
    }
    ModularDiagonal out;
    out.modulus = d_;
    out.rank = t;
    for (std::size_t i = 0; i < t; ++i) out.diagonal.push_back(a_(i, i));
    out.left = std::move(u_);
    out.right = std::move(v_);
    out.left_inverse = std::move(uinv_);
    out.attached = std::move(rhs_);
    return out;
  }

 private:
  bool row_is_zero(std::size_t i) const {
    const std::int64_t* r = a_.row(i);
    for (std::size_t j = t_; j < n_; ++j)
      if (r[j] != 0) return false;
    return true;
  }

  // Smallest gcd with d; rows found to be zero are moved past live_.
  bool find_pivot(std::size_t& pi, std::size_t& pj) {
    std::int64_t best = 0;
    for (std::size_t i = t_; i < live_;) {
      if (row_is_zero(i)) {
        row_swap(i, --live_);
        continue;
      }
      const std::int64_t* r = a_.row(i);
      for (std::size_t j = t_; j < n_; ++j) {
        if (r[j] == 0) continue;
        const std::int64_t g = std::gcd(r[j], d_);
        if (best == 0 || g < best) {
          best = g;
          pi = i;
          pj = j;
          if (g == 1) return true;
        }
      }
      ++i;
    }
    return best != 0;
  }

  void normalize_pivot() {
    const std::int64_t u = normalizing_unit(a_(t_, t_), d_);
    if (u != 1) row_scale(t_, u);
  }

  void reduce_pivot() {
    const std::size_t t = t_;
    for (;;) {
      normalize_pivot();
      const std::int64_t p = a_(t, t);
      bool again = false;
      for (std::size_t i = t + 1; i < live_; ++i) {
        const std::int64_t x = a_(i, t);
        if (x == 0) continue;
        if (x % p == 0) {
          row_add(i, t, d_ - x / p);
        } else {
          row_combine(t, i);
          again = true;
          break;
        }
      }
      if (again) continue;
      for (std::size_t j = t + 1; j < n_; ++j) {
        const std::int64_t x = a_(t, j);
        if (x == 0) continue;
        if (x % p == 0) {
          pivot_col_add(j, d_ - x / p);
        } else {
          col_combine(t, j);
          again = true;
          break;
        }
      }
      if (!again) return;
    }
  }

  // row_dst += q * row_src
  void row_add(std::size_t dst, std::size_t src, std::int64_t q) {
    auto axpy = [&](std::int64_t* d, const std::int64_t* s, std::size_t from, std::size_t to) {
      for (std::size_t j = from; j < to; ++j)
        if (s[j] != 0) d[j] = (d[j] + mod_mul(q, s[j], d_)) % d_;
    };
    axpy(a_.row(dst), a_.row(src), t_, n_);
    if (opt_.left) axpy(u_.row(dst), u_.row(src), 0, m_);
    if (opt_.left_inverse)
      for (std::size_t i = 0; i < m_; ++i)
        if (uinv_(i, dst) != 0) uinv_(i, src) = mod_reduce(uinv_(i, src) - mod_mul(q, uinv_(i, dst), d_), d_);
    if (has_rhs_) axpy(rhs_.row(dst), rhs_.row(src), 0, rhs_.cols());
  }

  void row_scale(std::size_t r, std::int64_t u) {
    for (std::size_t j = t_; j < n_; ++j) a_(r, j) = mod_mul(a_(r, j), u, d_);
    if (opt_.left)
      for (std::size_t j = 0; j < m_; ++j) u_(r, j) = mod_mul(u_(r, j), u, d_);
    if (opt_.left_inverse) {
      const std::int64_t w = mod_inverse(u, d_);
      for (std::size_t i = 0; i < m_; ++i) uinv_(i, r) = mod_mul(uinv_(i, r), w, d_);
    }
    if (has_rhs_)
      for (std::size_t j = 0; j < rhs_.cols(); ++j) rhs_(r, j) = mod_mul(rhs_(r, j), u, d_);
  }

  // Rows (r1, r2) <- E (r1, r2) with E = [x y; -b/h a/h], h = gcd(a, b) over
  // Z, a = a(r1, t), b = a(r2, t). det E = 1.
  void row_combine(std::size_t r1, std::size_t r2) {
    const std::int64_t a = a_(r1, t_), b = a_(r2, t_);
    const auto [x, y] = ext_gcd(a, b);
    const std::int64_t h = std::gcd(a, b);
    const std::int64_t e11 = mod_reduce(x, d_), e12 = mod_reduce(y, d_);
    const std::int64_t e21 = mod_reduce(-(b / h), d_), e22 = mod_reduce(a / h, d_);
    auto mix = [&](std::int64_t& p, std::int64_t& q) {
      const std::int64_t np = (mod_mul(e11, p, d_) + mod_mul(e12, q, d_)) % d_;
      const std::int64_t nq = (mod_mul(e21, p, d_) + mod_mul(e22, q, d_)) % d_;
      p = np;
      q = nq;
    };
    for (std::size_t j = t_; j < n_; ++j) mix(a_(r1, j), a_(r2, j));
    if (opt_.left)
      for (std::size_t j = 0; j < m_; ++j) mix(u_(r1, j), u_(r2, j));
    if (has_rhs_)
      for (std::size_t j = 0; j < rhs_.cols(); ++j) mix(rhs_(r1, j), rhs_(r2, j));
    if (opt_.left_inverse) {
      // columns times E^{-1} = [a/h -y; b/h x]
      for (std::size_t i = 0; i < m_; ++i) {
        const std::int64_t p = uinv_(i, r1), q = uinv_(i, r2);
        uinv_(i, r1) = (mod_mul(p, e22, d_) + mod_mul(q, mod_reduce(b / h, d_), d_)) % d_;
        uinv_(i, r2) = (mod_mul(p, mod_reduce(-y, d_), d_) + mod_mul(q, e11, d_)) % d_;
      }
    }
  }

  // Columns (c1, c2) <- (c1, c2) F with F = [x -b/h; y a/h], a = a(t, c1),
  // b = a(t, c2).
  void col_combine(std::size_t c1, std::size_t c2) {
    const std::int64_t a = a_(t_, c1), b = a_(t_, c2);
    const auto [x, y] = ext_gcd(a, b);
    const std::int64_t h = std::gcd(a, b);
    const std::int64_t f11 = mod_reduce(x, d_), f21 = mod_reduce(y, d_);
    const std::int64_t f12 = mod_reduce(-(b / h), d_), f22 = mod_reduce(a / h, d_);
    auto mix = [&](std::int64_t& p, std::int64_t& q) {
      const std::int64_t np = (mod_mul(p, f11, d_) + mod_mul(q, f21, d_)) % d_;
      const std::int64_t nq = (mod_mul(p, f12, d_) + mod_mul(q, f22, d_)) % d_;
      p = np;
      q = nq;
    };
    for (std::size_t i = t_; i < live_; ++i) mix(a_(i, c1), a_(i, c2));
    if (opt_.right)
      for (std::size_t i = 0; i < n_; ++i) mix(v_(i, c1), v_(i, c2));
  }

  // col_j += q * col_t, with column t zero below the pivot.
  void pivot_col_add(std::size_t j, std::int64_t q) {
    a_(t_, j) = (a_(t_, j) + mod_mul(q, a_(t_, t_), d_)) % d_;
    if (opt_.right)
      for (std::size_t i = 0; i < n_; ++i)
        if (v_(i, t_) != 0) v_(i, j) = (v_(i, j) + mod_mul(q, v_(i, t_), d_)) % d_;
  }

  void row_swap(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return;
    for (std::size_t j = t_; j < n_; ++j) std::swap(a_(i1, j), a_(i2, j));
    if (opt_.left)
      for (std::size_t j = 0; j < m_; ++j) std::swap(u_(i1, j), u_(i2, j));
    if (opt_.left_inverse)
      for (std::size_t i = 0; i < m_; ++i) std::swap(uinv_(i, i1), uinv_(i, i2));
    if (has_rhs_)
      for (std::size_t j = 0; j < rhs_.cols(); ++j) std::swap(rhs_(i1, j), rhs_(i2, j));
  }

  void col_swap(std::size_t j1, std::size_t j2) {
    if (j1 == j2) return;
    for (std::size_t i = t_; i < live_; ++i) std::swap(a_(i, j1), a_(i, j2));
    if (opt_.right)
      for (std::size_t i = 0; i < n_; ++i) std::swap(v_(i, j1), v_(i, j2));
  }

  IntMatrix a_;
  std::size_t m_, n_, live_;
  std::int64_t d_;
  Options opt_;
  IntMatrix u_, uinv_, v_, rhs_;
  bool has_rhs_ = false;
  std::size_t t_ = 0;
};

}  // namespace detail

inline ModularDiagonal modular_diagonal(const IntMatrix& a, std::int64_t d,
                                        detail::ModularEliminator::Options opt = {},
                                        const IntMatrix* rhs = nullptr) {
  return detail::ModularEliminator(a, d, opt, rhs).run();
}

/// Generators of {x in (Z/d)^n : A x = 0}, as columns. Zero columns dropped.
inline IntMatrix modular_kernel(const IntMatrix& a, std::int64_t d) {
  const auto s = modular_diagonal(a, d, {.right = true});
  const std::size_t n = a.cols();
  std::vector<std::vector<std::int64_t>> cols;
  for (std::size_t j = 0; j < n; ++j) {
    const std::int64_t f = j < s.rank ? d / s.diagonal[j] : 1;
    std::vector<std::int64_t> c(n);
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = detail::mod_mul(f, s.right(i, j), d);
      zero = zero && c[i] == 0;
    }
    if (!zero) cols.push_back(std::move(c));
  }
  IntMatrix k(n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) k(i, j) = cols[j][i];
  return k;
}

/// Some x with A x = b over Z/d, or nullopt.
inline std::optional<std::vector<std::int64_t>> modular_solve(const IntMatrix& a, const std::vector<std::int64_t>& b,
                                                             std::int64_t d) {
  IntMatrix rhs(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
  const auto s = modular_diagonal(a, d, {.right = true}, &rhs);
  std::vector<std::int64_t> z(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const std::int64_t y = s.attached(i, 0);
    if (i < s.rank) {
      const std::int64_t p = s.diagonal[i];
      if (y % p != 0) return std::nullopt;
      // p z = y with p | d: z = (y/p) works since the pivot is exactly p
      z[i] = y / p;
    } else if (y != 0) {
      return std::nullopt;
    }
  }
  std::vector<std::int64_t> x(a.cols(), 0);
  for (std::size_t i = 0; i < a.cols(); ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (z[j] != 0) acc = (acc + detail::mod_mul(s.right(i, j), z[j], d)) % d;
    x[i] = acc;
  }
  return x;
}

}  // namespace cohom
