#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cohom/error.hpp"
#include "cohom/integer.hpp"
#include "cohom/matrix.hpp"

namespace cohom {

struct SmithOptions {
  bool left = false;          // track U
  bool right = false;         // track V
  bool left_inverse = false;  // track U^{-1}
  bool diagonal_only = false;  // skip the divisibility chain; cuts transform growth
  bool sparse_pivot = false;   // among smallest pivots, pick the least fill-in
};

/// D = U * A * V with D diagonal, d_1 | d_2 | ... | d_rank, d_i > 0 (the
/// chain is dropped under diagonal_only).
template <class T>
struct SmithForm {
  Matrix<T> diagonal;
  Matrix<T> left;
  Matrix<T> right;
  Matrix<T> left_inverse;
  Matrix<T> attached;  // U * rhs, when a right-hand side was attached
  std::size_t rank = 0;

  std::vector<T> invariants() const {
    std::vector<T> out;
    out.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) out.push_back(diagonal(i, i));
    return out;
  }
};

namespace detail {

template <class T>
class SmithEliminator {
 public:
  SmithEliminator(Matrix<T> a, SmithOptions opt, const Matrix<T>* rhs)
      : a_(std::move(a)), m_(a_.rows()), n_(a_.cols()), opt_(opt) {
    if (opt_.left) u_ = Matrix<T>::identity(m_);
    if (opt_.left_inverse) uinv_ = Matrix<T>::identity(m_);
    if (opt_.right) v_ = Matrix<T>::identity(n_);
    if (rhs) {
      rhs_ = *rhs;
      has_rhs_ = true;
    }
  }

  SmithForm<T> run() {
    std::size_t t = 0;
    const std::size_t limit = std::min(m_, n_);
    for (; t < limit; ++t) {
      t_ = t;
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(pi, pj)) break;
      row_swap(t, pi);
      col_swap(t, pj);
      reduce_pivot();
      if (a_(t, t) < 0) row_neg(t);
    }
    SmithForm<T> out;
    out.rank = t;
    out.diagonal = std::move(a_);
    out.left = std::move(u_);
    out.right = std::move(v_);
    out.left_inverse = std::move(uinv_);
    out.attached = std::move(rhs_);
    return out;
  }

 private:
  bool find_pivot(std::size_t& pi, std::size_t& pj) const {
    if (opt_.sparse_pivot) return find_sparse_pivot(pi, pj);
    bool found = false;
    T best(0);
    for (std::size_t i = t_; i < m_; ++i) {
      const T* r = a_.row(i);
      for (std::size_t j = t_; j < n_; ++j) {
        if (r[j] == 0) continue;
        T v = abs_value(r[j]);
        if (!found || v < best) {
          best = v;
          pi = i;
          pj = j;
          found = true;
          if (best == 1) return true;
        }
      }
    }
    return found;
  }

  // Smallest |a_ij|, ties broken by (row count - 1) * (column count - 1).
  bool find_sparse_pivot(std::size_t& pi, std::size_t& pj) const {
    std::vector<std::size_t> rc(m_, 0), cc(n_, 0);
    T best(0);
    for (std::size_t i = t_; i < m_; ++i) {
      const T* r = a_.row(i);
      for (std::size_t j = t_; j < n_; ++j) {
        if (r[j] == 0) continue;
        ++rc[i];
        ++cc[j];
        T v = abs_value(r[j]);
        if (best == 0 || v < best) best = v;
      }
    }
    if (best == 0) return false;
    std::size_t cost = static_cast<std::size_t>(-1);
    for (std::size_t i = t_; i < m_; ++i) {
      if (rc[i] == 0) continue;
      const T* r = a_.row(i);
      for (std::size_t j = t_; j < n_; ++j) {
        if (r[j] == 0 || abs_value(r[j]) != best) continue;
        const std::size_t c = (rc[i] - 1) * (cc[j] - 1);
        if (c < cost) {
          cost = c;
          pi = i;
          pj = j;
          if (c == 0) return true;
        }
      }
    }
    return true;
  }

  // Quotient rounded to nearest, so remainders satisfy |r| <= |b|/2.
  static T nearest_quotient(const T& a, const T& b) {
    T q = a / b;
    const T r = a - q * b;
    if (abs_value(r) * 2 > abs_value(b)) q = ((r < 0) == (b < 0)) ? T(q + 1) : T(q - 1);
    return q;
  }

  void reduce_pivot() {
    const std::size_t t = t_;
    for (;;) {
      // Clear column t, then move the smallest remainder into the pivot.
      std::size_t best = t;
      for (std::size_t i = t + 1; i < m_; ++i) {
        if (a_(i, t) == 0) continue;
        T q = nearest_quotient(a_(i, t), a_(t, t));
        if (q != 0) row_add(i, t, neg(q));
        if (a_(i, t) != 0 && (best == t || abs_value(a_(i, t)) < abs_value(a_(best, t)))) best = i;
      }
      if (best != t) {
        row_swap(t, best);
        continue;
      }
      for (std::size_t j = t + 1; j < n_; ++j) {
        if (a_(t, j) == 0) continue;
        T q = nearest_quotient(a_(t, j), a_(t, t));
        if (q != 0) pivot_col_add(j, neg(q));
        if (a_(t, j) != 0 && (best == t || abs_value(a_(t, j)) < abs_value(a_(t, best)))) best = j;
      }
      if (best != t) {
        col_swap(t, best);
        continue;
      }
      bool again = false;
      if (!opt_.diagonal_only && abs_value(a_(t, t)) != 1) {
        for (std::size_t i = t + 1; i < m_ && !again; ++i) {
          const T* r = a_.row(i);
          for (std::size_t j = t + 1; j < n_; ++j) {
            if (r[j] != 0 && r[j] % a_(t, t) != 0) {
              row_add(t, i, T(1));
              again = true;
              break;
            }
          }
        }
      }
      if (!again) return;
    }
  }

  // row_dst += q * row_src
  void row_add(std::size_t dst, std::size_t src, const T& q) {
    T* d = a_.row(dst);
    const T* s = a_.row(src);
    for (std::size_t j = t_; j < n_; ++j)
      if (s[j] != 0) d[j] = add(d[j], mul(q, s[j]));
    if (opt_.left) {
      T* ud = u_.row(dst);
      const T* us = u_.row(src);
      for (std::size_t j = 0; j < m_; ++j)
        if (us[j] != 0) ud[j] = add(ud[j], mul(q, us[j]));
    }
    if (opt_.left_inverse) {
      for (std::size_t i = 0; i < m_; ++i)
        if (uinv_(i, dst) != 0) uinv_(i, src) = sub(uinv_(i, src), mul(q, uinv_(i, dst)));
    }
    if (has_rhs_) {
      T* rd = rhs_.row(dst);
      const T* rs = rhs_.row(src);
      for (std::size_t j = 0; j < rhs_.cols(); ++j)
        if (rs[j] != 0) rd[j] = add(rd[j], mul(q, rs[j]));
    }
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

  void row_neg(std::size_t i) {
    for (std::size_t j = t_; j < n_; ++j) a_(i, j) = neg(a_(i, j));
    if (opt_.left)
      for (std::size_t j = 0; j < m_; ++j) u_(i, j) = neg(u_(i, j));
    if (opt_.left_inverse)
      for (std::size_t r = 0; r < m_; ++r) uinv_(r, i) = neg(uinv_(r, i));
    if (has_rhs_)
      for (std::size_t j = 0; j < rhs_.cols(); ++j) rhs_(i, j) = neg(rhs_(i, j));
  }

  // col_dst += q * col_src
  void col_add(std::size_t dst, std::size_t src, const T& q) {
    for (std::size_t i = t_; i < m_; ++i)
      if (a_(i, src) != 0) a_(i, dst) = add(a_(i, dst), mul(q, a_(i, src)));
    if (opt_.right)
      for (std::size_t i = 0; i < n_; ++i)
        if (v_(i, src) != 0) v_(i, dst) = add(v_(i, dst), mul(q, v_(i, src)));
  }

  // col_j += q * col_t, when column t is zero below the pivot.
  void pivot_col_add(std::size_t j, const T& q) {
    a_(t_, j) = add(a_(t_, j), mul(q, a_(t_, t_)));
    if (opt_.right)
      for (std::size_t i = 0; i < n_; ++i)
        if (v_(i, t_) != 0) v_(i, j) = add(v_(i, j), mul(q, v_(i, t_)));
  }

  void col_swap(std::size_t j1, std::size_t j2) {
    if (j1 == j2) return;
    for (std::size_t i = t_; i < m_; ++i) std::swap(a_(i, j1), a_(i, j2));
    if (opt_.right)
      for (std::size_t i = 0; i < n_; ++i) std::swap(v_(i, j1), v_(i, j2));
  }

  Matrix<T> a_;
  std::size_t m_, n_;
  SmithOptions opt_;
  Matrix<T> u_, uinv_, v_, rhs_;
  bool has_rhs_ = false;
  std::size_t t_ = 0;
};

}  // namespace detail

template <class T>
SmithForm<T> smith_normal_form(Matrix<T> a, SmithOptions opt = {}, const Matrix<T>* rhs = nullptr) {
  return detail::SmithEliminator<T>(std::move(a), opt, rhs).run();
}

/// Runs `f(std::int64_t{})`, and on IntegerOverflow reruns it as `f(BigInt{})`.
template <class F>
auto with_bigint_fallback(F&& f) {
  try {
    return f(std::int64_t{});
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::IntegerOverflow) throw;
  }
  return f(BigInt{});
}

/// Smith form of an int64 matrix, computed in BigInt when int64 overflows.
/// The transforms must fit in int64 on return.
inline SmithForm<std::int64_t> smith_int(const IntMatrix& a, SmithOptions opt = {}) {
  return with_bigint_fallback([&](auto tag) {
    using T = decltype(tag);
    if constexpr (std::is_same_v<T, std::int64_t>) {
      return smith_normal_form<std::int64_t>(a, opt);
    } else {
      auto big = smith_normal_form<BigInt>(to_big(a), opt);
      SmithForm<std::int64_t> out;
      out.rank = big.rank;
      out.diagonal = to_int(big.diagonal);
      out.left = to_int(big.left);
      out.right = to_int(big.right);
      out.left_inverse = to_int(big.left_inverse);
      return out;
    }
  });
}

/// Basis of the integer kernel {x : A x = 0}, as columns.
template <class T>
Matrix<T> kernel_basis(const Matrix<T>& a) {
  auto s = smith_normal_form<T>(a, {.right = true});
  const std::size_t n = a.cols();
  Matrix<T> k(n, n - s.rank);
  for (std::size_t j = s.rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) k(i, j - s.rank) = s.right(i, j);
  return k;
}

/// Solves A X = B column by column over Z. Columns without an integer
/// solution come back as nullopt.
template <class T>
std::vector<std::optional<std::vector<T>>> solve_integer(const Matrix<T>& a, const Matrix<T>& b) {
  auto s = smith_normal_form<T>(a, {.right = true}, &b);
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::optional<std::vector<T>>> out;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    std::vector<T> z(n, T(0));
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      const T& y = s.attached(i, c);
      if (i < s.rank) {
        if (y % s.diagonal(i, i) != 0) ok = false;
        else z[i] = y / s.diagonal(i, i);
      } else if (y != 0) {
        ok = false;
      }
    }
    if (!ok) {
      out.emplace_back(std::nullopt);
      continue;
    }
    out.emplace_back(s.right * z);
  }
  return out;
}

}  // namespace cohom
