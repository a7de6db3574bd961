#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cohom/error.hpp"
#include "cohom/group.hpp"
#include "cohom/integer.hpp"
#include "cohom/matrix.hpp"
#include "cohom/smith.hpp"

namespace cohom {

/// Coordinates of a module element in the invariant-factor basis.
using ModuleElement = std::vector<std::int64_t>;
using ElementView = std::span<const std::int64_t>;

/// A finitely generated abelian group ⊕ Z/d_i (d_i = 0 meaning Z) with a
/// G-action given by one integer matrix per group element. Stored in
/// invariant-factor form: no d_i equals 1, d_1 | d_2 | ... , free factors last.
class GModule {
 public:
  const GroupPtr& group() const noexcept { return group_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  const std::vector<std::int64_t>& factors() const noexcept { return factors_; }
  const IntMatrix& action(GroupElement g) const { return action_.at(g); }
  const std::vector<IntMatrix>& actions() const noexcept { return action_; }

  bool is_torsion() const noexcept {
    for (auto d : factors_)
      if (d == 0) return false;
    return true;
  }
  bool is_free() const noexcept {
    for (auto d : factors_)
      if (d != 0) return false;
    return true;
  }
  std::size_t free_rank() const noexcept {
    return static_cast<std::size_t>(std::count(factors_.begin(), factors_.end(), 0));
  }
  bool is_trivial_action() const noexcept { return trivial_; }
  bool is_zero_module() const noexcept { return factors_.empty(); }

  /// lcm of the factors; nullopt when there is a free factor.
  std::optional<std::int64_t> exponent() const {
    std::int64_t e = 1;
    for (auto d : factors_) {
      if (d == 0) return std::nullopt;
      e = lcm64(e, d);
    }
    return e;
  }

  /// Number of elements, when finite and representable.
  std::optional<std::uint64_t> cardinality() const {
    std::uint64_t c = 1;
    for (auto d : factors_) {
      if (d == 0) return std::nullopt;
      if (__builtin_mul_overflow(c, static_cast<std::uint64_t>(d), &c)) return std::nullopt;
    }
    return c;
  }

  ModuleElement zero() const { return ModuleElement(rank(), 0); }
  ElementView zero_view() const noexcept { return {zero_.data(), zero_.size()}; }

  void reduce(std::span<std::int64_t> m) const {
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = reduce_mod(m[i], factors_[i]);
  }
  ModuleElement reduced(ModuleElement m) const {
    check_size(m.size());
    reduce(m);
    return m;
  }
  bool is_zero(ElementView m) const noexcept {
    for (auto v : m)
      if (v != 0) return false;
    return true;
  }

  /// out = g·in (reduced). `out` must not alias `in`.
  void act_into(GroupElement g, ElementView in, std::span<std::int64_t> out) const {
    if (trivial_) {
      std::copy(in.begin(), in.end(), out.begin());
      return;
    }
    const IntMatrix& r = action_[g];
    for (std::size_t i = 0; i < rank(); ++i) {
      const std::int64_t* row = r.row(i);
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < rank(); ++j)
        if (row[j] != 0 && in[j] != 0) acc = cohom::add(acc, cohom::mul(row[j], in[j]));
      out[i] = reduce_mod(acc, factors_[i]);
    }
  }

  ModuleElement act(GroupElement g, ElementView m) const {
    check_size(m.size());
    if (g >= group_->order()) throw Error(ErrorKind::IndexOutOfRange, "group element out of range", {g});
    ModuleElement out(rank());
    act_into(g, m, out);
    return out;
  }

  /// acc += coeff * m, left unreduced.
  void accumulate(std::span<std::int64_t> acc, ElementView m, std::int64_t coeff) const {
    for (std::size_t i = 0; i < acc.size(); ++i)
      if (m[i] != 0) acc[i] = cohom::add(acc[i], cohom::mul(coeff, m[i]));
  }

  ModuleElement add(ElementView a, ElementView b) const {
    check_size(a.size());
    check_size(b.size());
    ModuleElement out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = reduce_mod(cohom::add(a[i], b[i]), factors_[i]);
    return out;
  }
  ModuleElement sub(ElementView a, ElementView b) const {
    check_size(a.size());
    check_size(b.size());
    ModuleElement out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = reduce_mod(cohom::sub(a[i], b[i]), factors_[i]);
    return out;
  }
  ModuleElement neg(ElementView a) const {
    check_size(a.size());
    ModuleElement out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = reduce_mod(cohom::neg(a[i]), factors_[i]);
    return out;
  }
  ModuleElement scale(std::int64_t n, ElementView a) const {
    check_size(a.size());
    ModuleElement out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = reduce_mod(cohom::mul(n, a[i]), factors_[i]);
    return out;
  }

  /// Additive order; nullopt for elements of infinite order.
  std::optional<std::int64_t> order_of(ElementView m) const {
    check_size(m.size());
    std::int64_t ord = 1;
    for (std::size_t i = 0; i < rank(); ++i) {
      const std::int64_t v = reduce_mod(m[i], factors_[i]);
      if (v == 0) continue;
      if (factors_[i] == 0) return std::nullopt;
      ord = lcm64(ord, factors_[i] / std::gcd(factors_[i], v));
    }
    return ord;
  }

  /// Mixed-radix index of an element of a finite module (coordinate 0 most
  /// significant).
  std::uint64_t index_of(ElementView m) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i)
      idx = idx * static_cast<std::uint64_t>(factors_[i]) + static_cast<std::uint64_t>(m[i]);
    return idx;
  }
  void element_at(std::uint64_t idx, std::span<std::int64_t> out) const {
    for (std::size_t i = rank(); i-- > 0;) {
      const auto d = static_cast<std::uint64_t>(factors_[i]);
      out[i] = static_cast<std::int64_t>(idx % d);
      idx /= d;
    }
  }
  ModuleElement element_at(std::uint64_t idx) const {
    ModuleElement out(rank());
    element_at(idx, out);
    return out;
  }

  bool same_as(const GModule& o) const {
    if (this == &o) return true;
    if (group_ != o.group_ && group_->table() != o.group_->table()) return false;
    return factors_ == o.factors_ && action_ == o.action_;
  }

  friend std::shared_ptr<const GModule> make_module_unchecked(GroupPtr group, std::vector<std::int64_t> factors,
                                                               std::vector<IntMatrix> action);

 private:
  GModule() = default;
  void check_size(std::size_t n) const {
    if (n != rank())
      throw Error(ErrorKind::ModuleMismatch,
                  "element has " + std::to_string(n) + " coordinates, module rank is " + std::to_string(rank()));
  }

  GroupPtr group_;
  std::vector<std::int64_t> factors_;
  std::vector<IntMatrix> action_;
  ModuleElement zero_;
  bool trivial_ = true;
};

using ModulePtr = std::shared_ptr<const GModule>;

inline bool same_module(const ModulePtr& a, const ModulePtr& b) { return a == b || a->same_as(*b); }

/// Trusted constructor: factors must be canonical and the action valid.
inline ModulePtr make_module_unchecked(GroupPtr group, std::vector<std::int64_t> factors,
                                       std::vector<IntMatrix> action) {
  auto m = std::shared_ptr<GModule>(new GModule());
  const std::size_t k = factors.size();
  if (action.empty()) action.assign(group->order(), IntMatrix::identity(k));
  m->group_ = std::move(group);
  m->factors_ = std::move(factors);
  m->action_ = std::move(action);
  m->zero_.assign(k, 0);
  const IntMatrix id = IntMatrix::identity(k);
  m->trivial_ = true;
  for (const auto& r : m->action_)
    if (r != id) m->trivial_ = false;
  return m;
}

/// A homomorphism of the underlying abelian groups, given by a matrix in the
/// invariant-factor coordinates of source and target.
struct ModuleMap {
  ModulePtr source;
  ModulePtr target;
  IntMatrix matrix;  // target.rank() x source.rank()
  bool equivariant = false;

  ModuleElement apply(ElementView m) const {
    ModuleElement out(target->rank(), 0);
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < matrix.cols(); ++j)
        if (matrix(i, j) != 0 && m[j] != 0) acc = add(acc, mul(matrix(i, j), m[j]));
      out[i] = reduce_mod(acc, target->factors()[i]);
    }
    return out;
  }
};

/// Checks f(g·e_j) = g·f(e_j) on every generator.
inline bool is_equivariant(const ModuleMap& f) {
  const auto& g = *f.source->group();
  for (GroupElement x = 0; x < g.order(); ++x)
    for (std::size_t j = 0; j < f.source->rank(); ++j) {
      ModuleElement e = f.source->zero();
      e[j] = 1;
      if (f.apply(f.source->act(x, e)) != f.target->act(x, f.apply(e))) return false;
    }
  return true;
}

namespace detail {

inline bool is_canonical(const std::vector<std::int64_t>& factors) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] == 1 || factors[i] < 0) return false;
    if (i + 1 < factors.size()) {
      const auto a = factors[i], b = factors[i + 1];
      if (a == 0 && b != 0) return false;
      if (a != 0 && b != 0 && b % a != 0) return false;
    }
  }
  return true;
}

inline IntMatrix reduce_rows(IntMatrix m, const std::vector<std::int64_t>& row_moduli) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = reduce_mod(m(i, j), row_moduli[i]);
  return m;
}

/// Column j of a*b, computed from the nonzeros of b's column.
inline void product_column(const IntMatrix& a, const IntMatrix& b, std::size_t j, std::vector<std::int64_t>& out) {
  std::fill(out.begin(), out.end(), 0);
  for (std::size_t l = 0; l < b.rows(); ++l) {
    const std::int64_t v = b(l, j);
    if (v == 0) continue;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (a(i, l) != 0) out[i] = add(out[i], mul(a(i, l), v));
  }
}

/// Validates identity, relation-preservation and homomorphism conditions of
/// an action relative to the given factors (which need not be canonical).
inline void validate_action(const FiniteGroup& g, const std::vector<std::int64_t>& d,
                            const std::vector<IntMatrix>& rho) {
  const std::size_t k = d.size();
  auto congruent = [&](std::int64_t x, std::int64_t y, std::size_t row) {
    return reduce_mod(sub(x, y), d[row]) == 0;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (!congruent(rho[0](i, j), i == j ? 1 : 0, i))
        throw Error(ErrorKind::BadIdentityAction, "identity does not act as the identity", {i, j});
  for (GroupElement x = 0; x < g.order(); ++x)
    for (std::size_t j = 0; j < k; ++j) {
      if (d[j] == 0) continue;
      for (std::size_t i = 0; i < k; ++i)
        if (reduce_mod(mul(d[j], rho[x](i, j)), d[i]) != 0)
          throw Error(ErrorKind::ActionBreaksRelations,
                      "action of " + g.label(x) + " does not preserve relation on coordinate " + std::to_string(j),
                      {x, j});
    }
  std::vector<std::int64_t> col(k);
  for (GroupElement x = 0; x < g.order(); ++x)
    for (GroupElement y = 0; y < g.order(); ++y) {
      const IntMatrix& target = rho[g.mul(x, y)];
      for (std::size_t j = 0; j < k; ++j) {
        product_column(rho[x], rho[y], j, col);
        for (std::size_t i = 0; i < k; ++i)
          if (!congruent(col[i], target(i, j), i))
            throw Error(ErrorKind::ActionNotHomomorphic,
                        "rho(" + g.label(x) + ")rho(" + g.label(y) + ") != rho(" + g.label(g.mul(x, y)) + ")",
                        {x, y});
      }
    }
}

}  // namespace detail

/// A module produced from generators and relations, with the coordinate
/// changes between generator coordinates and invariant-factor coordinates.
struct Presentation {
  ModulePtr module;
  IntMatrix to_canonical;    // module.rank() x generators
  IntMatrix from_canonical;  // generators x module.rank()

  ModuleElement canonical(ElementView gens) const {
    ModuleElement out(module->rank(), 0);
    for (std::size_t i = 0; i < to_canonical.rows(); ++i) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < to_canonical.cols(); ++j)
        if (to_canonical(i, j) != 0 && gens[j] != 0) acc = add(acc, mul(to_canonical(i, j), gens[j]));
      out[i] = acc;
    }
    module->reduce(out);
    return out;
  }
};

/// Z^k / (column span of `relations`) with the action given on generators.
/// Renormalizes to invariant-factor form via Smith normal form.
inline Presentation module_from_presentation(GroupPtr group, const IntMatrix& relations,
                                             const std::vector<IntMatrix>& action) {
  const std::size_t k = relations.rows();
  if (action.size() != group->order())
    throw Error(ErrorKind::InvalidArgument, "need one action matrix per group element");
  for (const auto& r : action)
    if (r.rows() != k || r.cols() != k) throw Error(ErrorKind::InvalidArgument, "action matrix has wrong shape");

  auto snf = smith_int(relations, {.left = true, .left_inverse = true});
  std::vector<std::int64_t> s(k, 0);
  for (std::size_t i = 0; i < snf.rank; ++i) s[i] = snf.diagonal(i, i);

  std::vector<IntMatrix> conj;
  conj.reserve(action.size());
  for (const auto& r : action) conj.push_back(detail::reduce_rows(snf.left * r * snf.left_inverse, s));
  detail::validate_action(*group, s, conj);

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < k; ++i)
    if (s[i] != 1) kept.push_back(i);
  std::vector<std::int64_t> factors;
  for (auto i : kept) factors.push_back(s[i]);

  std::vector<IntMatrix> restricted;
  restricted.reserve(conj.size());
  for (const auto& r : conj) {
    IntMatrix m(kept.size(), kept.size());
    for (std::size_t a = 0; a < kept.size(); ++a)
      for (std::size_t b = 0; b < kept.size(); ++b) m(a, b) = r(kept[a], kept[b]);
    restricted.push_back(std::move(m));
  }
  Presentation p;
  p.to_canonical = IntMatrix(kept.size(), k);
  p.from_canonical = IntMatrix(k, kept.size());
  for (std::size_t a = 0; a < kept.size(); ++a) {
    for (std::size_t j = 0; j < k; ++j) p.to_canonical(a, j) = reduce_mod(snf.left(kept[a], j), factors[a]);
    for (std::size_t j = 0; j < k; ++j) p.from_canonical(j, a) = snf.left_inverse(j, kept[a]);
  }
  p.module = make_module_unchecked(std::move(group), std::move(factors), std::move(restricted));
  return p;
}

/// Validated module from factors and per-element action matrices (empty
/// action means trivial). Non-canonical factor lists are renormalized.
inline Presentation make_module_presented(GroupPtr group, std::vector<std::int64_t> factors,
                                          std::vector<IntMatrix> action = {}) {
  const std::size_t k = factors.size();
  for (auto d : factors)
    if (d < 0) throw Error(ErrorKind::InvalidArgument, "invariant factors must be non-negative");
  if (action.empty()) action.assign(group->order(), IntMatrix::identity(k));
  if (action.size() != group->order())
    throw Error(ErrorKind::InvalidArgument, "need one action matrix per group element");
  for (auto& r : action) {
    if (r.rows() != k || r.cols() != k) throw Error(ErrorKind::InvalidArgument, "action matrix has wrong shape");
    r = detail::reduce_rows(std::move(r), factors);
  }
  detail::validate_action(*group, factors, action);
  if (detail::is_canonical(factors)) {
    Presentation p;
    p.to_canonical = IntMatrix::identity(k);
    p.from_canonical = IntMatrix::identity(k);
    p.module = make_module_unchecked(std::move(group), std::move(factors), std::move(action));
    return p;
  }
  IntMatrix rel(k, k);
  for (std::size_t i = 0; i < k; ++i) rel(i, i) = factors[i];
  return module_from_presentation(std::move(group), rel, action);
}

inline ModulePtr make_module(GroupPtr group, std::vector<std::int64_t> factors, std::vector<IntMatrix> action = {}) {
  return make_module_presented(std::move(group), std::move(factors), std::move(action)).module;
}

inline ModulePtr trivial_module(GroupPtr group, std::vector<std::int64_t> factors) {
  return make_module(std::move(group), std::move(factors));
}

/// M viewed as a module over another group through a homomorphism `pi`
/// into M's group.
inline ModulePtr pullback_module(const ModulePtr& m, GroupPtr over, const std::vector<GroupElement>& pi) {
  std::vector<IntMatrix> action;
  action.reserve(over->order());
  for (std::size_t x = 0; x < over->order(); ++x) action.push_back(m->action(pi[x]));
  return make_module_unchecked(std::move(over), m->factors(), std::move(action));
}

/// Same abelian group, trivial action, over another group.
inline ModulePtr with_trivial_action(const ModulePtr& m, GroupPtr over) {
  return make_module_unchecked(std::move(over), m->factors(), {});
}

struct SubmoduleResult {
  ModulePtr module;
  ModuleMap map;  // inclusion for invariants, projection for coinvariants
};

/// M^G as a trivial module, with its inclusion into M.
inline SubmoduleResult invariants(const ModulePtr& m) {
  const auto& g = *m->group();
  const auto& d = m->factors();
  const std::size_t k = m->rank();
  const std::size_t blocks = g.order() - 1;
  std::vector<std::size_t> torsion_rows;
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t i = 0; i < k; ++i)
      if (d[i] != 0) torsion_rows.push_back(b * k + i);
  IntMatrix big(blocks * k, k + torsion_rows.size());
  for (std::size_t b = 0; b < blocks; ++b) {
    const IntMatrix& r = m->action(static_cast<GroupElement>(b + 1));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) big(b * k + i, j) = r(i, j) - (i == j ? 1 : 0);
  }
  for (std::size_t c = 0; c < torsion_rows.size(); ++c)
    big(torsion_rows[c], k + c) = -d[torsion_rows[c] % k];

  IntMatrix w;
  {
    auto ker = with_bigint_fallback([&](auto tag) {
      using T = decltype(tag);
      return to_int(kernel_basis<T>(big.cast<T>()).template cast<BigInt>());
    });
    w = IntMatrix(k, ker.cols());
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < ker.cols(); ++j) w(i, j) = ker(i, j);
  }
  // Relations: d_i e_i expressed in the basis w.
  std::vector<std::size_t> tors;
  for (std::size_t i = 0; i < k; ++i)
    if (d[i] != 0) tors.push_back(i);
  IntMatrix rhs(k, tors.size());
  for (std::size_t c = 0; c < tors.size(); ++c) rhs(tors[c], c) = d[tors[c]];
  auto sols = with_bigint_fallback([&](auto tag) {
    using T = decltype(tag);
    auto s = solve_integer<T>(w.cast<T>(), rhs.cast<T>());
    std::vector<std::vector<std::int64_t>> out;
    for (auto& col : s) {
      if (!col) throw Error(ErrorKind::InvalidArgument, "internal: relation outside invariant lattice");
      std::vector<std::int64_t> v;
      for (auto& x : *col) v.push_back(to_int64(BigInt(x)));
      out.push_back(std::move(v));
    }
    return out;
  });
  IntMatrix rel(w.cols(), tors.size());
  for (std::size_t c = 0; c < tors.size(); ++c)
    for (std::size_t i = 0; i < w.cols(); ++i) rel(i, c) = sols[c][i];
  auto p = module_from_presentation(m->group(), rel, std::vector<IntMatrix>(g.order(), IntMatrix::identity(w.cols())));
  ModuleMap inc{p.module, m, detail::reduce_rows(w * p.from_canonical, d), true};
  return {p.module, inc};
}

/// M_G = M / <g·m - m> as a trivial module, with the projection from M.
inline SubmoduleResult coinvariants(const ModulePtr& m) {
  const auto& g = *m->group();
  const auto& d = m->factors();
  const std::size_t k = m->rank();
  IntMatrix rel(k, k + (g.order() - 1) * k);
  for (std::size_t i = 0; i < k; ++i) rel(i, i) = d[i];
  for (std::size_t b = 1; b < g.order(); ++b) {
    const IntMatrix& r = m->action(static_cast<GroupElement>(b));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) rel(i, k + (b - 1) * k + j) = r(i, j) - (i == j ? 1 : 0);
  }
  auto p = module_from_presentation(m->group(), rel, std::vector<IntMatrix>(g.order(), IntMatrix::identity(k)));
  ModuleMap proj{m, p.module, p.to_canonical, true};
  return {p.module, proj};
}

/// M_T ↪ M ↠ M/M_T ≅ Z^r, plus a basis-aligned set-theoretic section of the
/// projection (identity on free coordinates, not G-equivariant in general).
struct TorsionSplit {
  ModulePtr torsion;
  ModulePtr quotient;
  ModuleMap inclusion;
  ModuleMap projection;
  ModuleMap section;
};

inline TorsionSplit torsion_submodule(const ModulePtr& m) {
  const auto& d = m->factors();
  std::vector<std::size_t> tors, free;
  for (std::size_t i = 0; i < d.size(); ++i) (d[i] != 0 ? tors : free).push_back(i);
  auto restrict = [&](const std::vector<std::size_t>& idx) {
    std::vector<IntMatrix> act;
    for (const auto& r : m->actions()) {
      IntMatrix s(idx.size(), idx.size());
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) s(a, b) = r(idx[a], idx[b]);
      act.push_back(std::move(s));
    }
    return act;
  };
  std::vector<std::int64_t> td;
  for (auto i : tors) td.push_back(d[i]);
  TorsionSplit out;
  out.torsion = make_module_unchecked(m->group(), td, restrict(tors));
  out.quotient = make_module_unchecked(m->group(), std::vector<std::int64_t>(free.size(), 0), restrict(free));
  IntMatrix j(d.size(), tors.size()), p(free.size(), d.size()), s(d.size(), free.size());
  for (std::size_t a = 0; a < tors.size(); ++a) j(tors[a], a) = 1;
  for (std::size_t a = 0; a < free.size(); ++a) {
    p(a, free[a]) = 1;
    s(free[a], a) = 1;
  }
  out.inclusion = {out.torsion, m, j, true};
  out.projection = {m, out.quotient, p, true};
  out.section = {out.quotient, m, s, false};
  return out;
}

/// Hom_Ab(A, M) for torsion A, with G acting by (g·f)(a) = g·f(g⁻¹·a).
/// Homomorphisms are also available as k_M x k_A matrices F with f(a) = F a.
struct HomModule {
  ModulePtr source;
  ModulePtr target;
  Presentation presentation;
  std::vector<std::int64_t> generator_order;  // indexed j * k_A + i

  const ModulePtr& module() const noexcept { return presentation.module; }

  IntMatrix to_matrix(ElementView f) const {
    const std::size_t ka = source->rank(), km = target->rank();
    IntMatrix F(km, ka);
    const auto& from = presentation.from_canonical;
    for (std::size_t j = 0; j < km; ++j)
      for (std::size_t i = 0; i < ka; ++i) {
        const std::size_t gen = j * ka + i;
        const std::int64_t ord = generator_order[gen];
        if (ord <= 1) continue;
        std::int64_t y = 0;
        for (std::size_t c = 0; c < from.cols(); ++c)
          if (from(gen, c) != 0 && f[c] != 0) y = add(y, mul(from(gen, c), f[c]));
        y = reduce_mod(y, ord);
        F(j, i) = mul(target->factors()[j] / ord, y);
      }
    return F;
  }

  ModuleElement from_matrix(const IntMatrix& F) const {
    const std::size_t ka = source->rank(), km = target->rank();
    ModuleElement y(ka * km, 0);
    for (std::size_t j = 0; j < km; ++j)
      for (std::size_t i = 0; i < ka; ++i) {
        const std::size_t gen = j * ka + i;
        const std::int64_t dj = target->factors()[j];
        const std::int64_t v = reduce_mod(F(j, i), dj);
        if (v == 0) continue;
        const std::int64_t ord = generator_order[gen];
        const std::int64_t step = ord <= 1 ? 0 : dj / ord;
        if (ord <= 1 || v % step != 0)
          throw Error(ErrorKind::InvalidArgument, "matrix does not define a homomorphism from the source");
        y[gen] = v / step;
      }
    return presentation.canonical(y);
  }

  /// f(a)
  ModuleElement evaluate(ElementView f, ElementView a) const {
    const IntMatrix F = to_matrix(f);
    ModuleElement out(target->rank(), 0);
    for (std::size_t j = 0; j < F.rows(); ++j)
      for (std::size_t i = 0; i < F.cols(); ++i)
        if (F(j, i) != 0 && a[i] != 0) out[j] = add(out[j], mul(F(j, i), a[i]));
    target->reduce(out);
    return out;
  }
};

inline HomModule hom_module(const ModulePtr& a, const ModulePtr& m) {
  if (!a->is_torsion()) throw Error(ErrorKind::SourceNotTorsion, "Hom source must be a torsion module");
  if (a->group() != m->group() && a->group()->table() != m->group()->table())
    throw Error(ErrorKind::GroupMismatch, "Hom of modules over different groups");
  const auto& g = *a->group();
  const std::size_t ka = a->rank(), km = m->rank(), k = ka * km;
  const auto& ad = a->factors();
  const auto& md = m->factors();
  std::vector<std::int64_t> ord(k, 1);
  for (std::size_t j = 0; j < km; ++j)
    for (std::size_t i = 0; i < ka; ++i) ord[j * ka + i] = md[j] == 0 ? 1 : std::gcd(ad[i], md[j]);

  std::vector<IntMatrix> action;
  action.reserve(g.order());
  for (GroupElement x = 0; x < g.order(); ++x) {
    const IntMatrix& rm = m->action(x);
    const IntMatrix& ra = a->action(g.inv(x));
    IntMatrix r(k, k);
    for (std::size_t j = 0; j < km; ++j)
      for (std::size_t i = 0; i < ka; ++i) {
        const std::size_t gen = j * ka + i;
        if (ord[gen] <= 1) continue;
        const std::int64_t step = md[j] / ord[gen];
        // F' = rho_M(x) * (step E_ji) * rho_A(x^-1)
        for (std::size_t jp = 0; jp < km; ++jp) {
          if (rm(jp, j) == 0 || md[jp] == 0) continue;
          for (std::size_t ip = 0; ip < ka; ++ip) {
            if (ra(i, ip) == 0) continue;
            const std::size_t gp = jp * ka + ip;
            const std::int64_t v = reduce_mod(mul(mul(rm(jp, j), step), ra(i, ip)), md[jp]);
            if (v == 0) continue;
            const std::int64_t step_p = md[jp] / ord[gp];
            if (ord[gp] <= 1 || v % step_p != 0)
              throw Error(ErrorKind::InvalidArgument, "internal: Hom action leaves torsion subgroup");
            r(gp, gen) = v / step_p;
          }
        }
      }
    action.push_back(std::move(r));
  }
  IntMatrix rel(k, k);
  for (std::size_t c = 0; c < k; ++c) rel(c, c) = ord[c];
  HomModule h;
  h.source = a;
  h.target = m;
  h.generator_order = ord;
  h.presentation = module_from_presentation(a->group(), rel, action);
  return h;
}

/// M ⊗ N with the diagonal action g·(m⊗n) = (g·m)⊗(g·n).
struct TensorModule {
  ModulePtr left;
  ModulePtr right;
  Presentation presentation;

  const ModulePtr& module() const noexcept { return presentation.module; }

  ModuleElement tensor(ElementView m, ElementView n) const {
    const std::size_t l = right->rank();
    ModuleElement y(left->rank() * l, 0);
    for (std::size_t i = 0; i < left->rank(); ++i)
      for (std::size_t j = 0; j < l; ++j)
        if (m[i] != 0 && n[j] != 0) y[i * l + j] = mul(m[i], n[j]);
    return presentation.canonical(y);
  }
};

inline TensorModule tensor_module(const ModulePtr& m, const ModulePtr& n) {
  if (m->group() != n->group() && m->group()->table() != n->group()->table())
    throw Error(ErrorKind::GroupMismatch, "tensor of modules over different groups");
  const auto& g = *m->group();
  const std::size_t km = m->rank(), kn = n->rank(), k = km * kn;
  IntMatrix rel(k, k);
  for (std::size_t i = 0; i < km; ++i)
    for (std::size_t j = 0; j < kn; ++j) rel(i * kn + j, i * kn + j) = std::gcd(m->factors()[i], n->factors()[j]);
  std::vector<IntMatrix> action;
  for (GroupElement x = 0; x < g.order(); ++x) {
    const IntMatrix& a = m->action(x);
    const IntMatrix& b = n->action(x);
    IntMatrix r(k, k);
    for (std::size_t i = 0; i < km; ++i)
      for (std::size_t ip = 0; ip < km; ++ip) {
        if (a(i, ip) == 0) continue;
        for (std::size_t j = 0; j < kn; ++j)
          for (std::size_t jp = 0; jp < kn; ++jp)
            if (b(j, jp) != 0) r(i * kn + j, ip * kn + jp) = mul(a(i, ip), b(j, jp));
      }
    action.push_back(std::move(r));
  }
  TensorModule t;
  t.left = m;
  t.right = n;
  t.presentation = module_from_presentation(m->group(), rel, action);
  return t;
}

}  // namespace cohom
