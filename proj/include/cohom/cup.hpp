#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cohom/cochain.hpp"
#include "cohom/error.hpp"
#include "cohom/module.hpp"

namespace cohom {

/// An equivariant bilinear map left ⊗ right → target.
class Pairing {
 public:
  using Fn = std::function<void(ElementView, ElementView, std::span<std::int64_t>)>;

  Pairing(ModulePtr left, ModulePtr right, ModulePtr target, Fn fn, std::string kind)
      : left_(std::move(left)), right_(std::move(right)), target_(std::move(target)), fn_(std::move(fn)),
        kind_(std::move(kind)) {}

  const ModulePtr& left() const noexcept { return left_; }
  const ModulePtr& right() const noexcept { return right_; }
  const ModulePtr& target() const noexcept { return target_; }
  const std::string& kind() const noexcept { return kind_; }

  void apply_into(ElementView m, ElementView n, std::span<std::int64_t> out) const { fn_(m, n, out); }
  ModuleElement apply(ElementView m, ElementView n) const {
    ModuleElement out(target_->rank());
    fn_(m, n, out);
    return out;
  }

  /// P'(n, m) = P(m, n)
  Pairing swapped() const {
    auto fn = fn_;
    return Pairing(right_, left_, target_,
                   [fn](ElementView n, ElementView m, std::span<std::int64_t> out) { fn(m, n, out); },
                   kind_ + ",swapped");
  }

 private:
  ModulePtr left_, right_, target_;
  Fn fn_;
  std::string kind_;
};

/// Checks P(g·e_i, g·e_j) = g·P(e_i, e_j) on generators; returns the first
/// failing (g, i, j) or an empty vector.
inline std::vector<std::size_t> pairing_equivariance_witness(const Pairing& p) {
  const auto& g = *p.left()->group();
  for (GroupElement x = 0; x < g.order(); ++x)
    for (std::size_t i = 0; i < p.left()->rank(); ++i)
      for (std::size_t j = 0; j < p.right()->rank(); ++j) {
        ModuleElement a = p.left()->zero(), b = p.right()->zero();
        a[i] = 1;
        b[j] = 1;
        if (p.apply(p.left()->act(x, a), p.right()->act(x, b)) != p.target()->act(x, p.apply(a, b)))
          return {x, i, j};
      }
  return {};
}

/// Pairing from an integer 3-tensor: P(m, n)_t = Σ coeff[t][i][j] m_i n_j.
/// Validated for well-definedness on the cyclic factors and equivariance.
inline Pairing tensor_pairing(ModulePtr left, ModulePtr right, ModulePtr target,
                              std::vector<std::vector<std::vector<std::int64_t>>> coeff) {
  const std::size_t kl = left->rank(), kr = right->rank(), kt = target->rank();
  if (coeff.size() != kt) throw Error(ErrorKind::PairingMismatch, "pairing tensor has wrong target dimension");
  for (std::size_t t = 0; t < kt; ++t) {
    if (coeff[t].size() != kl) throw Error(ErrorKind::PairingMismatch, "pairing tensor has wrong left dimension");
    for (std::size_t i = 0; i < kl; ++i) {
      if (coeff[t][i].size() != kr) throw Error(ErrorKind::PairingMismatch, "pairing tensor has wrong right dimension");
      for (std::size_t j = 0; j < kr; ++j) {
        const auto e = target->factors()[t];
        const auto c = coeff[t][i][j];
        if (reduce_mod(mul(left->factors()[i], c), e) != 0 || reduce_mod(mul(right->factors()[j], c), e) != 0)
          throw Error(ErrorKind::PairingMismatch, "pairing is not well defined on the cyclic factors", {t, i, j});
      }
    }
  }
  auto fn = [coeff, target](ElementView m, ElementView n, std::span<std::int64_t> out) {
    for (std::size_t t = 0; t < out.size(); ++t) {
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        for (std::size_t j = 0; j < n.size(); ++j)
          if (n[j] != 0 && coeff[t][i][j] != 0) acc = add(acc, mul(mul(coeff[t][i][j], m[i]), n[j]));
      }
      out[t] = reduce_mod(acc, target->factors()[t]);
    }
  };
  Pairing p(std::move(left), std::move(right), std::move(target), fn, "tensor");
  if (auto w = pairing_equivariance_witness(p); !w.empty())
    throw Error(ErrorKind::PairingMismatch, "pairing is not G-equivariant", w);
  return p;
}

/// Multiplication on Z/m (or Z) with trivial action.
inline Pairing ring_pairing(const ModulePtr& m) {
  if (m->rank() != 1 || !m->is_trivial_action())
    throw Error(ErrorKind::PairingMismatch, "ring pairing needs a cyclic module with trivial action");
  return tensor_pairing(m, m, m, {{{1}}});
}

inline Pairing zero_pairing(ModulePtr left, ModulePtr right, ModulePtr target) {
  return Pairing(std::move(left), std::move(right), std::move(target),
                 [](ElementView, ElementView, std::span<std::int64_t> out) { std::fill(out.begin(), out.end(), 0); },
                 "zero");
}

/// The universal pairing M ⊗ N → M⊗N.
inline Pairing identity_pairing(const std::shared_ptr<const TensorModule>& t) {
  return Pairing(t->left, t->right, t->module(),
                 [t](ElementView m, ElementView n, std::span<std::int64_t> out) {
                   auto v = t->tensor(m, n);
                   std::copy(v.begin(), v.end(), out.begin());
                 },
                 "identity");
}

/// A ⊗ Hom(A, M) → M, a ⊗ f ↦ f(a). Kept as function application rather
/// than a materialized tensor.
inline Pairing evaluation_pairing(const std::shared_ptr<const HomModule>& h) {
  return Pairing(h->source, h->module(), h->target,
                 [h](ElementView a, ElementView f, std::span<std::int64_t> out) {
                   auto v = h->evaluate(f, a);
                   std::copy(v.begin(), v.end(), out.begin());
                 },
                 "evaluation");
}

inline Pairing evaluation_pairing(const ModulePtr& a, const ModulePtr& m) {
  return evaluation_pairing(std::make_shared<const HomModule>(hom_module(a, m)));
}

/// (α ∪_P β)(g_1..g_{p+q}) = P(α(g_1..g_p), (g_1⋯g_p)·β(g_{p+1}..g_{p+q})).
inline Cochain cup_with_pairing(const Pairing& p, const Cochain& alpha, const Cochain& beta) {
  if (alpha.group() != beta.group() && alpha.group()->table() != beta.group()->table())
    throw Error(ErrorKind::GroupMismatch, "cup product of cochains on different groups");
  if (!same_module(alpha.module(), p.left()) || !same_module(beta.module(), p.right()))
    throw Error(ErrorKind::PairingMismatch, "cochain coefficients do not match the pairing");
  const auto& g = *alpha.group();
  const auto& mb = *beta.module();
  Cochain out(p.target(), alpha.degree() + beta.degree());
  const std::uint64_t bcount = tuple_count(g.order(), beta.degree());
  ModuleElement moved(mb.rank()), val(p.target()->rank());
  alpha.for_each_nonzero([&](std::uint64_t ak, ElementView av) {
    const Tuple at = alpha.decode(ak);
    const GroupElement x = g.product(at.begin(), at.end());
    beta.for_each_nonzero([&](std::uint64_t bk, ElementView bv) {
      mb.act_into(x, bv, moved);
      p.apply_into(av, moved, val);
      if (!p.target()->is_zero(val)) out.set_key(ak * bcount + bk, val);
    });
  });
  return out;
}

struct CupResult {
  std::shared_ptr<const TensorModule> tensor;
  Cochain value;
};

/// Cup product into M ⊗ N with the diagonal action.
inline CupResult cup(const Cochain& alpha, const Cochain& beta) {
  if (alpha.group() != beta.group() && alpha.group()->table() != beta.group()->table())
    throw Error(ErrorKind::GroupMismatch, "cup product of cochains on different groups");
  auto t = std::make_shared<const TensorModule>(tensor_module(alpha.module(), beta.module()));
  return {t, cup_with_pairing(identity_pairing(t), alpha, beta)};
}

/// d_2(b) = -(b ∪_ev c) for b of degree r in Hom(A, M) and a 2-cocycle c in A:
/// d_2(b)(g_1..g_{r+2}) = -b_{(g_1..g_r)}(g_1⋯g_r · c(g_{r+1}, g_{r+2})).
inline Cochain d2(const std::shared_ptr<const HomModule>& h, const Cochain& b, const Cochain& c) {
  if (c.degree() != 2) throw Error(ErrorKind::DegreeMismatch, "d2 needs a 2-cochain c");
  if (!same_module(c.module(), h->source)) throw Error(ErrorKind::ModuleMismatch, "c must take values in the Hom source");
  if (auto chk = is_cocycle(c); !chk)
    throw Error(ErrorKind::NotACocycle, "c is not a 2-cocycle", {chk.witness.begin(), chk.witness.end()});
  return -cup_with_pairing(evaluation_pairing(h).swapped(), b, c);
}

/// The same differential evaluated directly from the formula, tuple by tuple.
inline Cochain d2_formula(const HomModule& h, const Cochain& b, const Cochain& c) {
  const auto& g = *b.group();
  const std::size_t r = b.degree();
  const auto& a = *h.source;
  const auto& m = *h.target;
  Cochain out(h.target, r + 2);
  ModuleElement moved(a.rank());
  std::uint64_t key = 0;
  for (TupleOdometer it(g.order(), r + 2); !it.done(); it.next(), ++key) {
    const Tuple& t = it.tuple();
    const GroupElement x = g.product(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(r));
    auto cv = c.at(TupleView(t).subspan(r, 2));
    auto bv = b.at(TupleView(t).subspan(0, r));
    if (a.is_zero(cv) || h.module()->is_zero(bv)) continue;
    a.act_into(x, cv, moved);
    auto v = m.neg(h.evaluate(bv, moved));
    if (!m.is_zero(v)) out.set_key(key, v);
  }
  return out;
}

}  // namespace cohom
