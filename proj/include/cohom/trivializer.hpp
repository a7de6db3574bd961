#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cohom/cochain.hpp"
#include "cohom/cohomology.hpp"
#include "cohom/cup.hpp"
#include "cohom/error.hpp"
#include "cohom/extension.hpp"
#include "cohom/module.hpp"
#include "cohom/verify.hpp"

namespace cohom {

/// lcm of the additive orders of the values of ω (1 for ω = 0).
inline std::int64_t torsion_exponent(const Cochain& w) {
  std::int64_t n = 1;
  w.for_each_nonzero([&](std::uint64_t key, ElementView v) {
    auto o = w.module()->order_of(v);
    if (!o) {
      const Tuple t = w.decode(key);
      throw Error(ErrorKind::NonTorsionValue, "value of infinite order", {t.begin(), t.end()});
    }
    n = lcm64(n, *o);
  });
  return n;
}

/// A = (Z/N)^((|G|-1)^2) on symbols x_{h,k} (h, k ≠ 1), with
/// g·x_{h,k} = x_{gh,k} - x_{g,hk} + x_{g,h} (symbols with an identity index
/// vanish), and the cocycle c(g,h) = x_{g,h}.
struct UniversalKernel {
  std::int64_t N = 1;
  ModulePtr module;
  Cochain cocycle;

  /// Coordinate of the symbol x_{h,k}.
  static std::size_t symbol(std::size_t order, GroupElement h, GroupElement k) {
    return (h - 1) * (order - 1) + (k - 1);
  }
};

inline UniversalKernel universal_kernel(const GroupPtr& g, std::int64_t N) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "N must be positive");
  UniversalKernel u;
  u.N = N;
  const std::size_t n = g->order();
  if (N == 1 || n == 1) {
    u.module = make_module_unchecked(g, {}, {});
    u.cocycle = Cochain(u.module, 2);
    return u;
  }
  const std::size_t r = (n - 1) * (n - 1);
  std::vector<IntMatrix> action;
  action.reserve(n);
  for (GroupElement x = 0; x < n; ++x) {
    IntMatrix m(r, r);
    for (GroupElement h = 1; h < n; ++h)
      for (GroupElement k = 1; k < n; ++k) {
        const std::size_t col = UniversalKernel::symbol(n, h, k);
        auto put = [&](GroupElement a, GroupElement b, std::int64_t s) {
          if (a == 0 || b == 0) return;
          auto& e = m(UniversalKernel::symbol(n, a, b), col);
          e = reduce_mod(e + s, N);
        };
        put(g->mul(x, h), k, 1);
        put(x, g->mul(h, k), -1);
        put(x, h, 1);
      }
    action.push_back(std::move(m));
  }
  u.module = make_module(g, std::vector<std::int64_t>(r, N), std::move(action));
  u.cocycle = Cochain(u.module, 2);
  ModuleElement e(r, 0);
  for (GroupElement h = 1; h < n; ++h)
    for (GroupElement k = 1; k < n; ++k) {
      const std::size_t s = UniversalKernel::symbol(n, h, k);
      e[s] = 1;
      const GroupElement t[2] = {h, k};
      u.cocycle.set(t, e);
      e[s] = 0;
    }
  return u;
}

/// The witness b of degree n-2 in Hom(A, M) with d2(b, c) = ω:
/// Y_x(x_{h,k}) = -ω(g_1..g_{n-2}, h, k) and b_x(a) = Y_x(x⁻¹·a), where x is
/// the product g_1⋯g_{n-2}.
inline Cochain build_witness(const Cochain& w, const UniversalKernel& u, const HomModule& hom) {
  const std::size_t n = w.degree();
  if (n < 2) throw Error(ErrorKind::DegreeTooLow, "witness needs degree at least 2");
  const auto& m = *w.module();
  w.for_each_nonzero([&](std::uint64_t key, ElementView v) {
    if (!m.is_zero(m.scale(u.N, v))) {
      const Tuple t = w.decode(key);
      throw Error(ErrorKind::ExponentMismatch, "N does not annihilate a value", {t.begin(), t.end()});
    }
  });
  Cochain b(hom.module(), n - 2);
  const auto& a = *u.module;
  if (a.rank() == 0) return b;
  const auto& g = *w.group();
  const std::size_t order = g.order();
  std::unordered_map<std::uint64_t, IntMatrix> fy;
  w.for_each_nonzero([&](std::uint64_t key, ElementView v) {
    const Tuple t = w.decode(key);
    const std::uint64_t prefix = key / ((order - 1) * (order - 1));
    auto [it, fresh] = fy.try_emplace(prefix, m.rank(), a.rank());
    const std::size_t col = UniversalKernel::symbol(order, t[n - 2], t[n - 1]);
    for (std::size_t j = 0; j < m.rank(); ++j) it->second(j, col) = reduce_mod(-v[j], m.factors()[j]);
  });
  for (auto& [prefix, f] : fy) {
    const Tuple t = b.decode(prefix);
    const GroupElement x = g.product(t.begin(), t.end());
    const IntMatrix fb = detail::reduce_rows(f * a.action(g.inv(x)), m.factors());
    b.set_key(prefix, hom.from_matrix(fb));
  }
  b.prune();
  return b;
}

/// Evaluates a cochain of Γ tuple by tuple. Each worker thread gets a clone.
class AlphaSource {
 public:
  virtual ~AlphaSource() = default;
  virtual std::unique_ptr<AlphaSource> clone() const = 0;
  virtual ElementView operator()(TupleView t) = 0;
};

class MaterializedAlpha final : public AlphaSource {
 public:
  explicit MaterializedAlpha(std::shared_ptr<const Cochain> a) : a_(std::move(a)) {}
  std::unique_ptr<AlphaSource> clone() const override { return std::make_unique<MaterializedAlpha>(a_); }
  ElementView operator()(TupleView t) override { return a_->at(t); }

 private:
  std::shared_ptr<const Cochain> a_;
};

/// α(γ_1..γ_{n-1}) = (-1)^n b_{(g_1..g_{n-2})}(g_1⋯g_{n-2} · a_{n-1}), where
/// γ_i = (a_i, g_i).
class ClosedFormAlpha final : public AlphaSource {
 public:
  struct Data {
    std::shared_ptr<const GroupExtension> ext;
    ModulePtr target;
    std::size_t degree = 0;  // degree of ω
    std::unordered_map<std::uint64_t, IntMatrix> fb;
  };

  explicit ClosedFormAlpha(std::shared_ptr<const Data> d)
      : d_(std::move(d)), a_(d_->ext->kernel->rank()), ax_(a_.size()), out_(d_->target->rank()) {}

  static std::shared_ptr<const Data> prepare(std::shared_ptr<const GroupExtension> ext, const HomModule& hom,
                                             const Cochain& b, std::size_t degree, ModulePtr target) {
    auto d = std::make_shared<Data>();
    d->ext = std::move(ext);
    d->target = std::move(target);
    d->degree = degree;
    b.for_each_nonzero([&](std::uint64_t key, ElementView v) { d->fb.emplace(key, hom.to_matrix(v)); });
    return d;
  }

  std::unique_ptr<AlphaSource> clone() const override { return std::make_unique<ClosedFormAlpha>(d_); }

  ElementView operator()(TupleView t) override {
    const auto& e = *d_->ext;
    const auto& g = *e.base;
    const std::size_t n = d_->degree;
    std::fill(out_.begin(), out_.end(), 0);
    const std::uint64_t ai = e.kernel_index(t[n - 2]);
    if (ai == 0) return out_;
    std::uint64_t key = 0;
    GroupElement x = 0;
    for (std::size_t i = 0; i + 2 < n; ++i) {
      const GroupElement gi = e.pi[t[i]];
      if (gi == 0) return out_;
      key = key * (g.order() - 1) + (gi - 1);
      x = g.mul(x, gi);
    }
    auto it = d_->fb.find(key);
    if (it == d_->fb.end()) return out_;
    e.kernel->element_at(ai, a_);
    e.kernel->act_into(x, a_, ax_);
    const IntMatrix& f = it->second;
    const std::int64_t sign = (n % 2) ? -1 : 1;
    for (std::size_t j = 0; j < f.rows(); ++j) {
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < f.cols(); ++i)
        if (f(j, i) != 0 && ax_[i] != 0) acc = add(acc, mul(f(j, i), ax_[i]));
      out_[j] = reduce_mod(mul(sign, acc), d_->target->factors()[j]);
    }
    return out_;
  }

 private:
  std::shared_ptr<const Data> d_;
  ModuleElement a_, ax_, out_;
};

/// α(γ̃) = η̃(π̃ γ̃) + j(α_β(γ̃)).
class CompositeAlpha final : public AlphaSource {
 public:
  CompositeAlpha(std::shared_ptr<const Cochain> eta_tilde, std::shared_ptr<const std::vector<GroupElement>> pi,
                 std::unique_ptr<AlphaSource> inner, std::vector<std::size_t> torsion_coords, ModulePtr target)
      : eta_(std::move(eta_tilde)), pi_(std::move(pi)), inner_(std::move(inner)), tc_(std::move(torsion_coords)),
        target_(std::move(target)), buf_(), out_(target_->rank()) {}

  std::unique_ptr<AlphaSource> clone() const override {
    return std::make_unique<CompositeAlpha>(eta_, pi_, inner_->clone(), tc_, target_);
  }

  ElementView operator()(TupleView t) override {
    buf_.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) buf_[i] = (*pi_)[t[i]];
    auto e = eta_->at(buf_);
    std::copy(e.begin(), e.end(), out_.begin());
    auto v = (*inner_)(t);
    for (std::size_t a = 0; a < tc_.size(); ++a) out_[tc_[a]] += v[a];
    target_->reduce(out_);
    return out_;
  }

 private:
  std::shared_ptr<const Cochain> eta_;
  std::shared_ptr<const std::vector<GroupElement>> pi_;
  std::unique_ptr<AlphaSource> inner_;
  std::vector<std::size_t> tc_;
  ModulePtr target_;
  Tuple buf_;
  ModuleElement out_;
};

/// Checks δα = f∘π^{×n} over Γ^n, where Γ acts on the coefficients through
/// `lifted` and `pi` maps Γ onto the group of `w`.
inline SweepReport check_trivialization(const FiniteGroup& total, const ModulePtr& lifted,
                                        const std::vector<GroupElement>& pi, const Cochain& w,
                                        const AlphaSource& alpha, const Limits& limits, std::uint64_t seed,
                                        unsigned threads) {
  const std::size_t n = w.degree();
  return sweep_tuples(all_elements(total), n, limits, seed, threads, [&] {
    return [&, a = std::shared_ptr<AlphaSource>(alpha.clone()), lhs = ModuleElement(lifted->rank()),
            tmp = ModuleElement(lifted->rank()), scratch = Tuple(), img = Tuple(n)](TupleView t) mutable {
      coboundary_at(total, *lifted, n - 1, [&](TupleView s) { return (*a)(s); }, t, lhs, scratch, tmp);
      for (std::size_t i = 0; i < n; ++i) img[i] = pi[t[i]];
      auto rhs = w.at(img);
      return std::equal(lhs.begin(), lhs.end(), rhs.begin());
    };
  });
}

/// δα vanishes on K^n for the listed kernel elements K (on which the
/// coefficients are acted on trivially): the restriction of α to K is a cocycle.
inline SweepReport check_restriction(const FiniteGroup& total, const ModulePtr& lifted,
                                     const std::vector<GroupElement>& kernel, std::size_t alpha_degree,
                                     const AlphaSource& alpha, const Limits& limits, std::uint64_t seed,
                                     unsigned threads) {
  return sweep_tuples(kernel, alpha_degree + 1, limits, seed, threads, [&] {
    return [&, a = std::shared_ptr<AlphaSource>(alpha.clone()), v = ModuleElement(lifted->rank()),
            tmp = ModuleElement(lifted->rank()), scratch = Tuple()](TupleView t) mutable {
      coboundary_at(total, *lifted, alpha_degree, [&](TupleView s) { return (*a)(s); }, t, v, scratch, tmp);
      return lifted->is_zero(v);
    };
  });
}

struct TrivializeOptions {
  Limits limits;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool force_solver = false;  // skip the closed form and solve on Γ
};

/// Evidence that π*ω becomes a coboundary on Γ = A ⋊^c G.
struct TorsionCertificate {
  Cochain omega;
  std::int64_t N = 1;
  UniversalKernel kernel;
  std::shared_ptr<const HomModule> hom;
  Cochain b;
  std::shared_ptr<const GroupExtension> extension;
  ModulePtr lifted;  // coefficients as a Γ-module
  std::shared_ptr<const Cochain> alpha;  // null when not materialized
  std::string alpha_source;              // "closed_form", "solver" or "none"
  bool partial = false;
  SweepReport verification;
  SweepReport restriction;

  std::size_t degree() const { return omega.degree(); }
  const GroupPtr& gamma() const { return extension->total; }

  /// Evaluator for α, whether or not it is materialized.
  std::unique_ptr<AlphaSource> alpha_source_eval() const {
    if (alpha) return std::make_unique<MaterializedAlpha>(alpha);
    if (alpha_source == "closed_form")
      return std::make_unique<ClosedFormAlpha>(ClosedFormAlpha::prepare(extension, *hom, b, degree(), lifted));
    return nullptr;
  }
};

namespace detail {

inline bool fits(std::uint64_t tuples, std::size_t width, std::uint64_t limit) {
  std::uint64_t e = 0;
  return !__builtin_mul_overflow(tuples, std::max<std::size_t>(width, 1), &e) && e <= limit;
}

inline std::uint64_t safe_tuple_count(std::size_t order, std::size_t n) {
  try {
    return tuple_count(order, n);
  } catch (const Error&) {
    return std::numeric_limits<std::uint64_t>::max();
  }
}

/// Writes every value of the evaluator into a cochain over Γ.
inline Cochain materialize(const ModulePtr& m, std::size_t degree, AlphaSource& a) {
  Cochain out(m, degree);
  std::uint64_t key = 0;
  for (TupleOdometer it(m->group()->order(), degree); !it.done(); it.next(), ++key) {
    auto v = a(it.tuple());
    if (!m->is_zero(v)) out.set_key(key, v);
  }
  return out;
}

}  // namespace detail

/// Constructs Γ and α with δ_Γ α = π*ω for a torsion-valued cocycle ω of
/// degree n ≥ 2.
inline TorsionCertificate trivialize_torsion(const Cochain& w, const TrivializeOptions& opt = {}) {
  const std::size_t n = w.degree();
  if (n < 2) throw Error(ErrorKind::DegreeTooLow, "trivialization needs degree at least 2");
  if (auto chk = is_cocycle(w, opt.limits.max_cochain_entries); !chk)
    throw Error(ErrorKind::NotACocycle, "input is not a cocycle", {chk.witness.begin(), chk.witness.end()});
  TorsionCertificate cert;
  cert.omega = w;
  cert.N = torsion_exponent(w);
  cert.kernel = universal_kernel(w.group(), cert.N);
  cert.hom = std::make_shared<const HomModule>(hom_module(cert.kernel.module, w.module()));
  cert.b = build_witness(w, cert.kernel, *cert.hom);
  cert.extension = std::make_shared<const GroupExtension>(
      build_extension(cert.kernel.module, cert.kernel.cocycle, opt.limits, opt.seed));
  cert.lifted = lift_module(*cert.extension, w.module());
  const auto& gamma = *cert.extension->total;

  std::unique_ptr<AlphaSource> alpha;
  if (!opt.force_solver) {
    alpha = std::make_unique<ClosedFormAlpha>(
        ClosedFormAlpha::prepare(cert.extension, *cert.hom, cert.b, n, cert.lifted));
    cert.verification = check_trivialization(gamma, cert.lifted, cert.extension->pi, w, *alpha, opt.limits,
                                             opt.seed, opt.threads);
    if (cert.verification.ok) {
      cert.alpha_source = "closed_form";
      if (detail::fits(detail::safe_tuple_count(gamma.order(), n - 1), w.width(), opt.limits.max_cochain_entries))
        cert.alpha = std::make_shared<const Cochain>(detail::materialize(cert.lifted, n - 1, *alpha));
    } else {
      alpha.reset();
    }
  }
  if (!alpha) {
    try {
      Cochain lifted_w = lift_cochain(*cert.extension, w, cert.lifted, opt.limits.max_cochain_entries);
      auto x = solve_coboundary(lifted_w, opt.limits);
      if (!x) throw Error(ErrorKind::InvalidArgument, "internal: lifted cocycle is not a coboundary");
      cert.alpha = std::make_shared<const Cochain>(std::move(*x));
      cert.alpha_source = "solver";
      alpha = std::make_unique<MaterializedAlpha>(cert.alpha);
      cert.verification = check_trivialization(gamma, cert.lifted, cert.extension->pi, w, *alpha, opt.limits,
                                               opt.seed, opt.threads);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ResourceLimit) throw;
      cert.alpha_source = "none";
      cert.partial = true;
      cert.verification = {};
      cert.verification.ok = false;
      cert.verification.mode = "absent";
      return cert;
    }
  }
  cert.restriction = check_restriction(gamma, cert.lifted, cert.extension->iota, n - 1, *alpha, opt.limits,
                                       opt.seed, opt.threads);
  return cert;
}

/// Chained evidence for a cocycle with finitely generated coefficients:
/// Γ trivializes the free part, Γ̃ → Γ the remaining torsion part.
struct GeneralCertificate {
  Cochain omega;
  TorsionSplit split;
  Cochain p_omega;           // over G in M/M_T ≅ Z^r
  ScaledCochain h;           // δ(H/|G|) = p_*ω
  Presentation hbar_module;  // (Z/|G|)^r
  Cochain h_bar;
  TorsionCertificate first;  // trivializes h_bar on Γ
  Cochain rho_lift;          // integer representatives of first.alpha
  Cochain eta;               // over Γ in Z^r
  Cochain eta_tilde;         // s∘η over Γ in M
  Cochain beta;              // π*ω - δη̃, over Γ in M_T
  TorsionCertificate second;  // trivializes beta on Γ̃
  std::vector<GroupElement> composite_pi;  // Γ̃ -> G
  std::vector<GroupElement> composite_kernel;
  ModulePtr lifted;  // M over Γ̃
  std::shared_ptr<const Cochain> alpha;
  std::string alpha_source;  // "composite"
  bool partial = false;
  SweepReport verification;
  SweepReport restriction;

  std::size_t degree() const { return omega.degree(); }
  const GroupPtr& gamma() const { return second.extension->total; }

  std::unique_ptr<AlphaSource> alpha_source_eval() const {
    if (alpha) return std::make_unique<MaterializedAlpha>(alpha);
    auto inner = second.alpha_source_eval();
    if (!inner) return nullptr;
    std::vector<std::size_t> tc;
    for (std::size_t i = 0; i < omega.module()->rank(); ++i)
      if (omega.module()->factors()[i] != 0) tc.push_back(i);
    auto pi = std::make_shared<const std::vector<GroupElement>>(second.extension->pi);
    auto eta = std::make_shared<const Cochain>(eta_tilde);
    return std::make_unique<CompositeAlpha>(eta, pi, std::move(inner), tc, lifted);
  }
};

namespace detail {

/// Module over Γ for a map between G-modules, lifted along π.
inline ModuleMap lift_map(const ModuleMap& f, const GroupExtension& e) {
  return {lift_module(e, f.source), lift_module(e, f.target), f.matrix, f.equivariant};
}

}  // namespace detail

inline GeneralCertificate trivialize_general(const Cochain& w, const TrivializeOptions& opt = {}) {
  const std::size_t n = w.degree();
  if (n < 3) throw Error(ErrorKind::DegreeTooLow, "general trivialization needs degree at least 3");
  if (auto chk = is_cocycle(w, opt.limits.max_cochain_entries); !chk)
    throw Error(ErrorKind::NotACocycle, "input is not a cocycle", {chk.witness.begin(), chk.witness.end()});
  const auto& g = *w.group();
  const auto order = static_cast<std::int64_t>(g.order());
  GeneralCertificate cert;
  cert.omega = w;
  cert.split = torsion_submodule(w.module());
  const auto& split = cert.split;
  const std::size_t r = split.quotient->rank();

  // (1)-(3): free part, its rational primitive, and the reduction mod |G|.
  cert.p_omega = map_cochain(split.projection, w);
  cert.h = averaging_homotopy(cert.p_omega, opt.limits);
  {
    std::vector<IntMatrix> act;
    for (const auto& m : split.quotient->actions()) act.push_back(m);
    cert.hbar_module = make_module_presented(w.group(), std::vector<std::int64_t>(r, order), std::move(act));
  }
  cert.h_bar = Cochain(cert.hbar_module.module, n - 1);
  cert.h.numerator.for_each_nonzero([&](std::uint64_t key, ElementView v) {
    auto c = cert.hbar_module.canonical(v);
    if (!cert.hbar_module.module->is_zero(c)) cert.h_bar.set_key(key, c);
  });

  // (4): Γ with π*h̄ = δρ.
  cert.first = trivialize_torsion(cert.h_bar, opt);
  if (!cert.first.alpha)
    throw Error(ErrorKind::ResourceLimit, "first-stage primitive could not be materialized");
  const auto& e1 = *cert.first.extension;
  const auto q1 = lift_module(e1, split.quotient);
  const auto m1 = lift_module(e1, w.module());

  // (5): η = (π*H - δR) / |G| with R the integer representatives of ρ.
  cert.rho_lift = Cochain(q1, n - 2);
  cert.first.alpha->for_each_nonzero([&](std::uint64_t key, ElementView v) {
    ModuleElement x(r, 0);
    const auto& from = cert.hbar_module.from_canonical;
    for (std::size_t i = 0; i < r; ++i) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < from.cols(); ++j) acc = add(acc, mul(from(i, j), v[j]));
      x[i] = reduce_mod(acc, order);
    }
    cert.rho_lift.set_key(key, x);
  });
  const Cochain pih = lift_cochain(e1, cert.h.numerator, q1, opt.limits.max_cochain_entries);
  const Cochain diff = pih - coboundary(cert.rho_lift, opt.limits.max_cochain_entries);
  cert.eta = Cochain(q1, n - 1);
  diff.for_each_nonzero([&](std::uint64_t key, ElementView v) {
    ModuleElement x(r);
    for (std::size_t i = 0; i < r; ++i) {
      if (v[i] % order != 0) {
        const Tuple t = diff.decode(key);
        throw Error(ErrorKind::InvalidArgument, "internal: eta is not integral", {t.begin(), t.end()});
      }
      x[i] = v[i] / order;
    }
    cert.eta.set_key(key, x);
  });

  // (6): β = π*ω - δ(s∘η), valued in M_T.
  cert.eta_tilde = map_cochain(detail::lift_map(split.section, e1), cert.eta);
  const Cochain pw = lift_cochain(e1, w, m1, opt.limits.max_cochain_entries);
  const Cochain full_beta = pw - coboundary(cert.eta_tilde, opt.limits.max_cochain_entries);
  std::vector<std::size_t> tc;
  for (std::size_t i = 0; i < w.module()->rank(); ++i)
    if (w.module()->factors()[i] != 0) tc.push_back(i);
  const auto t1 = lift_module(e1, split.torsion);
  cert.beta = Cochain(t1, n);
  full_beta.for_each_nonzero([&](std::uint64_t key, ElementView v) {
    ModuleElement x(tc.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      if (w.module()->factors()[i] == 0 && v[i] != 0) {
        const Tuple t = full_beta.decode(key);
        throw Error(ErrorKind::InvalidArgument, "internal: beta has a free component", {t.begin(), t.end()});
      }
    for (std::size_t a = 0; a < tc.size(); ++a) x[a] = v[tc[a]];
    cert.beta.set_key(key, x);
  });
  cert.beta.prune();

  // (7): Γ̃ → Γ trivializing β; α = π̃*η̃ + j∘α_β.
  cert.second = trivialize_torsion(cert.beta, opt);
  const auto& e2 = *cert.second.extension;
  const auto& gt = *e2.total;
  cert.composite_pi.resize(gt.order());
  for (GroupElement x = 0; x < gt.order(); ++x) {
    cert.composite_pi[x] = e1.pi[e2.pi[x]];
    if (cert.composite_pi[x] == 0) cert.composite_kernel.push_back(x);
  }
  cert.lifted = pullback_module(w.module(), e2.total, cert.composite_pi);
  cert.alpha_source = "composite";
  auto alpha = cert.alpha_source_eval();
  if (!alpha) {
    cert.partial = true;
    cert.alpha_source = "none";
    cert.verification.ok = false;
    cert.verification.mode = "absent";
    return cert;
  }
  cert.verification =
      check_trivialization(gt, cert.lifted, cert.composite_pi, w, *alpha, opt.limits, opt.seed, opt.threads);
  cert.restriction = check_restriction(gt, cert.lifted, cert.composite_kernel, n - 1, *alpha, opt.limits,
                                       opt.seed, opt.threads);
  if (detail::fits(detail::safe_tuple_count(gt.order(), n - 1), w.width(), opt.limits.max_cochain_entries))
    cert.alpha = std::make_shared<const Cochain>(detail::materialize(cert.lifted, n - 1, *alpha));
  return cert;
}

}  // namespace cohom
