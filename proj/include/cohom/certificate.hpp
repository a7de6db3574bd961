#pragma once

#include <string>
#include <vector>

#include "cohom/trivializer.hpp"

namespace cohom {

struct CheckResult {
  std::string name;
  std::string status;  // "pass", "fail" or "absent"
  std::string detail;
  Tuple witness;
  GroupPtr group = nullptr;  // the group the witness tuple lives in
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool ok(bool allow_partial = false) const {
    for (const auto& c : checks) {
      if (c.status == "fail") return false;
      if (c.status == "absent" && !allow_partial) return false;
    }
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

/// First tuple (in key order) where two cochains of equal degree differ.
inline std::optional<Tuple> first_difference(const Cochain& a, const Cochain& b) {
  std::optional<std::uint64_t> best;
  auto scan = [&](const Cochain& x, const Cochain& y) {
    x.for_each_nonzero([&](std::uint64_t k, ElementView v) {
      auto w = y.at_key(k);
      if (!std::equal(v.begin(), v.end(), w.begin()) && (!best || k < *best)) best = k;
    });
  };
  scan(a, b);
  scan(b, a);
  if (!best) return std::nullopt;
  return a.decode(*best);
}

inline CheckResult cocycle_check(const std::string& name, const Cochain& f, const Limits& limits) {
  try {
    auto c = is_cocycle(f, limits.max_cochain_entries);
    if (c) return {name, "pass", "", {}};
    return {name, "fail", "coboundary is nonzero", c.witness, f.group()};
  } catch (const Error& e) {
    return {name, "fail", e.what(), {}};
  }
}

inline CheckResult equal_check(const std::string& name, const Cochain& a, const Cochain& b) {
  if (a.degree() != b.degree()) return {name, "fail", "degrees differ", {}};
  if (a.module()->factors() != b.module()->factors()) return {name, "fail", "coefficient modules differ", {}};
  if (auto t = first_difference(a, b)) return {name, "fail", "values differ", *t, a.group()};
  return {name, "pass", "", {}};
}

inline CheckResult sweep_check(const std::string& name, const SweepReport& r, const GroupPtr& g) {
  CheckResult c{name, r.ok ? "pass" : "fail", r.mode + ", " + std::to_string(r.checked) + " tuples", {}, g};
  if (!r.ok) c.witness = r.witness;
  return c;
}

}  // namespace detail

/// Re-checks a torsion certificate from its data alone. The extension group
/// is rebuilt from (A, c) rather than taken from the certificate.
inline VerifyReport verify_certificate(const TorsionCertificate& cert, const TrivializeOptions& opt = {},
                                       const std::string& prefix = "") {
  VerifyReport rep;
  auto push = [&](CheckResult c) {
    c.name = prefix + c.name;
    rep.checks.push_back(std::move(c));
  };
  const auto& w = cert.omega;
  const auto& lim = opt.limits;
  push(detail::cocycle_check("omega_cocycle", w, lim));
  {
    CheckResult c{"exponent", "pass", "N = " + std::to_string(cert.N), {}};
    w.for_each_nonzero([&](std::uint64_t k, ElementView v) {
      if (c.status == "pass" && !w.module()->is_zero(w.module()->scale(cert.N, v))) {
        c.status = "fail";
        c.detail = "N does not annihilate a value";
        c.witness = w.decode(k);
        c.group = w.group();
      }
    });
    push(c);
  }
  {
    auto u = universal_kernel(w.group(), cert.N);
    const bool same = same_module(u.module, cert.kernel.module) && u.cocycle == cert.kernel.cocycle;
    push({"kernel", same ? "pass" : "fail", same ? "" : "kernel or c differs from the universal construction", {}});
  }
  push(detail::cocycle_check("c_cocycle", cert.kernel.cocycle, lim));

  std::shared_ptr<const GroupExtension> ext;
  try {
    ext = std::make_shared<const GroupExtension>(
        build_extension(cert.kernel.module, cert.kernel.cocycle, lim, opt.seed));
    const auto& gamma = *ext->total;
    std::string why;
    if (gamma.order() != cert.kernel.module->cardinality().value() * w.group()->order()) why = "wrong order";
    if (why.empty() && cert.extension && cert.extension->total->table() != gamma.table()) why = "stored table differs";
    if (why.empty()) {
      const auto& g = *w.group();
      auto hom = sweep_tuples(all_elements(gamma), 2, lim, opt.seed, opt.threads, [&] {
        return [&](TupleView t) { return ext->pi[gamma.mul(t[0], t[1])] == g.mul(ext->pi[t[0]], ext->pi[t[1]]); };
      });
      if (!hom.ok) why = "pi is not a homomorphism";
      for (std::size_t i = 0; i < ext->iota.size() && why.empty(); ++i)
        if (ext->pi[ext->iota[i]] != 0) why = "iota does not land in the kernel of pi";
    }
    push({"gamma", why.empty() ? "pass" : "fail", why.empty() ? "order " + std::to_string(gamma.order()) : why, {}});
  } catch (const Error& e) {
    push({"gamma", "fail", e.what(), {e.witness().begin(), e.witness().end()}});
  }

  push(detail::cocycle_check("b_cocycle", cert.b, lim));
  try {
    push(detail::equal_check("d2", d2(cert.hom, cert.b, cert.kernel.cocycle), w));
  } catch (const Error& e) {
    push({"d2", "fail", e.what(), {}});
  }

  if (!ext) return rep;
  // α is evaluated against the rebuilt extension.
  TorsionCertificate view = cert;
  view.extension = ext;
  view.lifted = lift_module(*ext, w.module());
  if (view.alpha && !same_module(view.alpha->module(), view.lifted)) {
    push({"alpha", "fail", "alpha has the wrong coefficient module", {}});
    return rep;
  }
  auto alpha = view.alpha_source_eval();
  if (!alpha) {
    push({"alpha", "absent", "certificate carries no primitive", {}});
    push({"restriction", "absent", "", {}});
    return rep;
  }
  push(detail::sweep_check(
      "alpha", check_trivialization(*ext->total, view.lifted, ext->pi, w, *alpha, lim, opt.seed, opt.threads),
      ext->total));
  push(detail::sweep_check("restriction",
                           check_restriction(*ext->total, view.lifted, ext->iota, w.degree() - 1, *alpha, lim,
                                             opt.seed, opt.threads),
                           ext->total));
  return rep;
}

/// Re-checks every stage of a general certificate.
inline VerifyReport verify_certificate(const GeneralCertificate& cert, const TrivializeOptions& opt = {}) {
  VerifyReport rep;
  const auto& w = cert.omega;
  const auto& lim = opt.limits;
  const auto& g = *w.group();
  const auto order = static_cast<std::int64_t>(g.order());
  rep.checks.push_back(detail::cocycle_check("omega_cocycle", w, lim));

  const auto split = torsion_submodule(w.module());
  const Cochain pw = map_cochain(split.projection, w);
  {
    const Cochain lhs = coboundary(rebind(cert.h.numerator, split.quotient), lim.max_cochain_entries);
    auto c = detail::equal_check("free_reduction", lhs, scale(order, pw));
    if (cert.h.denominator != order) c = {"free_reduction", "fail", "denominator is not |G|", {}};
    rep.checks.push_back(c);
  }
  {
    Cochain expect(cert.h_bar.module(), cert.h_bar.degree());
    cert.h.numerator.for_each_nonzero([&](std::uint64_t k, ElementView v) {
      auto c = cert.hbar_module.canonical(v);
      if (!expect.module()->is_zero(c)) expect.set_key(k, c);
    });
    auto c = detail::equal_check("h_bar", cert.h_bar, expect);
    rep.checks.push_back(c);
  }
  {
    auto sub = verify_certificate(cert.first, opt, "first.");
    rep.checks.insert(rep.checks.end(), sub.checks.begin(), sub.checks.end());
    rep.checks.push_back(detail::equal_check("first.omega", cert.first.omega, cert.h_bar));
  }
  const auto& e1 = *cert.first.extension;
  const auto q1 = lift_module(e1, split.quotient);
  const auto m1 = lift_module(e1, w.module());
  try {
    if (!cert.first.alpha) throw Error(ErrorKind::InvalidArgument, "first-stage primitive missing");
    // R must represent ρ, and |G|·η = π*H - δR.
    CheckResult rc{"rho_lift", "pass", "", {}};
    cert.rho_lift.for_each_nonzero([&](std::uint64_t k, ElementView v) {
      for (auto x : v)
        if ((x < 0 || x >= order) && rc.status == "pass") rc = {"rho_lift", "fail", "not in [0,|G|)", cert.rho_lift.decode(k), cert.rho_lift.group()};
      auto c = cert.hbar_module.canonical(v);
      auto a = cert.first.alpha->at_key(k);
      if (!std::equal(c.begin(), c.end(), a.begin()) && rc.status == "pass")
        rc = {"rho_lift", "fail", "does not reduce to the first-stage primitive", cert.rho_lift.decode(k),
              cert.rho_lift.group()};
    });
    cert.first.alpha->for_each_nonzero([&](std::uint64_t k, ElementView) {
      if (cert.rho_lift.at_key(k).empty() || q1->is_zero(cert.rho_lift.at_key(k)))
        if (rc.status == "pass")
          rc = {"rho_lift", "fail", "missing representative", cert.first.alpha->decode(k), cert.rho_lift.group()};
    });
    rep.checks.push_back(rc);
    const Cochain r = rebind(cert.rho_lift, q1);
    const Cochain rhs = lift_cochain(e1, rebind(cert.h.numerator, split.quotient), q1, lim.max_cochain_entries) -
                        coboundary(r, lim.max_cochain_entries);
    rep.checks.push_back(detail::equal_check("eta", scale(order, rebind(cert.eta, q1)), rhs));
    rep.checks.push_back(detail::equal_check("d_eta", coboundary(rebind(cert.eta, q1), lim.max_cochain_entries),
                                             lift_cochain(e1, pw, q1, lim.max_cochain_entries)));
    const ModuleMap s{q1, m1, split.section.matrix, false};
    const Cochain et = map_cochain(s, rebind(cert.eta, q1));
    rep.checks.push_back(detail::equal_check("eta_tilde", rebind(cert.eta_tilde, m1), et));
    const Cochain full = lift_cochain(e1, w, m1, lim.max_cochain_entries) - coboundary(et, lim.max_cochain_entries);
    const auto t1 = lift_module(e1, split.torsion);
    Cochain beta(t1, w.degree());
    CheckResult bc{"beta", "pass", "", {}};
    std::vector<std::size_t> tc;
    for (std::size_t i = 0; i < w.module()->rank(); ++i)
      if (w.module()->factors()[i] != 0) tc.push_back(i);
    full.for_each_nonzero([&](std::uint64_t k, ElementView v) {
      ModuleElement x(tc.size());
      for (std::size_t i = 0; i < v.size(); ++i)
        if (w.module()->factors()[i] == 0 && v[i] != 0 && bc.status == "pass")
          bc = {"beta", "fail", "free component is nonzero", full.decode(k), full.group()};
      for (std::size_t a = 0; a < tc.size(); ++a) x[a] = v[tc[a]];
      if (!t1->is_zero(x)) beta.set_key(k, x);
    });
    if (bc.status == "pass") bc = detail::equal_check("beta", rebind(cert.beta, t1), beta);
    rep.checks.push_back(bc);
  } catch (const Error& e) {
    rep.checks.push_back({"eta", "fail", e.what(), {}});
  }
  {
    auto sub = verify_certificate(cert.second, opt, "second.");
    rep.checks.insert(rep.checks.end(), sub.checks.begin(), sub.checks.end());
    rep.checks.push_back(detail::equal_check("second.omega", cert.second.omega, cert.beta));
  }
  auto alpha = cert.alpha_source_eval();
  if (!alpha) {
    rep.checks.push_back({"alpha", "absent", "certificate carries no primitive", {}});
    return rep;
  }
  const auto& gt = *cert.second.extension->total;
  std::vector<GroupElement> pi(gt.order()), kernel;
  for (GroupElement x = 0; x < gt.order(); ++x) {
    pi[x] = e1.pi[cert.second.extension->pi[x]];
    if (pi[x] == 0) kernel.push_back(x);
  }
  const auto lifted = pullback_module(w.module(), cert.second.extension->total, pi);
  const auto& gtp = cert.second.extension->total;
  rep.checks.push_back(detail::sweep_check(
      "alpha", check_trivialization(gt, lifted, pi, w, *alpha, lim, opt.seed, opt.threads), gtp));
  rep.checks.push_back(detail::sweep_check(
      "restriction", check_restriction(gt, lifted, kernel, w.degree() - 1, *alpha, lim, opt.seed, opt.threads), gtp));
  return rep;
}

}  // namespace cohom
