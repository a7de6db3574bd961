// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cohom/builtin_groups.hpp"
#include "cohom/certificate.hpp"
#include "cohom/cohomology.hpp"
#include "cohom/cup.hpp"
#include "cohom/trivializer.hpp"

using namespace cohom;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note = what;
      ok = false;
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o, double secs) {
  std::printf("%s criterion %2d: %s (%.2fs)%s%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
              o.ok ? "" : " -- ", o.ok ? "" : o.note.c_str());
  std::fflush(stdout);
  if (!o.ok) ++failures;
}

void run(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  report(id, title, o, seconds_since(t0));
}

// Certificates from criteria 1-3 and 8, reused by 4 and 9.
std::vector<TorsionCertificate> torsion_certs;
std::vector<GeneralCertificate> general_certs;

ModulePtr sign_module(const GroupPtr& g) {
  auto chi = sign_character(*g);
  std::vector<IntMatrix> act;
  for (auto s : *chi) act.push_back(IntMatrix{{s}});
  return make_module(g, {0}, act);
}

void require_exhaustive(Outcome& o, const SweepReport& r, std::uint64_t count, const std::string& what) {
  o.require(r.ok, what + ": verification failed");
  o.require(r.mode == "exhaustive", what + ": verification was " + r.mode);
  o.require(r.checked == count, what + ": checked " + std::to_string(r.checked) + " of " + std::to_string(count));
}

// All normalized cochains of degree n with values in a finite module.
std::vector<Cochain> all_cochains(const ModulePtr& m, std::size_t n) {
  const std::uint64_t slots = tuple_count(m->group()->order(), n);
  const std::uint64_t card = *m->cardinality();
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < slots; ++i) total *= card;
  std::vector<Cochain> out;
  out.reserve(total);
  for (std::uint64_t code = 0; code < total; ++code) {
    Cochain f(m, n);
    std::uint64_t c = code;
    for (std::uint64_t k = 0; k < slots; ++k) {
      auto v = m->element_at(c % card);
      c /= card;
      if (!m->is_zero(v)) f.set_key(k, v);
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::string key_string(const Cochain& f) {
  std::string s;
  f.for_each_nonzero([&](std::uint64_t k, ElementView v) {
    s += std::to_string(k) + ":";
    for (auto x : v) s += std::to_string(x) + ",";
    s += ";";
  });
  return s;
}

// Number of elements of each order in Z/d_1 ⊕ ... ⊕ Z/d_k.
std::map<std::int64_t, std::int64_t> order_profile(const std::vector<std::int64_t>& inv) {
  std::vector<std::int64_t> orders{1};
  for (auto d : inv) {
    std::vector<std::int64_t> next;
    for (auto o : orders)
      for (std::int64_t a = 0; a < d; ++a) next.push_back(std::lcm(o, d / std::gcd(a, d)));
    orders = std::move(next);
  }
  std::map<std::int64_t, std::int64_t> prof;
  for (auto o : orders) ++prof[o];
  return prof;
}

// Z^n / B^n by listing every cochain; returns the element-order profile.
std::map<std::int64_t, std::int64_t> brute_force_profile(const ModulePtr& m, std::size_t n) {
  std::set<std::string> boundaries;
  for (const auto& g : all_cochains(m, n - 1)) boundaries.insert(key_string(coboundary(g)));
  std::vector<Cochain> cocycles;
  for (auto& f : all_cochains(m, n))
    if (is_cocycle(f)) cocycles.push_back(std::move(f));
  std::map<std::int64_t, std::int64_t> prof;
  for (const auto& z : cocycles) {
    std::int64_t k = 1;
    Cochain acc = z;
    while (!boundaries.count(key_string(acc))) {
      acc = acc + z;
      ++k;
    }
    ++prof[k];
  }
  // Each class was counted |B^n| times.
  for (auto& [o, c] : prof) c /= static_cast<std::int64_t>(boundaries.size());
  return prof;
}

// Over Z/2 every cochain group of normalized cochains is a copy of M on the
// single tuple (t,..,t). For M = Z-sign, enumerate integer values in a box;
// kernels and images are subgroups of Z, generated by their least positive
// member, which lies well inside the box.
std::vector<std::int64_t> brute_force_z2_integral(const ModulePtr& m, std::size_t n, Outcome& o) {
  const std::int64_t box = 6;
  auto single = [&](std::size_t deg, std::int64_t v) {
    Cochain f(m, deg);
    if (v != 0) {
      if (deg == 0)
        f.set(Tuple{}, ModuleElement{v});
      else
        f.set(Tuple(deg, 1), ModuleElement{v});
    }
    return f;
  };
  auto value = [&](const Cochain& f) { return f.at(Tuple(f.degree(), 1))[0]; };
  std::int64_t zgen = 0, bgen = 0;
  for (std::int64_t v = 1; v <= box && zgen == 0; ++v)
    if (is_cocycle(single(n, v))) zgen = v;
  std::set<std::int64_t> images;
  for (std::int64_t v = -box; v <= box; ++v) images.insert(std::abs(value(coboundary(single(n - 1, v)))));
  for (auto v : images)
    if (v != 0 && (bgen == 0 || v < bgen)) bgen = v;
  if (zgen == 0) return {};
  o.require(bgen == 0 || bgen % zgen == 0, "boundary not inside cycles");
  if (bgen == 0) return {0};
  if (bgen == zgen) return {};
  return {bgen / zgen};
}

void check_d2(Outcome& o, const TorsionCertificate& c, const std::string& what) {
  if (c.N == 1) return;  // ω = 0: A = 0, Hom(A, M) = 0
  o.require(static_cast<bool>(is_cocycle(c.b)), what + ": b is not a cocycle");
  o.require(d2(c.hom, c.b, c.kernel.cocycle) == c.omega, what + ": d2(b,c) != omega");
  o.require(d2_formula(*c.hom, c.b, c.kernel.cocycle) == c.omega, what + ": direct d2 formula != omega");
}

}  // namespace

int main() {
  auto z2 = cyclic_group(2);
  auto klein = builtin_group("klein");
  auto f2 = trivial_module(z2, {2});

  run(1, "Z/2, omega(t,t)=1: N=2, |Gamma|=4 with an element of order 4, 16 pairs", [&](Outcome& o) {
    const auto t0 = Clock::now();
    Cochain w(f2, 2);
    w.set(Tuple{1, 1}, ModuleElement{1});
    auto cert = trivialize_torsion(w);
    o.require(cert.N == 2, "N != 2");
    o.require(cert.gamma()->order() == 4, "|Gamma| != 4");
    bool has4 = false;
    for (GroupElement x = 0; x < cert.gamma()->order(); ++x) has4 = has4 || cert.gamma()->element_order(x) == 4;
    o.require(has4, "Gamma has no element of order 4");
    require_exhaustive(o, cert.verification, 16, "Z/2");
    o.require(verify_certificate(cert).ok(), "independent verification failed");
    o.require(seconds_since(t0) < 1.0, "runtime over 1s");
    torsion_certs.push_back(std::move(cert));
  });

  run(2, "every 2-cocycle of Z/2 and Z/2xZ/2 in Z/2 trivialized exhaustively", [&](Outcome& o) {
    const auto t0 = Clock::now();
    int count = 0;
    for (const auto& g : {z2, klein}) {
      auto m = trivial_module(g, {2});
      for (const auto& w : all_cochains(m, 2)) {
        if (!is_cocycle(w)) continue;
        ++count;
        auto cert = trivialize_torsion(w);
        const std::string what = std::string(g == z2 ? "Z/2" : "Z/2xZ/2") + " cocycle #" + std::to_string(count);
        const std::uint64_t order = cert.gamma()->order();
        if (!w.is_zero()) o.require(order == g->order() * (std::uint64_t{1} << ((g->order() - 1) * (g->order() - 1))),
                                    what + ": unexpected |Gamma|");
        require_exhaustive(o, cert.verification, order * order, what);
        if (!w.is_zero()) torsion_certs.push_back(std::move(cert));
      }
    }
    o.require(count == 2 + 16, "expected 2 + 16 cocycles, found " + std::to_string(count));
    o.require(seconds_since(t0) < 300.0, "runtime over 5 min");
  });

  run(3, "Z/2 in Z/2 at n=3: nonzero class of H^3 verified over 64 tuples", [&](Outcome& o) {
    const auto t0 = Clock::now();
    auto h = cohomology(f2, 3);
    o.require(h.invariants == std::vector<std::int64_t>{2}, "H^3(Z/2;Z/2) is not [2]");
    auto cert = trivialize_torsion(h.representatives.at(0));
    require_exhaustive(o, cert.verification, 64, "n=3");
    o.require(verify_certificate(cert).ok(), "independent verification failed");
    o.require(seconds_since(t0) < 1.0, "runtime over 1s");
    torsion_certs.push_back(std::move(cert));
  });

  run(4, "d2(b,c) = omega and b is a cocycle for every certificate above", [&](Outcome& o) {
    o.require(!torsion_certs.empty(), "no certificates");
    for (std::size_t i = 0; i < torsion_certs.size(); ++i) check_d2(o, torsion_certs[i], "cert " + std::to_string(i));
  });

  run(5, "cohomology agrees with brute-force enumeration", [&](Outcome& o) {
    const auto t0 = Clock::now();
    auto z3 = cyclic_group(3);
    auto f3 = trivial_module(z3, {3});
    std::vector<std::tuple<ModulePtr, std::size_t, std::string>> cases;
    for (std::size_t n = 1; n <= 3; ++n) cases.emplace_back(f2, n, "Z/2,Z/2");
    for (std::size_t n = 1; n <= 2; ++n) cases.emplace_back(f3, n, "Z/3,Z/3");
    for (const auto& [m, n, name] : cases) {
      auto h = cohomology(m, n);
      o.require(order_profile(h.invariants) == brute_force_profile(m, n),
                name + " H^" + std::to_string(n) + " disagrees with enumeration");
    }
    auto sign = sign_module(z2);
    for (std::size_t n = 1; n <= 2; ++n) {
      auto h = cohomology(sign, n);
      o.require(h.invariants == brute_force_z2_integral(sign, n, o),
                "Z/2,Z-sign H^" + std::to_string(n) + " disagrees with enumeration");
    }
    o.require(cohomology(f2, 2).invariants == std::vector<std::int64_t>{2}, "H^2(Z/2;Z/2) != [2]");
    o.require(cohomology(f3, 1).invariants == std::vector<std::int64_t>{3}, "H^1(Z/3;Z/3) != [3]");
    o.require(cohomology(sign, 1).invariants == std::vector<std::int64_t>{2}, "H^1(Z/2;Z-sign) != [2]");
    o.require(seconds_since(t0) < 60.0, "runtime over 1 min");
  });

  run(6, "every invariant factor of H^n, n>=1, divides |G|", [&](Outcome& o) {
    std::vector<ModulePtr> modules;
    for (const char* name : {"cyclic:2", "cyclic:3", "cyclic:4", "klein", "symmetric:3"}) {
      auto g = builtin_group(name);
      modules.push_back(trivial_module(g, {0}));
      modules.push_back(trivial_module(g, {2}));
      modules.push_back(trivial_module(g, {3}));
      modules.push_back(trivial_module(g, {2, 4}));
      if (sign_character(*g)) modules.push_back(sign_module(g));
    }
    int groups = 0;
    for (const auto& m : modules) {
      const std::size_t top = m->group()->order() <= 4 ? 4 : 3;
      for (std::size_t n = 1; n <= top; ++n) {
        ++groups;
        for (auto d : cohomology(m, n).invariants)
          o.require(d != 0 && static_cast<std::int64_t>(m->group()->order()) % d == 0,
                    "invariant " + std::to_string(d) + " does not divide |G| in degree " + std::to_string(n));
      }
    }
    o.require(groups > 50, "too few cases");
  });

  run(7, "Leibniz rule on 200 random pairs over Z/2, Z/4, S3", [&](Outcome& o) {
    std::mt19937_64 rng(20240601);
    std::vector<GroupPtr> groups{z2, cyclic_group(4), builtin_group("symmetric:3")};
    int done = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto& g = groups[trial % 3];
      std::vector<ModulePtr> mods{trivial_module(g, {0}), trivial_module(g, {4}), sign_module(g)};
      const auto& ma = mods[rng() % 3];
      const auto& mb = mods[rng() % 3];
      const std::size_t p = rng() % 4;
      const std::size_t q = rng() % (4 - p);
      auto t = std::make_shared<const TensorModule>(tensor_module(ma, mb));
      auto pair = identity_pairing(t);
      auto a = random_cochain(ma, p, rng);
      auto b = random_cochain(mb, q, rng);
      auto lhs = coboundary(cup_with_pairing(pair, a, b));
      auto rhs = cup_with_pairing(pair, coboundary(a), b) +
                 scale(p % 2 ? -1 : 1, cup_with_pairing(pair, a, coboundary(b)));
      o.require(lhs == rhs, "trial " + std::to_string(trial) + " (p=" + std::to_string(p) +
                                ", q=" + std::to_string(q) + ") violates Leibniz");
      ++done;
    }
    o.require(done == 200, "not all trials ran");
  });

  run(8, "Z/2 in Z at n=4: general pipeline, |Gamma|=4, 256 tuples", [&](Outcome& o) {
    const auto t0 = Clock::now();
    auto zm = trivial_module(z2, {0});
    auto h = cohomology(zm, 4);
    o.require(h.invariants == std::vector<std::int64_t>{2}, "H^4(Z/2;Z) is not [2]");
    auto cert = trivialize_general(h.representatives.at(0));
    o.require(cert.gamma()->order() == 4, "|Gamma| != 4");
    require_exhaustive(o, cert.verification, 256, "pipeline");
    o.require(coboundary(cert.h.numerator) == scale(cert.h.denominator, cert.p_omega), "delta h != p_* omega");
    o.require(cert.beta.is_zero(), "beta != 0");
    auto rep = verify_certificate(cert);
    for (const char* name : {"free_reduction", "h_bar", "rho_lift", "eta", "d_eta", "eta_tilde", "beta", "alpha"}) {
      auto c = rep.find(name);
      o.require(c && c->status == "pass", std::string("intermediate check ") + name + " did not pass");
    }
    o.require(rep.ok(), "independent verification failed");
    o.require(seconds_since(t0) < 10.0, "runtime over 10s");
    general_certs.push_back(std::move(cert));
  });

  run(9, "restriction of alpha to the kernel is a cocycle, exhaustively", [&](Outcome& o) {
    o.require(!torsion_certs.empty() && !general_certs.empty(), "no certificates");
    for (std::size_t i = 0; i < torsion_certs.size(); ++i) {
      const auto& r = torsion_certs[i].restriction;
      o.require(r.ok && r.mode == "exhaustive", "torsion cert " + std::to_string(i) + ": " + r.mode);
      auto c = verify_certificate(torsion_certs[i]).find("restriction");
      o.require(c && c->status == "pass", "torsion cert " + std::to_string(i) + ": re-check failed");
    }
    for (const auto& g : general_certs) {
      o.require(g.restriction.ok && g.restriction.mode == "exhaustive", "general cert: " + g.restriction.mode);
      o.require(g.first.restriction.ok && g.second.restriction.ok, "general cert stage restriction failed");
    }
  });

  run(10, "negative controls: non-cocycle extension and corrupted certificate", [&](Outcome& o) {
    auto z3 = cyclic_group(3);
    auto a = trivial_module(z3, {3});
    Cochain c(a, 2);
    c.set(Tuple{1, 1}, ModuleElement{1});
    try {
      build_extension(a, c);
      o.require(false, "non-cocycle accepted");
    } catch (const Error& e) {
      o.require(e.kind() == ErrorKind::NotACocycle, "wrong error kind");
      o.require(e.witness().size() == 3, "no witness triple");
      if (e.witness().size() == 3) {
        const auto& g = *z3;
        const GroupElement x = static_cast<GroupElement>(e.witness()[0]), y = static_cast<GroupElement>(e.witness()[1]),
                           z = static_cast<GroupElement>(e.witness()[2]);
        // ((0,x)(0,y))(0,z) and (0,x)((0,y)(0,z)) under the naive law.
        auto val = [&](GroupElement p, GroupElement q) { return c.at(Tuple{p, q})[0]; };
        const auto left = (val(x, y) + val(g.mul(x, y), z)) % 3;
        const auto right = (val(y, z) + val(x, g.mul(y, z))) % 3;
        o.require(left != right, "witness triple does not break associativity");
      }
    }

    const auto& good = torsion_certs.at(0);
    o.require(verify_certificate(good).ok(), "uncorrupted certificate rejected");
    TorsionCertificate bad = good;
    Cochain alpha = *good.alpha;
    const Tuple t{1};
    const auto m = alpha.module();
    ModuleElement v(alpha.at(t).begin(), alpha.at(t).end());
    v[0] += 1;
    m->reduce(v);
    alpha.set(t, v);
    bad.alpha = std::make_shared<const Cochain>(alpha);
    auto rep = verify_certificate(bad);
    o.require(!rep.ok(), "corrupted certificate accepted");
    auto chk = rep.find("alpha");
    o.require(chk && chk->status == "fail" && !chk->witness.empty(), "no witness tuple for corrupted alpha");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
