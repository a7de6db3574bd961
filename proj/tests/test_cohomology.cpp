#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "cohom/builtin_groups.hpp"
#include "cohom/cohomology.hpp"

using namespace cohom;

namespace {

using Inv = std::vector<std::int64_t>;

ModulePtr sign_module(const GroupPtr& g) {
  std::vector<IntMatrix> act;
  const auto chi = *sign_character(*g);
  for (auto s : chi) act.push_back(IntMatrix{{s}});
  return make_module(g, {0}, act);
}

// |H^n| by listing every cochain of a finite module.
std::uint64_t brute_force_order(const ModulePtr& m, std::size_t n) {
  auto count = [&](std::size_t deg, bool cocycles_only, std::set<std::vector<std::int64_t>>* images) {
    const std::uint64_t slots = tuple_count(m->group()->order(), deg);
    const std::uint64_t card = *m->cardinality();
    std::uint64_t total = 1, hits = 0;
    for (std::uint64_t i = 0; i < slots; ++i) total *= card;
    for (std::uint64_t code = 0; code < total; ++code) {
      Cochain f(m, deg);
      std::uint64_t c = code;
      for (std::uint64_t k = 0; k < slots; ++k, c /= card) f.set_key(k, m->element_at(c % card));
      if (images) images->insert(to_vector(coboundary(f)));
      if (!cocycles_only || is_cocycle(f)) ++hits;
    }
    return hits;
  };
  std::set<std::vector<std::int64_t>> b;
  count(n - 1, false, &b);
  return count(n, true, nullptr) / b.size();
}

std::uint64_t product(const Inv& v) {
  std::uint64_t p = 1;
  for (auto d : v) p *= d;
  return p;
}

// Sorted prime-power decomposition; 0 stays 0.
Inv primary(const Inv& v) {
  Inv out;
  for (auto d : v) {
    if (d == 0) {
      out.push_back(0);
      continue;
    }
    for (std::int64_t p = 2; d > 1; ++p) {
      std::int64_t q = 1;
      while (d % p == 0) {
        d /= p;
        q *= p;
      }
      if (q > 1) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Cohomology, KnownValues) {
  auto z2 = cyclic_group(2);
  auto f2 = trivial_module(z2, {2});
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(cohomology(f2, n).invariants, Inv{2}) << n;
  auto sign = sign_module(z2);
  EXPECT_EQ(cohomology(sign, 0).invariants, Inv{});
  EXPECT_EQ(cohomology(sign, 1).invariants, Inv{2});
  EXPECT_EQ(cohomology(sign, 2).invariants, Inv{});
  EXPECT_EQ(cohomology(sign, 3).invariants, Inv{2});
  auto z = trivial_module(z2, {0});
  EXPECT_EQ(cohomology(z, 0).invariants, Inv{0});
  EXPECT_EQ(cohomology(z, 1).invariants, Inv{});
  EXPECT_EQ(cohomology(z, 2).invariants, Inv{2});
  EXPECT_EQ(cohomology(z, 4).invariants, Inv{2});
  EXPECT_EQ(cohomology(trivial_module(builtin_group("klein"), {2}), 2).invariants, (Inv{2, 2, 2}));
  auto s3 = builtin_group("symmetric:3");
  EXPECT_EQ(cohomology(trivial_module(s3, {0}), 2).invariants, Inv{2});
  EXPECT_EQ(cohomology(trivial_module(s3, {0}), 4).invariants, Inv{6});
  EXPECT_EQ(cohomology(trivial_module(cyclic_group(3), {3}), 1).invariants, Inv{3});
  EXPECT_EQ(cohomology(trivial_module(cyclic_group(4), {0}), 2).invariants, Inv{4});
  EXPECT_EQ(cohomology(trivial_module(builtin_group("quaternion"), {0}), 4).invariants, Inv{8});
}

TEST(Cohomology, RepresentativesHaveTheRightOrder) {
  auto s3 = builtin_group("symmetric:3");
  for (auto m : {trivial_module(s3, {0}), sign_module(s3), trivial_module(s3, {6})}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      auto h = cohomology(m, n);
      ASSERT_EQ(h.representatives.size(), h.invariants.size());
      for (std::size_t i = 0; i < h.invariants.size(); ++i) {
        const auto& r = h.representatives[i];
        EXPECT_TRUE(is_cocycle(r));
        EXPECT_TRUE(solve_coboundary(scale(h.invariants[i], r)).has_value());
        for (std::int64_t k = 1; k < h.invariants[i]; ++k) {
          if (h.invariants[i] % k == 0) {
            EXPECT_FALSE(solve_coboundary(scale(k, r)).has_value());
          }
        }
      }
    }
  }
}

TEST(Cohomology, AgreesWithEnumeration) {
  auto z4 = cyclic_group(4);
  auto klein = builtin_group("klein");
  struct Case {
    ModulePtr m;
    std::size_t n;
  };
  std::vector<Case> cases{{trivial_module(z4, {2}), 1}, {trivial_module(z4, {2}), 2},
                          {trivial_module(klein, {2}), 1}, {trivial_module(klein, {2}), 2},
                          {trivial_module(cyclic_group(3), {3}), 2}, {trivial_module(cyclic_group(2), {4}), 3},
                          {trivial_module(cyclic_group(3), {6}), 2}};
  {
    auto s3 = builtin_group("symmetric:3");
    std::vector<IntMatrix> act;
    const auto chi = *sign_character(*s3);
    for (auto c : chi) act.push_back(IntMatrix{{c}});
    cases.push_back({make_module(s3, {4}, act), 1});
    cases.push_back({make_module(cyclic_group(2), {3}, {IntMatrix{{1}}, IntMatrix{{-1}}}), 2});
  }
  for (const auto& c : cases) EXPECT_EQ(product(cohomology(c.m, c.n).invariants), brute_force_order(c.m, c.n));
}

// Uniform torsion coefficients take a mod-d route; a direct sum with Z does
// not, so both routes must agree on the summands.
TEST(Cohomology, DirectSumsAgreeAcrossMethods) {
  for (const char* name : {"cyclic:4", "klein", "symmetric:3", "dihedral:4"}) {
    auto g = builtin_group(name);
    const auto chi = *sign_character(*g);
    for (std::int64_t d : {2, 4, 6}) {
      std::vector<IntMatrix> tor, mixed;
      for (auto c : chi) {
        tor.push_back(IntMatrix{{c}});
        mixed.push_back(IntMatrix{{c, 0}, {0, 1}});
      }
      auto a = make_module(g, {d}, tor);
      auto z = trivial_module(g, {0});
      auto sum = make_module(g, {d, 0}, mixed);
      for (std::size_t n = 1; n <= 3; ++n) {
        Inv both = cohomology(a, n).invariants;
        for (auto x : cohomology(z, n).invariants) both.push_back(x);
        SCOPED_TRACE(std::string(name) + " d=" + std::to_string(d) + " n=" + std::to_string(n));
        const auto h = cohomology(sum, n);
        EXPECT_EQ(primary(h.invariants), primary(both)) << name << " d=" << d << " n=" << n;
        for (std::size_t i = 0; i < h.invariants.size(); ++i) {
          EXPECT_TRUE(is_cocycle(h.representatives[i]));
          EXPECT_TRUE(solve_coboundary(scale(h.invariants[i], h.representatives[i])).has_value());
        }
      }
    }
  }
}

TEST(Cohomology, SolveCoboundary) {
  std::mt19937_64 rng(17);
  auto g = builtin_group("dihedral:4");
  auto m = trivial_module(g, {0, 4});
  for (std::size_t n = 1; n <= 2; ++n) {
    auto f = coboundary(random_cochain(m, n - 1, rng));
    auto x = solve_coboundary(f);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(coboundary(*x), f);
  }
  auto h = cohomology(trivial_module(cyclic_group(2), {2}), 2);
  EXPECT_FALSE(solve_coboundary(h.representatives[0]).has_value());
  EXPECT_THROW(solve_coboundary(Cochain(m, 0)), Error);
}

TEST(Cohomology, AveragingHomotopy) {
  std::mt19937_64 rng(23);
  for (const char* name : {"cyclic:2", "cyclic:3", "symmetric:3"}) {
    auto g = builtin_group(name);
    auto m = trivial_module(g, {0, 0});
    for (std::size_t n = 1; n <= 3; ++n) {
      Cochain f = coboundary(random_cochain(m, n - 1, rng));
      if (n % 2 == 0) {
        auto h = cohomology(trivial_module(g, {0}), n);
        if (!h.representatives.empty()) {
          Cochain r(m, n);
          h.representatives[0].for_each_nonzero(
              [&](std::uint64_t k, ElementView v) { r.set_key(k, ModuleElement{v[0], 2 * v[0]}); });
          f = f + r;
        }
      }
      auto h = averaging_homotopy(f);
      EXPECT_EQ(h.denominator, static_cast<std::int64_t>(g->order()));
      EXPECT_EQ(coboundary(h.numerator), scale(h.denominator, f)) << name << " " << n;
    }
  }
  auto t = trivial_module(cyclic_group(2), {2});
  EXPECT_THROW(averaging_homotopy(Cochain(t, 2)), Error);
}

TEST(Cohomology, ResourceLimit) {
  Limits small;
  small.max_matrix_entries = 100;
  try {
    cohomology(trivial_module(builtin_group("symmetric:3"), {2}), 3, small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ResourceLimit);
  }
}
