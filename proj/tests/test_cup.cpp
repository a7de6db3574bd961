#include <random>

#include <gtest/gtest.h>

#include "cohom/builtin_groups.hpp"
#include "cohom/cohomology.hpp"
#include "cohom/cup.hpp"

using namespace cohom;

namespace {

ModulePtr sign_module(const GroupPtr& g, std::int64_t d = 0) {
  std::vector<IntMatrix> act;
  const auto chi = *sign_character(*g);
  for (auto s : chi) act.push_back(IntMatrix{{s}});
  return make_module(g, {d}, act);
}

}  // namespace

TEST(Cup, LeibnizRule) {
  std::mt19937_64 rng(31);
  for (const char* name : {"cyclic:2", "cyclic:4", "symmetric:3", "klein"}) {
    auto g = builtin_group(name);
    std::vector<ModulePtr> mods{trivial_module(g, {0}), trivial_module(g, {6}), sign_module(g)};
    for (int trial = 0; trial < 20; ++trial) {
      auto ma = mods[rng() % 3], mb = mods[rng() % 3];
      const std::size_t p = rng() % 3, q = rng() % (3 - p);
      auto t = std::make_shared<const TensorModule>(tensor_module(ma, mb));
      auto pr = identity_pairing(t);
      auto a = random_cochain(ma, p, rng), b = random_cochain(mb, q, rng);
      EXPECT_EQ(coboundary(cup_with_pairing(pr, a, b)),
                cup_with_pairing(pr, coboundary(a), b) + scale(p % 2 ? -1 : 1, cup_with_pairing(pr, a, coboundary(b))));
    }
  }
}

TEST(Cup, Associativity) {
  std::mt19937_64 rng(37);
  auto g = builtin_group("symmetric:3");
  auto m = trivial_module(g, {0});
  auto ring = ring_pairing(m);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_cochain(m, rng() % 2, rng), b = random_cochain(m, 1, rng), c = random_cochain(m, rng() % 2, rng);
    EXPECT_EQ(cup_with_pairing(ring, cup_with_pairing(ring, a, b), c),
              cup_with_pairing(ring, a, cup_with_pairing(ring, b, c)));
  }
}

TEST(Cup, GradedCommutativityInCohomology) {
  for (const char* name : {"cyclic:4", "klein"}) {
    auto g = builtin_group(name);
    auto m = trivial_module(g, {2});
    auto ring = ring_pairing(m);
    auto h1 = cohomology(m, 1);
    auto h2 = cohomology(m, 2);
    for (const auto& a : h1.representatives)
      for (const auto& b : h2.representatives) {
        auto diff = cup_with_pairing(ring, a, b) - cup_with_pairing(ring, b, a);
        EXPECT_TRUE(solve_coboundary(diff).has_value()) << name;
      }
    auto z = trivial_module(g, {0});
    auto zring = ring_pairing(z);
    auto hz = cohomology(z, 2);
    for (const auto& a : hz.representatives)
      for (const auto& b : hz.representatives)
        EXPECT_TRUE(solve_coboundary(cup_with_pairing(zring, a, b) - cup_with_pairing(zring, b, a)).has_value());
  }
}

TEST(Cup, SquareOfTheOneDimensionalClassOverZ2) {
  // In H*(Z/2; Z/2) = F_2[x], x^2 is the nonzero class of H^2.
  auto m = trivial_module(cyclic_group(2), {2});
  auto x = cohomology(m, 1).representatives.at(0);
  auto x2 = cup_with_pairing(ring_pairing(m), x, x);
  EXPECT_TRUE(is_cocycle(x2));
  EXPECT_FALSE(solve_coboundary(x2).has_value());
}

TEST(Cup, TensorCupUsesTheDiagonalAction) {
  auto g = cyclic_group(2);
  auto s = sign_module(g);
  Cochain a(s, 1), b(s, 1);
  a.set(Tuple{1}, ModuleElement{1});
  b.set(Tuple{1}, ModuleElement{1});
  auto r = cup(a, b);
  // a(t) ⊗ t·b(t) = 1 ⊗ (-1).
  EXPECT_EQ(r.value.evaluate(Tuple{1, 1}), r.tensor->tensor(ModuleElement{1}, ModuleElement{-1}));
  EXPECT_TRUE(r.tensor->module()->is_trivial_action());
}

TEST(Cup, PairingMismatchesAreRejected) {
  auto g = cyclic_group(2);
  auto m = trivial_module(g, {2});
  auto other = trivial_module(g, {3});
  auto ring = ring_pairing(m);
  std::mt19937_64 rng(1);
  EXPECT_THROW(cup_with_pairing(ring, random_cochain(other, 1, rng), random_cochain(m, 1, rng)), Error);
  auto h = cyclic_group(3);
  EXPECT_THROW(cup(random_cochain(m, 1, rng), random_cochain(trivial_module(h, {2}), 1, rng)), Error);
  // Multiplication Z-sign x Z-sign -> Z-sign is not equivariant.
  auto s = sign_module(g);
  EXPECT_THROW(tensor_pairing(s, s, s, {{{1}}}), Error);
}

TEST(Cup, D2FormulaAgreesWithCup) {
  std::mt19937_64 rng(41);
  auto g = builtin_group("symmetric:3");
  auto a = trivial_module(g, {2, 2});
  auto m = sign_module(g, 4);
  auto hom = std::make_shared<const HomModule>(hom_module(a, m));
  auto c = coboundary(random_cochain(a, 1, rng));
  auto hc = cohomology(a, 2);
  for (const auto& r : hc.representatives) c = c + r;
  for (std::size_t deg = 0; deg <= 2; ++deg) {
    auto b = random_cochain(hom->module(), deg, rng);
    EXPECT_EQ(d2(hom, b, c), d2_formula(*hom, b, c));
  }
  Cochain bad(a, 2);
  auto z3 = cyclic_group(3);
  auto a3 = trivial_module(z3, {3});
  auto hom3 = std::make_shared<const HomModule>(hom_module(a3, a3));
  Cochain nc(a3, 2);
  nc.set(Tuple{1, 1}, ModuleElement{1});
  EXPECT_THROW(d2(hom3, Cochain(hom3->module(), 1), nc), Error);
}
