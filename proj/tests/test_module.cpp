#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "cohom/builtin_groups.hpp"
#include "cohom/module.hpp"

using namespace cohom;

namespace {

ModulePtr sign_module(const GroupPtr& g) {
  std::vector<IntMatrix> act;
  const auto chi = *sign_character(*g);
  for (auto s : chi) act.push_back(IntMatrix{{s}});
  return make_module(g, {0}, act);
}

// Z^2 with the generator of Z/2 swapping the coordinates.
ModulePtr permutation_module() {
  auto g = cyclic_group(2);
  return make_module(g, {0, 0}, {IntMatrix::identity(2), IntMatrix{{0, 1}, {1, 0}}});
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Module, FactorsAreRenormalized) {
  auto g = cyclic_group(3);
  EXPECT_EQ(trivial_module(g, {6})->factors(), (std::vector<std::int64_t>{6}));
  EXPECT_EQ(trivial_module(g, {2, 3})->factors(), (std::vector<std::int64_t>{6}));
  EXPECT_EQ(trivial_module(g, {1, 4})->factors(), (std::vector<std::int64_t>{4}));
  EXPECT_EQ(trivial_module(g, {0, 2})->factors(), (std::vector<std::int64_t>{2, 0}));
  EXPECT_EQ(trivial_module(g, {4, 6})->factors(), (std::vector<std::int64_t>{2, 12}));
  EXPECT_TRUE(trivial_module(g, {1, 1})->is_zero_module());
}

TEST(Module, RenormalizedActionStaysAHomomorphism) {
  // Z/2 ⊕ Z/3 with the sign action on the Z/3 summand, over Z/2.
  auto g = cyclic_group(2);
  auto m = make_module(g, {2, 3}, {IntMatrix::identity(2), IntMatrix{{1, 0}, {0, -1}}});
  ASSERT_EQ(m->factors(), (std::vector<std::int64_t>{6}));
  auto x = m->element_at(1);
  auto y = m->act(1, m->act(1, x));
  EXPECT_EQ(y, m->reduced(x));
  EXPECT_NE(m->act(1, x), x);
}

TEST(Module, ActionValidation) {
  auto g = cyclic_group(2);
  EXPECT_EQ(kind_of([&] { make_module(g, {0}, {IntMatrix{{-1}}, IntMatrix{{-1}}}); }), ErrorKind::BadIdentityAction);
  EXPECT_EQ(kind_of([&] { make_module(g, {0}, {IntMatrix{{1}}, IntMatrix{{2}}}); }), ErrorKind::ActionNotHomomorphic);
  EXPECT_EQ(kind_of([&] {
              make_module(g, {2, 0}, {IntMatrix::identity(2), IntMatrix{{1, 0}, {1, 1}}});
            }),
            ErrorKind::ActionBreaksRelations);
  auto z3 = cyclic_group(3);
  EXPECT_EQ(kind_of([&] { make_module(z3, {0}, {IntMatrix{{1}}, IntMatrix{{-1}}, IntMatrix{{-1}}}); }),
            ErrorKind::ActionNotHomomorphic);
}

TEST(Module, ElementIndexingRoundTrips) {
  auto m = trivial_module(cyclic_group(2), {2, 6});
  ASSERT_EQ(m->cardinality(), 12u);
  for (std::uint64_t i = 0; i < 12; ++i) EXPECT_EQ(m->index_of(m->element_at(i)), i);
  EXPECT_EQ(m->order_of(ModuleElement{1, 0}), 2);
  EXPECT_EQ(m->order_of(ModuleElement{1, 2}), 6);
  EXPECT_EQ(m->order_of(ModuleElement{0, 0}), 1);
  EXPECT_EQ(m->exponent(), 6);
  auto z = trivial_module(cyclic_group(2), {0});
  EXPECT_FALSE(z->order_of(ModuleElement{3}).has_value());
  EXPECT_FALSE(z->cardinality().has_value());
}

TEST(Module, InvariantsAndCoinvariants) {
  auto sign = sign_module(cyclic_group(2));
  EXPECT_TRUE(invariants(sign).module->is_zero_module());
  EXPECT_EQ(coinvariants(sign).module->factors(), (std::vector<std::int64_t>{2}));

  auto perm = permutation_module();
  auto inv = invariants(perm);
  EXPECT_EQ(inv.module->factors(), (std::vector<std::int64_t>{0}));
  EXPECT_TRUE(is_equivariant(inv.map));
  auto img = inv.map.apply(ModuleElement{1});
  EXPECT_EQ(std::abs(img[0]), 1);
  EXPECT_EQ(img[0], img[1]);
  auto co = coinvariants(perm);
  EXPECT_EQ(co.module->factors(), (std::vector<std::int64_t>{0}));
  EXPECT_EQ(co.map.apply(ModuleElement{1, 0}), co.map.apply(ModuleElement{0, 1}));
}

TEST(Module, TorsionSplit) {
  auto m = trivial_module(cyclic_group(3), {2, 0});
  auto s = torsion_submodule(m);
  EXPECT_EQ(s.torsion->factors(), (std::vector<std::int64_t>{2}));
  EXPECT_EQ(s.quotient->factors(), (std::vector<std::int64_t>{0}));
  EXPECT_EQ(s.projection.apply(s.inclusion.apply(ModuleElement{1})), (ModuleElement{0}));
  EXPECT_EQ(s.projection.apply(s.section.apply(ModuleElement{5})), (ModuleElement{5}));
}

TEST(Module, HomModuleStructure) {
  auto g = cyclic_group(2);
  EXPECT_EQ(hom_module(trivial_module(g, {2}), trivial_module(g, {4})).module()->factors(),
            (std::vector<std::int64_t>{2}));
  EXPECT_EQ(hom_module(trivial_module(g, {4}), trivial_module(g, {6})).module()->factors(),
            (std::vector<std::int64_t>{2}));
  EXPECT_TRUE(hom_module(trivial_module(g, {2}), trivial_module(g, {0})).module()->is_zero_module());
  EXPECT_EQ(kind_of([&] { hom_module(trivial_module(g, {0}), trivial_module(g, {2})); }), ErrorKind::SourceNotTorsion);
}

TEST(Module, HomActionIsConjugation) {
  auto g = builtin_group("symmetric:3");
  auto chi = *sign_character(*g);
  std::vector<IntMatrix> act;
  for (auto s : chi) act.push_back(IntMatrix{{s, 0}, {0, 1}});
  auto a = make_module(g, {3, 3}, act);
  auto m = make_module(g, {6}, [&] {
    std::vector<IntMatrix> v;
    for (auto s : chi) v.push_back(IntMatrix{{s}});
    return v;
  }());
  auto h = hom_module(a, m);
  ASSERT_EQ(*h.module()->cardinality(), 9u);
  for (std::uint64_t fi = 0; fi < 9; ++fi) {
    auto f = h.module()->element_at(fi);
    EXPECT_EQ(h.from_matrix(h.to_matrix(f)), f);
    for (GroupElement x = 0; x < g->order(); ++x) {
      auto gf = h.module()->act(x, f);
      for (std::uint64_t ai = 0; ai < *a->cardinality(); ++ai) {
        auto v = a->element_at(ai);
        EXPECT_EQ(h.evaluate(gf, v), m->act(x, h.evaluate(f, a->act(g->inv(x), v))));
      }
    }
  }
}

TEST(Module, TensorProducts) {
  auto g = cyclic_group(2);
  EXPECT_EQ(tensor_module(trivial_module(g, {4}), trivial_module(g, {6})).module()->factors(),
            (std::vector<std::int64_t>{2}));
  EXPECT_EQ(tensor_module(trivial_module(g, {0}), trivial_module(g, {3})).module()->factors(),
            (std::vector<std::int64_t>{3}));
  auto sign = sign_module(g);
  auto t = tensor_module(sign, sign);
  ASSERT_EQ(t.module()->factors(), (std::vector<std::int64_t>{0}));
  EXPECT_TRUE(t.module()->is_trivial_action());
  auto t2 = tensor_module(trivial_module(g, {4}), trivial_module(g, {0, 2}));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    ModuleElement a{static_cast<std::int64_t>(rng() % 4)}, b{static_cast<std::int64_t>(rng() % 9) - 4,
                                                             static_cast<std::int64_t>(rng() % 2)};
    ModuleElement a2{static_cast<std::int64_t>(rng() % 4)};
    auto lhs = t2.tensor(t2.left->add(a, a2), b);
    auto rhs = t2.module()->add(t2.tensor(a, b), t2.tensor(a2, b));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Module, PullbackActsThroughTheMap) {
  auto z4 = cyclic_group(4);
  auto z2 = cyclic_group(2);
  auto sign = sign_module(z2);
  auto p = pullback_module(sign, z4, {0, 1, 0, 1});
  EXPECT_EQ(p->act(1, ModuleElement{1}), (ModuleElement{-1}));
  EXPECT_EQ(p->act(2, ModuleElement{1}), (ModuleElement{1}));
}
