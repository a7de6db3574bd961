#include <gtest/gtest.h>

#include "cohom/builtin_groups.hpp"
#include "cohom/group.hpp"

using namespace cohom;

namespace {

void expect_group_axioms(const FiniteGroup& g) {
  for (GroupElement a = 0; a < g.order(); ++a) {
    EXPECT_EQ(g.mul(0, a), a);
    EXPECT_EQ(g.mul(a, 0), a);
    EXPECT_EQ(g.mul(a, g.inv(a)), 0u);
    for (GroupElement b = 0; b < g.order(); ++b)
      for (GroupElement c = 0; c < g.order(); ++c) EXPECT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
  }
}

}  // namespace

TEST(Group, BuiltinsSatisfyAxioms) {
  for (const char* name : {"trivial", "cyclic:1", "cyclic:5", "dihedral:3", "dihedral:4", "symmetric:3",
                           "quaternion", "klein", "prod(cyclic:2,cyclic:3)"})
    expect_group_axioms(*builtin_group(name));
}

TEST(Group, OrdersAndAbelianness) {
  EXPECT_EQ(builtin_group("cyclic:4")->order(), 4u);
  EXPECT_TRUE(builtin_group("cyclic:4")->is_abelian());
  auto s3 = builtin_group("symmetric:3");
  EXPECT_EQ(s3->order(), 6u);
  EXPECT_FALSE(s3->is_abelian());
  auto p = s3->non_commuting_pair();
  ASSERT_TRUE(p.has_value());
  EXPECT_NE(s3->mul(p->first, p->second), s3->mul(p->second, p->first));
  EXPECT_EQ(builtin_group("symmetric:4")->order(), 24u);
  EXPECT_EQ(builtin_group("dihedral:4")->order(), 8u);
  EXPECT_TRUE(builtin_group("klein")->is_abelian());
}

TEST(Group, QuaternionHasSixElementsOfOrderFour) {
  auto q = builtin_group("quaternion");
  int four = 0, two = 0;
  for (GroupElement x = 0; x < q->order(); ++x) {
    if (q->element_order(x) == 4) ++four;
    if (q->element_order(x) == 2) ++two;
  }
  EXPECT_EQ(four, 6);
  EXPECT_EQ(two, 1);
  EXPECT_FALSE(q->is_abelian());
}

TEST(Group, UnknownFamilyIsRejected) {
  try {
    builtin_group("monster");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownFamily);
  }
}

TEST(Group, TableWithIdentityElsewhereIsNormalized) {
  // Z/3 with the identity stored at index 2.
  std::vector<std::vector<std::size_t>> t{{1, 2, 0}, {2, 0, 1}, {0, 1, 2}};
  auto g = group_from_table(t, {"a", "b", "e"});
  EXPECT_EQ(g->label(0), "e");
  expect_group_axioms(*g);
}

TEST(Group, NonAssociativeTableGivesWitness) {
  // A Latin square with identity 0 that is not associative.
  std::vector<std::vector<std::size_t>> t{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  try {
    group_from_table(t);
    FAIL();
  } catch (const Error& e) {
    ASSERT_EQ(e.kind(), ErrorKind::NotAssociative);
    auto w = e.witness();
    ASSERT_EQ(w.size(), 3u);
    EXPECT_NE(t[t[w[0]][w[1]]][w[2]], t[w[0]][t[w[1]][w[2]]]);
  }
}

TEST(Group, MissingIdentityAndInverse) {
  try {
    group_from_table({{1, 0}, {0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoIdentity);
  }
  try {
    group_from_table({{0, 1}, {1, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoInverse);
  }
  try {
    group_from_table({{0, 5}, {1, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IndexOutOfRange);
  }
}

TEST(Group, CheckedAccessorsRejectBadIndices) {
  auto g = cyclic_group(3);
  EXPECT_THROW(g->multiply(0, 3), Error);
  EXPECT_THROW(g->inverse(7), Error);
  EXPECT_EQ(g->multiply(1, 2), 0u);
}

TEST(Group, SignCharacter) {
  for (const char* name : {"cyclic:2", "cyclic:4", "symmetric:3", "dihedral:4", "klein"}) {
    auto g = builtin_group(name);
    auto chi = sign_character(*g);
    ASSERT_TRUE(chi.has_value()) << name;
    int neg = 0;
    for (GroupElement a = 0; a < g->order(); ++a) {
      if ((*chi)[a] < 0) ++neg;
      for (GroupElement b = 0; b < g->order(); ++b) EXPECT_EQ((*chi)[g->mul(a, b)], (*chi)[a] * (*chi)[b]);
    }
    EXPECT_EQ(2 * neg, static_cast<int>(g->order()));
  }
  EXPECT_FALSE(sign_character(*cyclic_group(3)).has_value());
}
