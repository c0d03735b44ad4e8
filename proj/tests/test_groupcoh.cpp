#include <gtest/gtest.h>

#include "emcoh/groupcoh.hpp"

using namespace emcoh;

namespace {

Int count_homs(const FiniteGroup& g, Int m) {
  // brute force over all maps G -> Z/m
  const Int n = g.order();
  std::vector<Int> f(n, 0);
  Int count = 0;
  while (true) {
    bool ok = true;
    for (Int a = 0; a < n && ok; ++a)
      for (Int b = 0; b < n && ok; ++b) ok = f[g.mul(a, b)] == mod(f[a] + f[b], m);
    count += ok;
    Int i = 0;
    while (i < n && ++f[i] == m) f[i++] = 0;
    if (i == n) break;
  }
  return count;
}

Int count_alternating_forms(const FinAbGroup& a) {
  // alternating bicharacters A x A -> Z/exp on a rank-2 group, fixed by b(e1, e2)
  const Int e = a.exponent();
  Int count = 0;
  for (Int v = 0; v < e; ++v) {
    bool ok = true;
    for (std::size_t i = 0; i < a.rank(); ++i) ok = ok && mulmod(a.factor(i), v, e) == 0;
    count += ok;
  }
  return count;
}

}  // namespace

TEST(FiniteGroup, TablesAndSubgroups) {
  auto d8 = FiniteGroup::dihedral(4);
  EXPECT_EQ(d8.order(), 8);
  EXPECT_FALSE(d8.is_abelian());
  EXPECT_EQ(d8.center().size(), 2u);
  EXPECT_EQ(d8.exponent(), 4);
  auto q = quotient(d8, d8.center());
  EXPECT_EQ(q.group.order(), 4);
  EXPECT_TRUE(q.group.is_abelian());
  EXPECT_EQ(q.group.exponent(), 2);
  EXPECT_THROW(quotient(d8, generated_subgroup(d8, {4})), ValidationError);
  EXPECT_THROW(FiniteGroup(std::vector<std::vector<Int>>{{0, 1}, {1, 1}}), ValidationError);
  auto q8 = FiniteGroup::quaternion();
  EXPECT_EQ(q8.center().size(), 2u);
  EXPECT_EQ(q8.exponent(), 4);
  EXPECT_EQ(stable_group_cohomology(q8, 2).order(), 1);
  EXPECT_EQ(group_cohomology(q8, FinAbGroup::cyclic(2), 1).invariants().literal(), "2,2");
}

TEST(GroupCohomology, FirstCohomologyIsHom) {
  std::vector<FiniteGroup> groups{FiniteGroup::abelian(FinAbGroup::parse("6")),
                                  FiniteGroup::abelian(FinAbGroup::parse("2,2")),
                                  FiniteGroup::dihedral(3), FiniteGroup::dihedral(4)};
  for (const auto& g : groups)
    for (Int m : {2, 3, 4}) EXPECT_EQ(group_cohomology(g, FinAbGroup::cyclic(m), 1).order(), count_homs(g, m));
  EXPECT_EQ(group_cohomology(groups[0], FinAbGroup::cyclic(4), 1).invariants().literal(), "2");
}

TEST(GroupCohomology, CyclicAndDihedralModTwo) {
  for (Int n : {2, 3, 4, 6})
    for (Int m : {2, 4, 6})
      for (int k : {1, 2, 3})
        EXPECT_EQ(group_cohomology(FiniteGroup::abelian(FinAbGroup::cyclic(n)), FinAbGroup::cyclic(m), k).order(),
                  gcd(n, m));
  auto d8 = FiniteGroup::dihedral(4);
  for (int k : {0, 1, 2, 3})
    EXPECT_EQ(group_cohomology(d8, FinAbGroup::cyclic(2), k).invariants(),
              FinAbGroup::from_orders(std::vector<Int>(k + 1, 2)));
}

TEST(GroupCohomology, StableSecondCohomologyOfRankTwo) {
  for (auto lit : {"2,2", "2,4", "3,3", "2,6"}) {
    auto a = FinAbGroup::parse(lit);
    auto h = stable_group_cohomology(FiniteGroup::abelian(a), 2);
    EXPECT_EQ(h.order(), count_alternating_forms(a)) << lit;
    EXPECT_EQ(h.invariants(), FinAbGroup::cyclic(gcd(a.factor(0), a.factor(1)))) << lit;
  }
  EXPECT_EQ(stable_group_cohomology(FiniteGroup::dihedral(4), 2).invariants().literal(), "2");
  EXPECT_EQ(stable_group_cohomology(FiniteGroup::dihedral(4), 3).invariants().literal(), "2,2,4");
  EXPECT_TRUE(stable_group_cohomology(FiniteGroup::abelian(FinAbGroup::cyclic(4)), 2).invariants().trivial());
}

TEST(GroupCohomology, RepresentativesAndRestriction) {
  auto d8 = FiniteGroup::dihedral(4);
  auto m = FinAbGroup::cyclic(4);
  auto h2 = group_cohomology(d8, m, 2);
  auto sub = subgroup(d8, generated_subgroup(d8, {1}));
  EXPECT_EQ(sub.group.order(), 4);
  for (std::size_t i = 0; i < h2.invariants().rank(); ++i) {
    auto c = h2.representative(i);
    ASSERT_TRUE(is_group_cocycle(c));
    EXPECT_EQ(h2.class_of(c), h2.invariants().basis(i));
    EXPECT_TRUE(is_group_cocycle(restriction(c, sub)));
  }
  auto h1 = group_cohomology(d8, m, 1);
  GroupCochain f(d8, m, 1);
  for (Int g : d8.nonidentity()) f.set({g}, {g * g + 1});
  auto df = group_differential(f);
  EXPECT_TRUE(h2.is_coboundary(df));
  EXPECT_EQ(group_differential(restriction(f, sub)), restriction(df, sub));
  auto p = h2.primitive(df);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(group_differential(*p), df);
  EXPECT_TRUE(h1.invariants().order() > 0);
}

TEST(GroupCohomology, SplitCentralInvolution) {
  auto k4 = FiniteGroup::abelian(FinAbGroup::parse("2,2"));
  auto z4 = FiniteGroup::abelian(FinAbGroup::parse("4"));
  auto d8 = FiniteGroup::dihedral(4);
  auto chi = split_central_involution(k4, k4.nonidentity()[0]);
  ASSERT_TRUE(chi.has_value());
  EXPECT_EQ((*chi)[k4.nonidentity()[0]], 1);
  EXPECT_FALSE(split_central_involution(z4, 2).has_value());
  EXPECT_FALSE(split_central_involution(d8, 2).has_value());
  EXPECT_THROW(split_central_involution(d8, 4), ValidationError);
}
