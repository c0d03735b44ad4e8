#include <gtest/gtest.h>

#include <random>

#include "emcoh/cohomology.hpp"

using namespace emcoh;

namespace {

std::string inv(const FinAbGroup& a, const FinAbGroup& m, Level l, int n) {
  return cohomology(a, m, l, n).invariants().literal();
}

Cochain random_cochain(const FinAbGroup& a, const FinAbGroup& m, Level l, int n, std::mt19937& rng) {
  Cochain c(a, m, l, n);
  for (std::size_t j = 0; j < m.rank(); ++j)
    for (std::size_t b = 0; b < c.dim(); ++b) c.values()[j * c.dim() + b] = rng() % m.factor(j);
  return c;
}

}  // namespace

TEST(Cohomology, Z2BraidedTable) {
  auto a = FinAbGroup::parse("2");
  auto m = FinAbGroup::parse("8");
  EXPECT_EQ(inv(a, m, Level::braided, 0), "8");
  EXPECT_EQ(inv(a, m, Level::braided, 1), "2");
  EXPECT_EQ(inv(a, m, Level::braided, 2), "2");
  EXPECT_EQ(inv(a, m, Level::braided, 3), "4");
  EXPECT_EQ(inv(a, m, Level::braided, 4), "2,4");
  EXPECT_EQ(inv(a, m, Level::sylleptic, 3), "2");
  EXPECT_EQ(inv(a, m, Level::sylleptic, 4), "2,2");
  EXPECT_EQ(inv(a, m, Level::symmetric, 4), "2,2");
  EXPECT_EQ(inv(a, FinAbGroup::parse("2,4"), Level::braided, 4), "2,2,2,4");
}

TEST(Cohomology, RepresentativesRoundTrip) {
  std::mt19937 rng(5);
  for (auto g : {"2", "4", "2,2", "6"})
    for (auto mm : {"4", "2,4", "12"})
      for (auto l : {Level::braided, Level::sylleptic})
        for (int n = 0; n <= 4; ++n) {
          auto a = FinAbGroup::parse(g);
          auto m = FinAbGroup::parse(mm);
          auto h = cohomology(a, m, l, n);
          for (std::size_t i = 0; i < h.invariants().rank(); ++i) {
            auto r = h.representative(i);
            ASSERT_TRUE(is_cocycle(r));
            EXPECT_EQ(h.class_of(r), h.invariants().basis(i)) << g << " " << mm << " " << n;
          }
          if (n == 0) continue;
          // coboundaries have class zero and a primitive
          auto b = random_cochain(a, m, l, n - 1, rng);
          auto db = differential(b);
          EXPECT_TRUE(h.invariants().is_zero(h.class_of(db)));
          auto p = h.primitive(db);
          ASSERT_TRUE(p.has_value());
          EXPECT_EQ(differential(*p), db);
          // a nonzero class has no primitive
          if (h.invariants().rank() > 0) EXPECT_FALSE(h.is_coboundary(h.representative(0)));
        }
}

TEST(Cohomology, ClassOfIsAdditive) {
  std::mt19937 rng(11);
  auto a = FinAbGroup::parse("2,2");
  auto m = FinAbGroup::parse("8");
  auto h = cohomology(a, m, Level::braided, 3);
  for (int t = 0; t < 20; ++t) {
    auto x = h.invariants().element(rng() % h.order());
    auto y = h.invariants().element(rng() % h.order());
    auto cx = h.cocycle_of(x) + differential(random_cochain(a, m, Level::braided, 2, rng));
    auto cy = h.cocycle_of(y);
    EXPECT_EQ(h.class_of(cx + cy), h.invariants().add(x, y));
  }
}

TEST(Cohomology, OrdinaryMatchesKnownGroupCohomology) {
  // H^n(Z/m, Z/8) = Z/gcd(m,8) for n >= 1
  for (Int mm : {2, 3, 4}) {
    auto a = FinAbGroup::cyclic(mm);
    for (int n = 1; n <= 3; ++n)
      EXPECT_EQ(inv(a, FinAbGroup::cyclic(8), Level::ordinary, n), FinAbGroup::cyclic(gcd(mm, 8)).literal());
  }
}

TEST(Cohomology, StableGroups) {
  auto z2 = FinAbGroup::parse("2");
  EXPECT_EQ(stable_cohomology(z2, Level::braided, 3).invariants().literal(), "4");
  EXPECT_EQ(stable_cohomology(z2, Level::braided, 4).invariants().literal(), "2");
  EXPECT_EQ(stable_cohomology(z2, Level::sylleptic, 4).invariants().literal(), "2");
  EXPECT_EQ(stable_cohomology(z2, Level::braided, 2).invariants().literal(), "1");
  EXPECT_EQ(stable_cohomology(FinAbGroup::parse("4"), Level::braided, 3).invariants().literal(), "8");
  EXPECT_EQ(stable_cohomology(FinAbGroup::parse("2,2"), Level::braided, 3).invariants().literal(), "2,4,4");
}

TEST(Cohomology, ThetaSymVanishesOnCoboundaries) {
  std::mt19937 rng(2);
  auto a = FinAbGroup::parse("2,2");
  auto m = FinAbGroup::parse("8");
  for (int t = 0; t < 10; ++t) {
    auto b = differential(random_cochain(a, m, Level::symmetric, 3, rng));
    auto th = theta_sym(b);
    for (auto& x : th.domain().elements()) EXPECT_TRUE(m.is_zero(th(x)));
  }
}

TEST(Cohomology, ThetaBrVanishesOnZ2) {
  auto a = FinAbGroup::parse("2");
  auto h = stable_cohomology(a, Level::braided, 4);
  for (auto& c : h.representatives()) {
    auto t = theta_br(c);
    EXPECT_TRUE(t.ext.is_zero(t.cls));
  }
}

TEST(Cohomology, DegreeFiveRejected) {
  EXPECT_THROW(cohomology(FinAbGroup::parse("2"), FinAbGroup::parse("8"), Level::braided, 5), ValidationError);
}
