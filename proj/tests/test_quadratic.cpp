#include <gtest/gtest.h>

#include "emcoh/cohomology.hpp"
#include "emcoh/quadratic.hpp"

using namespace emcoh;

TEST(Quadratic, CountsMatchThirdBraidedCohomology) {
  for (auto g : {"2", "3", "4", "2,2", "6", "2,4", "8"})
    for (auto mm : {"4", "8", "2,4"}) {
      auto a = FinAbGroup::parse(g);
      auto m = FinAbGroup::parse(mm);
      EXPECT_EQ(quad_group(a, m), cohomology(a, m, Level::braided, 3).invariants()) << g << " " << mm;
    }
}

TEST(Quadratic, RoundTripThroughCocycle) {
  for (auto g : {"2", "4", "2,2", "2,4", "3"}) {
    auto a = FinAbGroup::parse(g);
    auto m = FinAbGroup::parse("8");
    QuadGroup qg(a, m);
    auto h = cohomology(a, m, Level::braided, 3);
    for (const auto& q : qg.all()) {
      auto c = to_braided_3cocycle(q);
      ASSERT_TRUE(is_cocycle(c)) << g;
      EXPECT_EQ(from_braided_3cocycle(c), q);
      EXPECT_EQ(qg.form(qg.coords(q)), q);
    }
  }
}

TEST(Quadratic, RejectsNonQuadratic) {
  auto a = FinAbGroup::parse("4");
  auto m = FinAbGroup::parse("8");
  std::vector<Element> v{{0}, {1}, {3}, {1}};  // q(2) != 4 q(1)
  EXPECT_THROW(QuadraticForm(a, m, v), ValidationError);
}

TEST(Quadratic, RadicalOfProductForm) {
  // q(e1) = 1/4, q(e2) = 1/2 on Z/2 x Z/2 in Z/8: radical <e2>, tau(e2) = 1/2
  auto a = FinAbGroup::parse("2,2");
  auto m = FinAbGroup::parse("8");
  auto q = QuadraticForm::from_generators(a, m, {{2}, {4}}, {{0}});
  auto rad = radical(q);
  EXPECT_EQ(rad.group.literal(), "2");
  EXPECT_EQ(rad.inclusion(rad.group.basis(0)), (Element{0, 1}));
  EXPECT_EQ(rad.tau(rad.group.basis(0)), (Element{4}));
}
