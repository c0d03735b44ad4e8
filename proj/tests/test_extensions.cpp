#include <gtest/gtest.h>

#include "emcoh/census.hpp"

using namespace emcoh;

namespace {

FiniteGroup ab(const char* lit) { return FiniteGroup::abelian(FinAbGroup::parse(lit)); }

const FinAbGroup Z2 = FinAbGroup::parse("2");
const FinAbGroup M8 = FinAbGroup::parse("8");

QuadraticForm zero_form() { return QuadraticForm::from_generators(Z2, M8, {{0}}, {}); }
QuadraticForm semion() { return QuadraticForm::from_generators(Z2, M8, {{2}}, {}); }
QuadraticForm radical_form() {
  return QuadraticForm::from_generators(FinAbGroup::parse("2,2"), M8, {{2}, {4}}, {{0}});
}

}  // namespace

TEST(ExSym, ClosedFormValues) {
  for (auto a : {"2", "4", "2,2"})
    EXPECT_TRUE(ex_sym_group(FinAbGroup::parse(a), symmetric_data(ab("2"), 1)).trivial()) << a;
  EXPECT_EQ(ex_sym_group(Z2, symmetric_data(ab("2"), 0)).literal(), "2,2");
  EXPECT_EQ(ex_sym_group(Z2, symmetric_data(ab("4"), 2)).literal(), "2");
}

TEST(ExSym, XiAndFunSym) {
  auto t1 = xi_t_and_funsym(Z2, symmetric_data(ab("2,2"), 0));
  EXPECT_EQ(t1.pi0, t1.h2);
  for (const auto& row : t1.xi)
    for (const auto& v : row) EXPECT_TRUE(t1.coeff.is_zero(v));
  auto sv = xi_t_and_funsym(Z2, symmetric_data(ab("2"), 1));
  EXPECT_EQ(sv.pi0, sv.h2);
  EXPECT_TRUE(kernel_cokernel(sv.obstruction).kernel.trivial());
  EXPECT_EQ(sv.bookkeeping, 1);
  auto z4 = xi_t_and_funsym(Z2, symmetric_data(ab("4"), 2));
  EXPECT_EQ(z4.bookkeeping, 2);
}

TEST(ExSym, BookkeepingAgreesWithClosedForm) {
  std::vector<FiniteGroup> groups{ab("2"), ab("4"), ab("2,2"), ab("6"), ab("2,4"), ab("8"),
                                  FiniteGroup::dihedral(4), FiniteGroup::quaternion()};
  for (const auto& g : groups)
    for (Int t : g.center()) {
      if (g.mul(t, t) != g.identity()) continue;
      for (auto a : {"2", "3", "4", "2,2"}) {
        auto s = symmetric_data(g, t);
        auto A = FinAbGroup::parse(a);
        EXPECT_EQ(xi_t_and_funsym(A, s).bookkeeping, ex_sym_group(A, s).order()) << g.order() << " " << t << " " << a;
      }
    }
}

TEST(Zesting, PW1) {
  auto f = grading_characters(Z2, Z2, 8);
  ASSERT_EQ(f.size(), 2u);
  auto nontriv = f[0][3] ? f[0] : f[1];
  auto zero_f = f[0][3] ? f[1] : f[0];
  auto id = GroupHom::from_images(Z2, Z2, {{1}});
  auto q = pw1(zero_form(), Z2, nontriv, id);
  EXPECT_EQ(q({1})[0] * 2, q.coeff().factor(0));
  EXPECT_TRUE(pw1(zero_form(), Z2, zero_f, id)({1})[0] == 0);
  EXPECT_TRUE(pw1(zero_form(), Z2, nontriv, GroupHom::zero(Z2, Z2))({1})[0] == 0);
  EXPECT_THROW(pw1(semion(), Z2, zero_f, id), ValidationError);
}

TEST(Zesting, PW2IsACocycle) {
  for (auto base : {zero_form(), radical_form()})
    for (auto a : {"2", "4", "2,2"}) {
      auto A = FinAbGroup::parse(a);
      if (A.order() * base.group().order() > 8) continue;
      for (const auto& f : grading_characters(A, base.group(), 8))
        for (const auto& L : symmetric_cocycles(A, base)) {
          auto c = pw2(base, A, f, L);
          EXPECT_TRUE(is_cocycle(c));
          bool lzero = std::all_of(L.begin(), L.end(), [](Int v) { return v == 0; });
          if (lzero) EXPECT_TRUE(c.is_zero());
        }
    }
}

TEST(Zesting, OracleBasics) {
  auto d = trivial_datum(zero_form(), Z2);
  EXPECT_TRUE(skeletal_oracle(d).ok);
  // twist by a braided coboundary
  Cochain b(Z2, M8, Level::braided, 2);
  b.set(0, std::vector<Int>{1, 1}, {3});
  auto db = differential(b);
  auto t = d;
  t.twist = db;
  EXPECT_TRUE(skeletal_oracle(t).ok);
  // twist by the braided 3-cocycle of q(1) = 1/4
  auto tq = d;
  tq.twist = to_braided_3cocycle(QuadraticForm::from_generators(Z2, M8, {{2}}, {}));
  EXPECT_TRUE(skeletal_oracle(tq).ok);
  // a non-cocycle twist
  auto bad = d;
  bad.twist.set(bad.twist.shape_index("3"), std::vector<Int>{1, 1, 1}, {1});
  EXPECT_FALSE(skeletal_oracle(bad).ok);
  // corrupt kappa at one pair
  auto k = d;
  k.kappa[1 * 2 + 1] = 1;
  auto r = skeletal_oracle(k);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.check.substr(0, 7), "hexagon");
}

TEST(Zesting, OracleEquivalenceSmall) {
  for (auto base : {zero_form(), semion(), radical_form()})
    for (auto a : {"1", "2", "4", "2,2"}) {
      auto A = FinAbGroup::parse(a);
      if (A.order() * base.group().order() > 8) continue;
      for (const auto& f : grading_characters(A, base.group(), 8))
        for (const auto& L : symmetric_cocycles(A, base)) {
          auto d = trivial_datum(base, A);
          d.f = f;
          d.L = L;
          bool triv = pw2_trivial(base, A, f, L);
          auto sol = solve_xi_kappa(d);
          EXPECT_EQ(triv, sol.has_value()) << base.group().literal() << " " << a;
          if (sol) EXPECT_TRUE(skeletal_oracle(*sol).ok);
        }
    }
}

TEST(Zesting, EnumerateExamples) {
  auto s = enumerate_quasi_trivial(semion(), Z2);
  EXPECT_EQ(s.orbits.size(), 1u);
  EXPECT_EQ(s.total, 4);
  auto z = enumerate_quasi_trivial(zero_form(), Z2);
  for (const auto& o : z.orbits) {
    bool fzero = std::all_of(o.f.begin(), o.f.end(), [](Int v) { return v == 0; });
    EXPECT_EQ(o.fiber.literal(), fzero ? "4" : "2");
  }
}

TEST(Zesting, CensusMatchesFibrationCount) {
  for (auto base : {zero_form(), semion(), radical_form()}) {
    auto rep = enumerate_quasi_trivial(base, Z2);
    auto census = zesting_census(base, Z2);
    EXPECT_EQ(static_cast<Int>(census.classes.size()), rep.total) << base.group().literal();
    for (const auto& c : census.classes) EXPECT_TRUE(skeletal_oracle(c).ok);
  }
}

TEST(Zesting, PW2IsQuadraticInL) {
  for (auto [base, a] : {std::pair{zero_form(), "2,2"}, std::pair{radical_form(), "2"}, std::pair{zero_form(), "4"}}) {
    auto A = FinAbGroup::parse(a);
    auto add0 = base.group().addition_table();
    const Int m = base.group().order();
    auto sum = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
      std::vector<Int> r(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) r[i] = add0[x[i] * m + y[i]];
      return r;
    };
    auto Ls = symmetric_cocycles(A, base);
    for (const auto& f : grading_characters(A, base.group(), 8))
      for (const auto& l1 : Ls)
        for (const auto& l2 : Ls)
          for (const auto& l3 : Ls) {
            auto c = pw2(base, A, f, sum(sum(l1, l2), l3)) - pw2(base, A, f, sum(l1, l2)) -
                     pw2(base, A, f, sum(l1, l3)) - pw2(base, A, f, sum(l2, l3)) + pw2(base, A, f, l1) +
                     pw2(base, A, f, l2) + pw2(base, A, f, l3);
            EXPECT_TRUE(stably_trivial(c)) << a;
          }
  }
}
