#include <gtest/gtest.h>

#include <random>
#include <set>

#include "emcoh/abelian.hpp"
#include "emcoh/modsnf.hpp"

using namespace emcoh;

namespace {

// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}, D_k = gcd of k x k minors.
BigInt det_bareiss(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

void combos(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
            std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combos(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<BigInt> invariant_factors_by_minors(const IntMatrix& a) {
  std::vector<BigInt> dk{1};
  const std::size_t r = std::min(a.rows(), a.cols());
  for (std::size_t k = 1; k <= r; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    combos(a.rows(), k, 0, cur, rs);
    combos(a.cols(), k, 0, cur, cs);
    BigInt g = 0;
    for (auto& ri : rs)
      for (auto& ci : cs) {
        std::vector<std::vector<BigInt>> m(k, std::vector<BigInt>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = a(ri[i], ci[j]);
        g = boost::multiprecision::gcd(g, abs(det_bareiss(m)));
      }
    if (g == 0) break;
    dk.push_back(g);
  }
  std::vector<BigInt> out;
  for (std::size_t k = 1; k < dk.size(); ++k) out.push_back(dk[k] / dk[k - 1]);
  return out;
}

}  // namespace

TEST(Abelian, LiteralsNormalize) {
  EXPECT_EQ(FinAbGroup::parse("2,2,4").literal(), "2,2,4");
  EXPECT_EQ(FinAbGroup::parse("4,2,2").literal(), "2,2,4");
  EXPECT_EQ(FinAbGroup::parse("6").literal(), "6");
  EXPECT_EQ(FinAbGroup::parse("2,3").literal(), "6");
  EXPECT_EQ(FinAbGroup::parse("4,6").literal(), "2,12");
  EXPECT_EQ(FinAbGroup::parse("1").literal(), "1");
  EXPECT_EQ(FinAbGroup::parse("1").order(), 1);
  EXPECT_THROW(FinAbGroup::parse("0"), ValidationError);
  EXPECT_THROW(FinAbGroup::parse("a"), ValidationError);
}

TEST(Abelian, ElementIndexing) {
  auto g = FinAbGroup::parse("2,4");
  auto els = g.elements();
  ASSERT_EQ(els.size(), 8u);
  EXPECT_EQ(els[1], (Element{0, 1}));
  EXPECT_EQ(els[4], (Element{1, 0}));
  for (Int i = 0; i < 8; ++i) EXPECT_EQ(g.index_of(g.element(i)), i);
}

TEST(Abelian, SmithMatchesDeterminantalDivisors) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> dim(1, 8), val(-20, 20);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    if (r * c > 36) c = std::max<std::size_t>(1, 36 / r);
    IntMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a(i, j) = val(rng) * (trial % 3 == 0 ? (j + 1) : 1);
    auto s = smith_normal_form(a);
    EXPECT_EQ(s.u * a * s.v, s.d);
    EXPECT_EQ(s.u * s.u_inv, IntMatrix::identity(r));
    EXPECT_EQ(s.v * s.v_inv, IntMatrix::identity(c));
    auto expect = invariant_factors_by_minors(a);
    ASSERT_EQ(s.rank, expect.size());
    for (std::size_t i = 0; i < s.rank; ++i) EXPECT_EQ(s.d(i, i), expect[i]);
  }
}

TEST(Abelian, LocalSnfAgreesWithIntegerSnf) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 7), val(-9, 9);
  for (PrimePower pk : {PrimePower{2, 3, 8}, PrimePower{3, 2, 9}, PrimePower{2, 1, 2}}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t r = dim(rng), c = dim(rng);
      IntMatrix a(r, c);
      DenseMod d(r, c, pk.q);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
          int v = val(rng);
          a(i, j) = v;
          d(i, j) = mod(v, pk.q);
        }
      LocalSnf ls(d, pk, {true, true, true});
      auto s = smith_normal_form(a);
      // p-adic valuations of the integer invariants, capped at k
      std::vector<int> expect;
      for (std::size_t i = 0; i < s.rank; ++i) {
        BigInt x = s.d(i, i);
        int v = 0;
        while (v < pk.k && x % pk.p == 0) {
          x /= pk.p;
          ++v;
        }
        if (v < pk.k) expect.push_back(v);
      }
      std::sort(expect.begin(), expect.end());
      std::vector<int> got;
      for (std::size_t i = 0; i < ls.rank(); ++i) got.push_back(ls.valuation(i));
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, expect);
      // solve round trip
      std::vector<Int> x(c);
      for (auto& xi : x) xi = mod(val(rng), pk.q);
      auto b = d.apply(x);
      auto sol = ls.solve(b);
      ASSERT_TRUE(sol.has_value());
      EXPECT_EQ(d.apply(*sol), b);
    }
  }
}

TEST(Abelian, KernelCokernelOrders) {
  // multiplication by 2 on Z/2 + Z/4 + Z/3
  auto a = FinAbGroup::parse("2,4,3");
  auto ops = subgroup_ops(a, 2);
  EXPECT_EQ(ops.torsion.literal(), "2,2");
  EXPECT_EQ(ops.multiples.literal(), "6");
  EXPECT_EQ(ops.quotient.literal(), "2,2");
  for (auto& x : ops.torsion.elements()) {
    auto y = ops.torsion_inclusion(x);
    EXPECT_TRUE(a.is_zero(a.scale(2, y)));
  }
  // inclusion injective
  std::set<Element> seen;
  for (auto& x : ops.torsion.elements()) seen.insert(ops.torsion_inclusion(x));
  EXPECT_EQ(seen.size(), 4u);
}

TEST(Abelian, KernelCokernelBruteForce) {
  std::mt19937 rng(99);
  std::vector<std::string> groups = {"2", "4", "2,2", "2,4", "3", "6", "2,2,2", "8"};
  for (int trial = 0; trial < 40; ++trial) {
    auto d = FinAbGroup::parse(groups[rng() % groups.size()]);
    auto c = FinAbGroup::parse(groups[rng() % groups.size()]);
    HomGroup hg(d, c);
    auto e = hg.group().element(rng() % hg.group().order());
    auto h = hg.to_hom(e);
    EXPECT_EQ(hg.from_hom(h), e);
    Int ker = 0;
    std::set<Element> img;
    for (auto& x : d.elements()) {
      auto y = h(x);
      if (c.is_zero(y)) ++ker;
      img.insert(y);
    }
    auto kc = kernel_cokernel(h);
    EXPECT_EQ(kc.kernel.order(), ker);
    EXPECT_EQ(kc.cokernel.order() * static_cast<Int>(img.size()), c.order());
    auto im = image(h);
    EXPECT_EQ(im.image.order(), static_cast<Int>(img.size()));
    for (auto& y : img) {
      auto x = preimage(h, y);
      ASSERT_TRUE(x.has_value());
      EXPECT_EQ(h(*x), y);
    }
  }
}

TEST(Abelian, HomExtExterior) {
  auto a = FinAbGroup::parse("2,4");
  auto m = FinAbGroup::parse("8");
  EXPECT_EQ(hom_group(a, m).literal(), "2,4");
  EXPECT_EQ(ext_group(a, m).literal(), "2,4");
  EXPECT_EQ(exterior_square(a).literal(), "2");
  EXPECT_EQ(exterior_square(FinAbGroup::parse("2,2,2")).literal(), "2,2,2");
  EXPECT_EQ(exterior_square(FinAbGroup::parse("4")).literal(), "1");
  // brute-force Hom count
  Int count = 0;
  for (auto& x : m.elements())
    for (auto& y : m.elements())
      if (m.is_zero(m.scale(2, x)) && m.is_zero(m.scale(4, y))) ++count;
  EXPECT_EQ(hom_group(a, m).order(), count);
}

TEST(Abelian, TorsionCountInvariants) {
  auto g = FinAbGroup::parse("2,4,8,3,9");
  auto inv = invariants_from_torsion_counts(g.order(), [&](Int n) { return subgroup_ops(g, n).torsion.order(); });
  EXPECT_EQ(inv, g);
}
