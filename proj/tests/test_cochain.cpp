#include <gtest/gtest.h>

#include <random>

#include "emcoh/cochain.hpp"

using namespace emcoh;

namespace {

// Product of two sparse integer matrices, nonzero entries only.
std::map<std::pair<std::size_t, std::size_t>, Int> product(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  std::map<std::pair<std::size_t, std::size_t>, Int> out;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (auto [k, v] : a.row(r))
      for (auto [c, w] : b.row(k)) out[{r, c}] += v * w;
  std::erase_if(out, [](auto& e) { return e.second == 0; });
  return out;
}

}  // namespace

TEST(Cochain, ShapesAndDimensions) {
  auto a = FinAbGroup::parse("2");
  auto m = FinAbGroup::parse("8");
  EXPECT_EQ(basis_size(a, m, Level::braided, 4), 3u);
  EXPECT_EQ(basis_size(a, m, Level::braided, 5), 5u);
  EXPECT_EQ(basis_size(a, m, Level::sylleptic, 4), 4u);
  EXPECT_EQ(basis_size(a, m, Level::sylleptic, 5), 7u);
  EXPECT_EQ(basis_size(a, m, Level::symmetric, 5), 8u);
  EXPECT_EQ(basis_size(a, m, Level::braided, 0), 1u);
  auto a3 = FinAbGroup::parse("3");
  EXPECT_EQ(basis_size(a3, FinAbGroup::parse("2,2"), Level::braided, 3), 2u * (8 + 4));
}

TEST(Cochain, Z2DifferentialsMatchHandComputation) {
  // C^*_br(Z/2, Z): d1(m) = 2m, d2 = 0, d3(m,l) = (2m, 2l+m, 2l-m), d4(m,l,k) = (0,0,2(m-l+k),0,0)
  auto a = FinAbGroup::parse("2");
  auto dense = [&](int n) {
    auto s = differential_matrix(a, Level::braided, n);
    std::vector<std::vector<Int>> d(s.rows(), std::vector<Int>(s.cols(), 0));
    for (std::size_t r = 0; r < s.rows(); ++r)
      for (auto [c, v] : s.row(r)) d[r][c] += v;
    return d;
  };
  EXPECT_EQ(dense(0), (std::vector<std::vector<Int>>{{0}}));
  EXPECT_EQ(dense(1), (std::vector<std::vector<Int>>{{2}}));
  EXPECT_EQ(dense(2), (std::vector<std::vector<Int>>{{0}, {0}}));
  EXPECT_EQ(dense(3), (std::vector<std::vector<Int>>{{2, 0}, {1, 2}, {-1, 2}}));
  EXPECT_EQ(dense(4), (std::vector<std::vector<Int>>{{0, 0, 0}, {0, 0, 0}, {2, -2, 2}, {0, 0, 0}, {0, 0, 0}}));
}

TEST(Cochain, DifferentialSquaresToZeroSmallGroups) {
  for (auto g : {"2", "3", "4", "2,2"}) {
    auto a = FinAbGroup::parse(g);
    for (auto level : {Level::ordinary, Level::braided, Level::sylleptic, Level::symmetric})
      for (int n = 0; n + 1 <= kMaxDifferentialDegree; ++n) {
        auto dd = product(differential_matrix(a, level, n + 1), differential_matrix(a, level, n));
        EXPECT_TRUE(dd.empty()) << g << " " << level_name(level) << " degree " << n;
      }
  }
}

TEST(Cochain, EvaluationAgreesWithMatrix) {
  auto a = FinAbGroup::parse("2,2");
  auto m = FinAbGroup::parse("2,8");
  std::mt19937 rng(3);
  for (int n = 0; n <= 4; ++n) {
    Cochain c(a, m, Level::sylleptic, n);
    for (std::size_t j = 0; j < m.rank(); ++j)
      for (std::size_t b = 0; b < c.dim(); ++b) c.values()[j * c.dim() + b] = rng() % m.factor(j);
    auto d = differential(c);
    auto mat = differential_matrix(a, Level::sylleptic, n);
    for (std::size_t j = 0; j < m.rank(); ++j) EXPECT_EQ(mat.apply_mod(c.slot(j), m.factor(j)), d.slot(j));
  }
}

TEST(Cochain, BasisTupleRoundTrip) {
  Cochain c(FinAbGroup::parse("4"), FinAbGroup::parse("8"), Level::braided, 4);
  for (std::size_t b = 0; b < c.dim(); ++b) {
    auto [s, args] = c.basis_tuple(b);
    EXPECT_EQ(c.basis_index(s, args), static_cast<long>(b));
  }
}

TEST(Cochain, NoDifferentialOutOfDegreeFive) {
  Cochain c(FinAbGroup::parse("2"), FinAbGroup::parse("8"), Level::braided, 5);
  EXPECT_THROW(is_cocycle(c), ValidationError);
  EXPECT_THROW(differential_table(Level::braided, 5), ValidationError);
}
