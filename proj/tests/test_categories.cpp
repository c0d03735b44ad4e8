#include <gtest/gtest.h>

#include "emcoh/categories.hpp"

using namespace emcoh;

namespace {

FiniteGroup ab(const char* lit) { return FiniteGroup::abelian(FinAbGroup::parse(lit)); }

Int at(const FiniteGroup& g, std::initializer_list<Int> coords) {
  return g.structure()->index_of(Element(coords));
}

bool is_character(const FiniteGroup& g, const Character& c, Int L) {
  for (Int a = 0; a < g.order(); ++a)
    for (Int b = 0; b < g.order(); ++b)
      if (c[g.mul(a, b)] != mod(c[a] + c[b], L)) return false;
  return true;
}

bool is_zero(const Character& c) {
  for (Int v : c)
    if (v) return false;
  return true;
}

// (G, t) with a central involution t, |G| <= 8
std::vector<SymmetricFusionData> sweep() {
  std::vector<SymmetricFusionData> out;
  std::vector<FiniteGroup> groups{ab("1"), ab("2"), ab("4"), ab("2,2"), ab("6"), ab("8"), ab("2,4"), ab("2,2,2"),
                                  FiniteGroup::dihedral(3), FiniteGroup::dihedral(4), FiniteGroup::quaternion()};
  for (const auto& g : groups)
    for (Int t : g.center())
      if (g.mul(t, t) == g.identity()) out.push_back(symmetric_data(g, t));
  return out;
}

}  // namespace

TEST(Categories, XiIsAHomomorphismAndClassInvariant) {
  auto g = ab("2,4");
  Int t = at(g, {0, 2});
  auto pg = pic(symmetric_data(g, t));
  ASSERT_EQ(pg.h2().order(), 2);
  auto gamma = pg.h2().representative(0);
  Int L = pg.modulus();
  std::vector<Int> x(g.order());
  for (Int a = 0; a < g.order(); ++a) x[a] = xi(gamma, a, t);
  for (Int a = 0; a < g.order(); ++a)
    for (Int b = 0; b < g.order(); ++b) EXPECT_EQ(x[g.mul(a, b)], (x[a] + x[b]) % 2);
  GroupCochain f(g, FinAbGroup::cyclic(L), 1);
  for (Int a : g.nonidentity()) f.set({a}, {3 * a + 1});
  auto shifted = gamma + group_differential(f);
  for (Int a = 0; a < g.order(); ++a) EXPECT_EQ(xi(shifted, a, t), x[a]);
  for (Int a = 0; a < g.order(); ++a) EXPECT_EQ(xi(group_differential(f), a, t), 0);
  for (Int a = 0; a < g.order(); ++a) EXPECT_EQ(xi(gamma, a, g.identity()), 0);
}

TEST(Categories, PicardGroups) {
  for (const char* n : {"1", "2", "3", "4"}) EXPECT_EQ(pic(symmetric_data(ab(n), 0)).order(), 1) << n;
  EXPECT_EQ(pic(symmetric_data(ab("2,2"), 0)).invariants().literal(), "2");
  auto svect = pic(symmetric_data(ab("2"), 1));
  EXPECT_TRUE(svect.split());
  EXPECT_EQ(svect.invariants().literal(), "2");
  EXPECT_EQ(pic(symmetric_data(ab("4"), 2)).order(), 1);
}

TEST(Categories, TwistedProductGroupLaw) {
  for (const auto& s : sweep()) {
    auto pg = pic(s);
    const auto& t = pg.table();
    const Int n = static_cast<Int>(t.size());
    EXPECT_EQ(pg.twisted_invariants().order(), pg.h2().order());
    std::vector<GroupCochain> reps;
    for (const auto& c : pg.h2().invariants().elements()) reps.push_back(pg.h2().cocycle_of(c));
    for (Int a = 0; a < n; ++a) {
      EXPECT_EQ(t[0][a], a);
      EXPECT_TRUE(is_group_cocycle(twisted_product(reps[a], reps[a], s.t)));
      bool has_inverse = false;
      for (Int b = 0; b < n; ++b) {
        has_inverse = has_inverse || t[a][b] == 0;
        for (Int c = 0; c < n; ++c) EXPECT_EQ(t[t[a][b]][c], t[a][t[b][c]]);
      }
      EXPECT_TRUE(has_inverse);
    }
  }
}

TEST(Categories, QuadraticCharacterAndPairing) {
  auto k4 = ab("2,2");
  auto pg = pic(symmetric_data(k4, 0));
  auto gamma_cls = pg.elements()[1];
  for (const auto& p : pg.elements()) EXPECT_TRUE(is_zero(pic_Q(pg, p)));
  auto g = pairing(pg, gamma_cls, at(k4, {1, 0}));
  EXPECT_TRUE(is_character(k4, g, pg.modulus()));
  EXPECT_FALSE(is_zero(g));
  EXPECT_TRUE(is_zero(pairing(pg, gamma_cls, 0)));
  auto gamma = pg.cocycle(gamma_cls);
  for (Int x = 0; x < 4; ++x)
    EXPECT_EQ(g[x], mod(gamma.value({x, at(k4, {1, 0})})[0] - gamma.value({at(k4, {1, 0}), x})[0], pg.modulus()));

  auto z2 = ab("2");
  auto sv = pic(symmetric_data(z2, 1));
  PicElement a{sv.h2().invariants().zero(), 1};
  auto q = pic_Q(sv, a);
  EXPECT_EQ(q[1], sv.modulus() / 2);
  auto ap = pairing(sv, a, 1);
  EXPECT_EQ(ap[1], sv.modulus() / 2);
}

TEST(Categories, PairingIsBimultiplicative) {
  for (const auto& s : sweep()) {
    auto pg = pic(s);
    auto center = s.group.center();
    for (const auto& p1 : pg.elements())
      for (const auto& p2 : pg.elements())
        for (Int z : center)
          EXPECT_EQ(pairing(pg, pg.mul(p1, p2), z),
                    add_characters(pairing(pg, p1, z), pairing(pg, p2, z), pg.modulus()));
    for (const auto& p : pg.elements()) {
      EXPECT_EQ(pic_Q(pg, pg.mul(p, p)), add_characters(pic_Q(pg, p), pic_Q(pg, p), pg.modulus()));
      for (Int z1 : center)
        for (Int z2 : center)
          EXPECT_EQ(pairing(pg, p, s.group.mul(z1, z2)),
                    add_characters(pairing(pg, p, z1), pairing(pg, p, z2), pg.modulus()));
    }
  }
}

TEST(Categories, PicBrInvariants) {
  auto rep2 = picbr_invariants(symmetric_data(ab("2"), 0));
  EXPECT_EQ(rep2.pi0().literal(), "2");
  EXPECT_EQ(rep2.pi1().literal(), "2");
  for (const auto& x : rep2.elements()) {
    EXPECT_TRUE(is_zero(rep2.Q(x)));
    for (const auto& chi : rep2.characters()) EXPECT_EQ(rep2.whitehead(x, chi), chi[x.z]);
  }
  auto sv = picbr_invariants(symmetric_data(ab("2"), 1));
  for (const auto& chi : sv.characters()) EXPECT_EQ(sv.second_class(chi), chi[1] ? 1 : 0);
  auto els = sv.elements();
  auto r = std::find_if(els.begin(), els.end(), [](const PicBrElement& x) { return x.p.eps == 1 && x.z == 0; });
  ASSERT_NE(r, els.end());
  EXPECT_EQ(sv.Q(*r)[1], sv.modulus() / 2);

  auto k4 = picbr_invariants(symmetric_data(ab("2,2"), 0));
  EXPECT_EQ(k4.pi0().order(), 8);
}

TEST(Categories, PicBrQuadraticOnSweep) {
  for (const auto& s : sweep()) {
    auto pb = picbr_invariants(s);
    auto els = pb.elements();
    const Int L = pb.modulus();
    const std::size_t n = els.size();
    auto idx = [&](const PicBrElement& x) {
      return static_cast<std::size_t>(std::find(els.begin(), els.end(), x) - els.begin());
    };
    std::vector<Character> q;
    std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
      q.push_back(pb.Q(els[a]));
      EXPECT_TRUE(is_character(s.group, q[a], L));
      for (std::size_t b = 0; b < n; ++b) mul[a][b] = idx(pb.mul(els[a], els[b]));
    }
    auto polar = [&](std::size_t a, std::size_t b) {
      Character r(q[a].size());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(q[mul[a][b]][i] - q[a][i] - q[b][i], L);
      return r;
    };
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          ASSERT_EQ(polar(mul[a][b], c), add_characters(polar(a, c), polar(b, c), L));
  }
}

TEST(Categories, SymmetricCenterAndPointedPicBr) {
  auto z2 = FinAbGroup::parse("2"), z4 = FinAbGroup::parse("4"), m = FinAbGroup::parse("8");
  auto semion = PointedBraidedData{QuadraticForm::from_generators(z2, m, {{2}}, {})};
  EXPECT_TRUE(zsym(semion).group().trivial());
  auto zero = PointedBraidedData{QuadraticForm::from_generators(z2, m, {{0}}, {})};
  EXPECT_EQ(zsym(zero).group(), z2);
  EXPECT_EQ(zsym(zero).q, zero.q);
  auto nondeg = PointedBraidedData{QuadraticForm::from_generators(z4, FinAbGroup::parse("16"), {{2}}, {})};
  EXPECT_TRUE(zsym(nondeg).group().trivial());
  EXPECT_TRUE(picbr_pointed(nondeg).pipeline.trivial());
  EXPECT_TRUE(picbr_pointed(nondeg).closed_form.trivial());

  auto r0 = picbr_pointed(zero);
  EXPECT_EQ(r0.pipeline.literal(), "2");
  EXPECT_TRUE(r0.agree);

  auto half = PointedBraidedData{QuadraticForm::from_generators(z2, m, {{4}}, {})};
  auto rh = picbr_pointed(half);
  EXPECT_FALSE(rh.tau_trivial);
  EXPECT_TRUE(rh.split);
  EXPECT_EQ(rh.pipeline.order(), 4);
  EXPECT_EQ(rh.closed_form.order(), 2);
  EXPECT_FALSE(rh.agree);
}

TEST(Categories, TwistedProductMatchesAlternatingForms) {
  // (Z/2)^3 with t = e1: the products of the classes e1^e2 and e1^e3 pick up e2^e3
  auto g = ab("2,2,2");
  const Int t = at(g, {1, 0, 0});
  auto pg = pic(symmetric_data(g, t));
  const Int L = pg.modulus();
  auto classes = pg.h2().invariants().elements();
  auto alt = [&](const GroupCochain& c, Int f, Int h) { return mod(c.value({f, h})[0] - c.value({h, f})[0], L); };
  auto find = [&](Int f, Int h) {
    for (std::size_t i = 0; i < classes.size(); ++i) {
      auto c = pg.h2().cocycle_of(classes[i]);
      bool ok = true;
      for (Int u = 0; u < 8 && ok; ++u)
        for (Int v = 0; v < 8 && ok; ++v) {
          auto eu = g.structure()->element(u), ev = g.structure()->element(v);
          Int w = (eu[f] * ev[h] + eu[h] * ev[f]) % 2;
          ok = alt(c, u, v) == w * (L / 2);
        }
      if (ok) return i;
    }
    return classes.size();
  };
  auto a = find(0, 1), b = find(0, 2), c = find(1, 2);
  ASSERT_LT(a, classes.size());
  ASSERT_LT(b, classes.size());
  ASSERT_LT(c, classes.size());
  auto prod = pg.table()[a][b];
  auto plain = pg.h2().invariants().index_of(pg.h2().invariants().add(classes[a], classes[b]));
  EXPECT_NE(prod, plain);
  EXPECT_EQ(prod, pg.table()[plain][c]);
}
