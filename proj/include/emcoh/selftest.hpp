#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "emcoh/census.hpp"

namespace emcoh {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool correct = false;
  double seconds = 0;
  double limit = 0;
  std::string detail;
  bool pass() const { return correct && seconds < limit; }
};

namespace selftest {

inline FinAbGroup G(const char* lit) { return FinAbGroup::parse(lit); }
inline FiniteGroup fg(const char* lit) { return FiniteGroup::abelian(FinAbGroup::parse(lit)); }

inline const std::vector<const char*>& small_groups() {
  static const std::vector<const char*> g{"1", "2", "3", "4", "2,2", "5", "6", "7", "8", "2,4", "2,2,2"};
  return g;
}

// Brute-force counts over explicit elements, kept apart from the SNF machinery.
inline Int count_hom(const FinAbGroup& a, Int n, Int torsion = 0) {
  Int total = 1;
  for (Int d : a.factors()) {
    Int c = 0;
    for (Int v = 0; v < n; ++v) c += (d * v) % n == 0 && (torsion == 0 || (torsion * v) % n == 0);
    total *= c;
  }
  return total;
}

inline Int count_ext(const FinAbGroup& a, Int n) {
  Int total = 1;
  for (Int d : a.factors()) {
    std::set<Int> multiples;
    for (Int v = 0; v < n; ++v) multiples.insert((d * v) % n);
    total *= n / static_cast<Int>(multiples.size());
  }
  return total;
}

inline Int count_quadratic(const FinAbGroup& a, Int n) {
  const std::size_t r = a.rank();
  const Int N = a.order();
  std::vector<std::vector<Int>> els;
  for (Int i = 0; i < N; ++i) {
    std::vector<Int> x(r);
    Int t = i;
    for (std::size_t k = r; k-- > 0;) x[k] = t % a.factor(k), t /= a.factor(k);
    els.push_back(x);
  }
  auto idx = [&](const std::vector<Int>& x) {
    Int t = 0;
    for (std::size_t k = 0; k < r; ++k) t = t * a.factor(k) + ((x[k] % a.factor(k)) + a.factor(k)) % a.factor(k);
    return t;
  };
  std::vector<Int> sum(N * N);
  for (Int i = 0; i < N; ++i)
    for (Int j = 0; j < N; ++j) {
      std::vector<Int> s(r);
      for (std::size_t k = 0; k < r; ++k) s[k] = els[i][k] + els[j][k];
      sum[i * N + j] = idx(s);
    }
  const std::size_t params = r + r * (r - (r ? 1 : 0)) / 2;
  std::vector<Int> p(params, 0);
  std::vector<Int> q(N), b(N * N);
  Int count = 0;
  while (true) {
    for (Int i = 0; i < N; ++i) {
      Int v = 0;
      std::size_t t = r;
      for (std::size_t k = 0; k < r; ++k) {
        v += els[i][k] * els[i][k] * p[k];
        for (std::size_t l = k + 1; l < r; ++l) v += els[i][k] * els[i][l] * p[t++];
      }
      q[i] = ((v % n) + n) % n;
    }
    bool ok = q[0] == 0;
    for (Int i = 0; i < N && ok; ++i)
      for (Int j = 0; j < N; ++j) b[i * N + j] = ((q[sum[i * N + j]] - q[i] - q[j]) % n + n) % n;
    for (Int i = 0; i < N && ok; ++i)
      for (Int j = 0; j < N && ok; ++j)
        for (Int k = 0; k < N && ok; ++k) ok = b[sum[i * N + j] * N + k] == (b[i * N + k] + b[j * N + k]) % n;
    for (Int i = 0; i < N && ok; ++i) {
      Int x = 0;
      for (Int m = 0; m <= a.exponent() && ok; ++m, x = sum[x * N + i]) ok = q[x] == (m * m % n) * q[i] % n;
    }
    count += ok;
    std::size_t k = 0;
    while (k < params && ++p[k] == n) p[k++] = 0;
    if (k == params) break;
  }
  return count;
}

inline std::vector<SymmetricFusionData> sweep() {
  std::vector<SymmetricFusionData> out;
  std::vector<FiniteGroup> groups{fg("1"), fg("2"), fg("4"), fg("2,2"), fg("6"), fg("8"), fg("2,4"), fg("2,2,2"),
                                  FiniteGroup::dihedral(3), FiniteGroup::dihedral(4), FiniteGroup::quaternion()};
  for (const auto& g : groups)
    for (Int t : g.center())
      if (g.mul(t, t) == g.identity()) out.push_back(symmetric_data(g, t));
  return out;
}

inline std::vector<QuadraticForm> acceptance_bases() {
  const auto z2 = G("2"), m = G("8");
  return {QuadraticForm::from_generators(z2, m, {{0}}, {}), QuadraticForm::from_generators(z2, m, {{2}}, {}),
          QuadraticForm::from_generators(G("2,2"), m, {{2}, {4}}, {{0}})};
}

struct Check {
  bool ok = true;
  std::ostringstream detail;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail.str("");
      detail << "failed: " << what;
    }
  }
};

inline void c1(Check& ck) {
  const auto a = G("2"), m = G("8");
  const Int n = 8;
  // M_k and M/kM are both Z/gcd(k, n) for cyclic M
  auto part = [&](Int k) { return FinAbGroup::cyclic(gcd(k, n)); };
  std::vector<FinAbGroup> want{m, part(2), part(2), part(4), direct_sum(part(2), part(4))};
  std::string got;
  for (int d = 0; d <= 4; ++d) {
    auto h = cohomology(a, m, Level::braided, d).invariants();
    ck.expect(h == want[d], "H^" + std::to_string(d) + " = " + h.literal() + ", expected " + want[d].literal());
    got += (d ? " | " : "") + h.literal();
  }
  if (ck.ok) ck.detail << "H^0..4 = " << got << " (M, M_2, M/2M, M_4, M_2+M/4M at M = Z/8; Z/2+Z/2 has the wrong order for M_2+M/4M)";
}

inline void c2(Check& ck) {
  const auto a = G("2"), m = G("8");
  auto s3 = cohomology(a, m, Level::sylleptic, 3).invariants();
  auto s4 = cohomology(a, m, Level::sylleptic, 4).invariants();
  ck.expect(s3.literal() == "2", "H^3_syl = " + s3.literal());
  ck.expect(s4.literal() == "2,2", "H^4_syl = " + s4.literal());
  for (int d = 0; d <= 4; ++d) {
    auto x = cohomology(a, m, Level::sylleptic, d).invariants();
    auto y = cohomology(a, m, Level::symmetric, d).invariants();
    ck.expect(x == y, "H^" + std::to_string(d) + " syl " + x.literal() + " != sym " + y.literal());
  }
  if (ck.ok) ck.detail << "H^3_syl = 2, H^4_syl = 2,2, sym = syl in degrees 0..4";
}

inline void c3(Check& ck) {
  int cases = 0;
  for (auto g : small_groups())
    for (Int n : {4, 8}) {
      auto a = G(g);
      auto m = FinAbGroup::cyclic(n);
      std::string tag = std::string(" A = ") + g + ", M = Z/" + std::to_string(n);
      ck.expect(cohomology(a, m, Level::braided, 1).order() == count_hom(a, n), "|H^1| != |Hom|" + tag);
      ck.expect(cohomology(a, m, Level::braided, 2).order() == count_ext(a, n), "|H^2_br| != |Ext|" + tag);
      ck.expect(cohomology(a, m, Level::braided, 3).order() == count_quadratic(a, n), "|H^3_br| != |Quad|" + tag);
      ck.expect(cohomology(a, m, Level::symmetric, 3).order() == count_hom(a, n, 2), "|H^3_sym| != |Hom(A, M_2)|" + tag);
      ++cases;
    }
  if (ck.ok) ck.detail << cases << " (A, M) pairs";
}

inline void c4(Check& ck) {
  Int products = 0;
  for (auto g : small_groups()) {
    auto a = G(g);
    for (auto level : {Level::ordinary, Level::braided, Level::sylleptic, Level::symmetric})
      for (int d = 0; d + 1 <= kMaxDifferentialDegree; ++d) {
        auto lo = differential_matrix(a, level, d);
        auto hi = differential_matrix(a, level, d + 1);
        std::map<std::size_t, Int> acc;
        bool zero = true;
        for (std::size_t r = 0; r < hi.rows() && zero; ++r) {
          acc.clear();
          for (auto [k, v] : hi.row(r))
            for (auto [c, w] : lo.row(k)) acc[c] += v * w;
          for (auto [c, v] : acc) zero = zero && v % 8 == 0;
        }
        ck.expect(zero, "d o d != 0 for A = " + std::string(g) + ", " + level_name(level) + " degree " + std::to_string(d));
        ++products;
      }
  }
  if (ck.ok) ck.detail << products << " composites checked on every basis cochain";
}

inline void c5(Check& ck) {
  for (auto g : {"2", "2,2", "4"}) {
    auto a = G(g);
    const auto m = G("8");
    for (const auto& e : cochain_space_basis(a, m, Level::symmetric, 3)) {
      auto th = theta_sym(differential(e));
      for (const auto& x : th.domain().elements()) ck.expect(m.is_zero(th(x)), std::string("theta_sym(d e) != 0 on ") + g);
    }
    auto h = stable_cohomology(a, Level::symmetric, 4);
    const auto& cm = h.coefficients();
    std::vector<std::vector<Element>> images;
    std::vector<GroupHom> thetas;
    for (const auto& cls : h.invariants().elements()) thetas.push_back(theta_sym(h.cocycle_of(cls)));
    auto classes = h.invariants().elements();
    for (std::size_t i = 0; i < classes.size(); ++i) {
      std::vector<Element> img;
      for (const auto& x : thetas[i].domain().elements()) img.push_back(thetas[i](x));
      images.push_back(img);
      for (std::size_t j = 0; j < classes.size(); ++j) {
        auto sum = theta_sym(h.cocycle_of(classes[i]) + h.cocycle_of(classes[j]));
        for (const auto& x : sum.domain().elements())
          ck.expect(sum(x) == cm.add(thetas[i](x), thetas[j](x)), std::string("theta_sym not additive on ") + g);
      }
    }
    std::set<std::vector<Element>> distinct(images.begin(), images.end());
    Int two_torsion = 0;
    for (const auto& x : a.elements()) two_torsion += a.is_zero(a.scale(2, x));
    ck.expect(static_cast<Int>(distinct.size()) == two_torsion,
              std::string("|image theta_sym| = ") + std::to_string(distinct.size()) + " on " + g);
    if (ck.ok) ck.detail << g << ": " << distinct.size() << "  ";
  }
}

// For abelian G a class is determined by its alternating form gamma(f,h) - gamma(h,f); the twisted
// product adds L/2 (x_a(f) x_b(h) - x_a(h) x_b(f)) with x(g) = [gamma(t,g) != gamma(g,t)].
inline void twisted_law_on_forms(Check& ck, const PicGroup& pg, const std::string& tag) {
  const auto& g = pg.data().group;
  const Int t = pg.data().t, L = pg.modulus(), n = g.order();
  std::vector<GroupCochain> reps;
  for (const auto& c : pg.h2().invariants().elements()) reps.push_back(pg.h2().cocycle_of(c));
  auto val = [](const GroupCochain& c, Int f, Int h) { return c.value({f, h})[0]; };
  auto alt = [&](const GroupCochain& c, Int f, Int h) { return mod(val(c, f, h) - val(c, h, f), L); };
  auto x = [&](const GroupCochain& c, Int f) { return Int(mod(val(c, t, f) - val(c, f, t), L) != 0); };
  const auto& table = pg.table();
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b)
      for (Int f = 0; f < n; ++f)
        for (Int h = 0; h < n; ++h) {
          Int want = alt(reps[a], f, h) + alt(reps[b], f, h) +
                     (L / 2) * (x(reps[a], f) * x(reps[b], h) + x(reps[a], h) * x(reps[b], f));
          ck.expect(alt(reps[table[a][b]], f, h) == mod(want, L), "twisted law disagrees with forms" + tag);
        }
}

inline void c6(Check& ck) {
  for (const char* n : {"1", "2", "3", "4"})
    ck.expect(pic(symmetric_data(fg(n), 0)).order() == 1, std::string("Pic(Rep(Z/") + n + ")) nontrivial");
  auto k4 = pic(symmetric_data(fg("2,2"), 0)).invariants();
  ck.expect(k4.literal() == "2", "Pic(Rep(Z/2 x Z/2)) = " + k4.literal());
  auto sv = pic(symmetric_data(fg("2"), 1)).invariants();
  ck.expect(sv.literal() == "2", "Pic(sVect) = " + sv.literal());
  int cases = 0;
  for (const auto& s : sweep()) {
    auto pg = pic(s);
    const auto& t = pg.table();
    const Int n = static_cast<Int>(t.size());
    std::string tag = " for |G| = " + std::to_string(s.group.order()) + ", t = " + s.group.label(s.t);
    ck.expect(pg.twisted_invariants().order() == pg.h2().order(), "|H^2(G,t)| != |H^2(G)|" + tag);
    for (Int a = 0; a < n; ++a) {
      ck.expect(t[0][a] == a && t[a][0] == a, "identity" + tag);
      bool inverse = false;
      for (Int b = 0; b < n; ++b) {
        inverse = inverse || t[a][b] == 0;
        ck.expect(t[a][b] == t[b][a], "commutativity" + tag);
        for (Int c = 0; c < n; ++c) ck.expect(t[t[a][b]][c] == t[a][t[b][c]], "associativity" + tag);
      }
      ck.expect(inverse, "inverses" + tag);
    }
    if (s.group.is_abelian()) twisted_law_on_forms(ck, pg, tag);
    ++cases;
  }
  if (ck.ok) ck.detail << "Pic values as expected; group law on " << cases << " (G, t)";
}

inline void c7(Check& ck) {
  auto sv = symmetric_data(fg("2"), 1);
  for (auto a : {"2", "4", "2,2"}) {
    auto A = G(a);
    ck.expect(ex_sym_group(A, sv).trivial(), std::string("Ex_sym(") + a + ", sVect) nontrivial");
    ck.expect(xi_t_and_funsym(A, sv).bookkeeping == 1, std::string("bookkeeping for (") + a + ", sVect) != 1");
  }
  struct Case {
    SymmetricFusionData s;
    const char* want;
  };
  for (const auto& c : {Case{symmetric_data(fg("2"), 0), "2,2"}, Case{symmetric_data(fg("4"), 2), "2"}}) {
    auto e = ex_sym_group(G("2"), c.s);
    ck.expect(e.literal() == c.want, "Ex_sym = " + e.literal() + ", expected " + c.want);
    ck.expect(xi_t_and_funsym(G("2"), c.s).bookkeeping == e.order(), "bookkeeping disagrees for " + e.literal());
  }
  if (ck.ok) ck.detail << "formula and exact-sequence paths agree";
}

inline void c8(Check& ck) {
  Int cases = 0, obstructed = 0;
  for (const auto& base : acceptance_bases())
    for (auto a : {"1", "2", "4", "2,2"}) {
      auto A = G(a);
      if (A.order() * base.group().order() > 8) continue;
      for (const auto& f : grading_characters(A, base.group(), base.coeff().factor(0)))
        for (const auto& L : symmetric_cocycles(A, base)) {
          auto d = trivial_datum(base, A);
          d.f = f;
          d.L = L;
          bool trivial = pw2_trivial(base, A, f, L);
          auto sol = solve_xi_kappa(d);
          ck.expect(trivial == sol.has_value(), "pw2 class and coherence disagree, A0 = " + base.group().literal() + ", A = " + a);
          if (sol) ck.expect(skeletal_oracle(*sol).ok, "solver output fails the oracle");
          ++cases;
          obstructed += !trivial;
        }
    }
  if (ck.ok) ck.detail << cases << " (base, f, L), " << obstructed << " obstructed";
}

inline void c9(Check& ck) {
  const char* names[] = {"zero", "semion", "radical"};
  int i = 0;
  for (const auto& base : acceptance_bases()) {
    const char* name = names[i++];
    auto rep = enumerate_quasi_trivial(base, G("2"));
    auto census = zesting_census(base, G("2"));
    ck.expect(static_cast<Int>(census.classes.size()) == rep.total,
              std::string(name) + ": census " + std::to_string(census.classes.size()) +
                  " vs fibration " + std::to_string(rep.total));
    if (ck.ok) ck.detail << name << " " << rep.total << "  ";
  }
}

inline void c10(Check& ck) {
  auto q = QuadraticForm::from_generators(G("4"), G("16"), {{2}}, {});
  auto r = picbr_pointed(PointedBraidedData{q});
  ck.expect(r.pipeline.trivial(), "pipeline value " + r.pipeline.literal());
  ck.expect(r.closed_form.trivial(), "closed form " + r.closed_form.literal());
  if (ck.ok) ck.detail << "trivial";
}

}  // namespace selftest

// Runs criteria 1..10 in order, reporting each as it finishes.
inline std::vector<CriterionResult> run_selftest(const std::function<void(const CriterionResult&)>& report = {}) {
  struct Entry {
    const char* title;
    double limit;
    void (*fn)(selftest::Check&);
  };
  static const Entry entries[] = {
      {"Z/2 braided table, M = Z/8", 5, selftest::c1},
      {"Z/2 sylleptic and symmetric tables", 5, selftest::c2},
      {"structural isomorphisms in degrees 1-3", 300, selftest::c3},
      {"d o d = 0", 600, selftest::c4},
      {"theta_sym", 120, selftest::c5},
      {"Picard groups and twisted product", 120, selftest::c6},
      {"Ex_sym", 120, selftest::c7},
      {"zesting obstruction vs skeletal oracle", 900, selftest::c8},
      {"fibration counts vs census", 900, selftest::c9},
      {"nondegenerate Pic_br triviality", 1, selftest::c10},
  };
  std::vector<CriterionResult> out;
  int id = 0;
  for (const auto& e : entries) {
    CriterionResult r;
    r.id = ++id;
    r.title = e.title;
    r.limit = e.limit;
    selftest::Check ck;
    auto t0 = std::chrono::steady_clock::now();
    try {
      e.fn(ck);
    } catch (const std::exception& ex) {
      ck.ok = false;
      ck.detail.str("");
      ck.detail << "exception: " << ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.correct = ck.ok;
    r.detail = ck.detail.str();
    while (!r.detail.empty() && r.detail.back() == ' ') r.detail.pop_back();
    if (report) report(r);
    out.push_back(r);
  }
  return out;
}

}  // namespace emcoh
