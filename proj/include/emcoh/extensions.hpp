#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emcoh/categories.hpp"
#include "emcoh/cohomology.hpp"

namespace emcoh {

inline FinAbGroup character_group(const FinAbGroup& a) {
  return hom_group(a, FinAbGroup::cyclic(std::max<Int>(1, a.exponent())));
}

// ---- symmetric extensions of Rep(G, t) ----

inline FinAbGroup ex_sym_group(const FinAbGroup& a, const SymmetricFusionData& s) {
  const auto ahat = character_group(a);
  const auto& g = s.group;
  if (s.t == g.identity())
    return direct_sum(group_cohomology(g, ahat, 2).invariants(), hom_group(a, FinAbGroup::cyclic(2)));
  auto q = quotient(g, generated_subgroup(g, {s.t}));
  return group_cohomology(q.group, ahat, 2).invariants();
}

struct FunSym {
  FinAbGroup coeff;                       // character group of A
  FinAbGroup h2;                          // H^2(G, coeff)
  std::vector<std::vector<Element>> xi;   // Xi_t of each generator of h2, per element of G
  FinAbGroup pi0;                         // Ker Xi_t
  GroupHom inclusion;                     // pi0 -> h2
  FinAbGroup h2_t;                        // H^2(<t>, coeff)
  GroupHom obstruction;                   // pi0 -> h2_t
  GroupHom res1;                          // H^1(G, coeff) -> H^1(<t>, coeff)
  Int bookkeeping = 0;                    // |Ex_sym| read off the exact sequence
};

inline FunSym xi_t_and_funsym(const FinAbGroup& a, const SymmetricFusionData& s) {
  FunSym r;
  const auto& g = s.group;
  r.coeff = character_group(a);
  auto h2 = group_cohomology(g, r.coeff, 2);
  r.h2 = h2.invariants();
  auto xi_of = [&](const GroupCochain& m) {
    std::vector<Element> v;
    for (Int x = 0; x < g.order(); ++x) v.push_back(r.coeff.sub(m.value({s.t, x}), m.value({x, s.t})));
    return v;
  };
  for (std::size_t i = 0; i < r.h2.rank(); ++i) {
    auto v = xi_of(h2.representative(i));
    for (Int x = 0; x < g.order(); ++x) {
      if (!r.coeff.is_zero(r.coeff.scale(2, v[x]))) throw ConsistencyError("Xi_t is not 2-torsion valued");
      for (Int y = 0; y < g.order(); ++y)
        if (v[g.mul(x, y)] != r.coeff.add(v[x], v[y])) throw ConsistencyError("Xi_t is not a homomorphism");
    }
    if (!r.coeff.is_zero(v[s.t])) throw ConsistencyError("Xi_t does not factor through G/<t>");
    r.xi.push_back(v);
  }
  std::vector<Element> kernel;
  for (const auto& c : r.h2.elements()) {
    bool zero = true;
    for (Int x = 0; x < g.order() && zero; ++x) {
      Element v = r.coeff.zero();
      for (std::size_t i = 0; i < c.size(); ++i) v = r.coeff.add(v, r.coeff.scale(c[i], r.xi[i][x]));
      zero = r.coeff.is_zero(v);
    }
    if (zero) kernel.push_back(c);
  }
  auto ker = subgroup_generated(r.h2, kernel);
  r.pi0 = ker.image;
  r.inclusion = ker.inclusion;
  if (s.t == g.identity()) {
    r.obstruction = GroupHom::zero(r.pi0, FinAbGroup());
    r.res1 = GroupHom::zero(group_cohomology(g, r.coeff, 1).invariants(), FinAbGroup());
    r.bookkeeping = stable_cohomology(a, Level::symmetric, 3).order() * r.h2.order();
    return r;
  }
  auto sub = subgroup(g, generated_subgroup(g, {s.t}));
  auto h2t = group_cohomology(sub.group, r.coeff, 2);
  r.h2_t = h2t.invariants();
  std::vector<Element> imgs;
  for (std::size_t i = 0; i < r.pi0.rank(); ++i)
    imgs.push_back(h2t.class_of(restriction(h2.cocycle_of(r.inclusion(r.pi0.basis(i))), sub)));
  r.obstruction = GroupHom::from_images(r.pi0, r.h2_t, imgs);
  auto h1 = group_cohomology(g, r.coeff, 1);
  auto h1t = group_cohomology(sub.group, r.coeff, 1);
  imgs.clear();
  for (std::size_t i = 0; i < h1.invariants().rank(); ++i)
    imgs.push_back(h1t.class_of(restriction(h1.representative(i), sub)));
  r.res1 = GroupHom::from_images(h1.invariants(), h1t.invariants(), imgs);
  r.bookkeeping = kernel_cokernel(r.res1).cokernel.order() * kernel_cokernel(r.obstruction).kernel.order();
  return r;
}

// ---- zesting of pointed braided categories ----

// Skeletal braided data (omega_0, c_0) of a pointed base, as tables over element indices.
struct BaseTables {
  FinAbGroup group;
  Int n = 1;
  std::vector<Int> add, omega, c;
  Int sum(Int x, Int y) const { return add[x * group.order() + y]; }
  Int w(Int x, Int y, Int z) const { return omega[(x * group.order() + y) * group.order() + z]; }
  Int br(Int x, Int y) const { return c[x * group.order() + y]; }
  Int b(Int x, Int y) const { return mod(br(x, y) + br(y, x), n); }
};

inline BaseTables base_tables(const QuadraticForm& q) {
  require(q.coeff().rank() == 1, "base form must take values in a cyclic group");
  BaseTables t;
  t.group = q.group();
  t.n = q.coeff().factor(0);
  t.add = t.group.addition_table();
  const Int m = t.group.order();
  auto cc = to_braided_3cocycle(q);
  t.omega.assign(m * m * m, 0);
  t.c.assign(m * m, 0);
  const int s3 = cc.shape_index("3"), s11 = cc.shape_index("1|1");
  std::vector<Int> args2(2), args3(3);
  for (Int x = 0; x < m; ++x)
    for (Int y = 0; y < m; ++y) {
      args2 = {x, y};
      t.c[x * m + y] = cc.value(s11, args2)[0];
      for (Int z = 0; z < m; ++z) {
        args3 = {x, y, z};
        t.omega[(x * m + y) * m + z] = cc.value(s3, args3)[0];
      }
    }
  return t;
}

inline QuadraticForm rescale_form(const QuadraticForm& q, Int e) {
  const auto m = FinAbGroup::cyclic(q.coeff().factor(0) * e);
  std::vector<Element> v;
  for (const auto& x : q.values()) v.push_back({x[0] * e});
  return QuadraticForm(q.group(), m, v);
}

// A quasi-trivial zesting datum. Values live in Z/n, n the modulus of the base form.
struct ZestingDatum {
  FinAbGroup grading;
  QuadraticForm base;
  std::vector<Int> f;      // f[x * |A0| + X] = f(x)(X)
  std::vector<Int> L;      // L[x * |A| + y] = index in A0
  std::vector<Int> xi;     // xi[(x * |A| + y) * |A| + z]
  std::vector<Int> kappa;  // kappa[x * |A| + y]
  Cochain twist;           // braided 3-cochain on the grading

  Int modulus() const { return base.coeff().factor(0); }
  Int a_order() const { return grading.order(); }
  Int base_order() const { return base.group().order(); }
  Int fv(Int x, Int X) const { return f[x * base_order() + X]; }
  Int Lv(Int x, Int y) const { return L[x * a_order() + y]; }
  Int xiv(Int x, Int y, Int z) const { return xi[(x * a_order() + y) * a_order() + z]; }
  Int kappav(Int x, Int y) const { return kappa[x * a_order() + y]; }
};

inline ZestingDatum trivial_datum(const QuadraticForm& base, const FinAbGroup& a) {
  require(base.coeff().rank() == 1, "base form must take values in a cyclic group");
  ZestingDatum d;
  d.grading = a;
  d.base = base;
  const Int m = base.group().order(), k = a.order();
  d.f.assign(k * m, 0);
  d.L.assign(k * k, 0);
  d.xi.assign(k * k * k, 0);
  d.kappa.assign(k * k, 0);
  d.twist = Cochain(a, base.coeff(), Level::braided, 3);
  return d;
}

inline ZestingDatum rescaled(const ZestingDatum& d, Int e) {
  ZestingDatum r = d;
  r.base = rescale_form(d.base, e);
  for (auto& v : r.f) v *= e;
  for (auto& v : r.xi) v *= e;
  for (auto& v : r.kappa) v *= e;
  r.twist = embed(d.twist, d.modulus() * e);
  return r;
}

// Characters of the base group, as value tables into Z/n.
inline std::vector<std::vector<Int>> characters_of(const FinAbGroup& a0, Int n) {
  std::vector<std::vector<Int>> out;
  std::vector<std::vector<Int>> choices(a0.rank());
  for (std::size_t i = 0; i < a0.rank(); ++i)
    for (Int v = 0; v < n; ++v)
      if (mulmod(a0.factor(i), v, n) == 0) choices[i].push_back(v);
  std::vector<std::size_t> pick(a0.rank(), 0);
  while (true) {
    std::vector<Int> ch;
    for (const auto& x : a0.elements()) {
      Int s = 0;
      for (std::size_t i = 0; i < a0.rank(); ++i) s = mod(s + x[i] * choices[i][pick[i]], n);
      ch.push_back(s);
    }
    out.push_back(ch);
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

// All homomorphisms A -> Hom(A0, Z/n) as f tables.
inline std::vector<std::vector<Int>> grading_characters(const FinAbGroup& a, const FinAbGroup& a0, Int n) {
  auto chars = characters_of(a0, n);
  const Int m = a0.order();
  std::vector<std::vector<std::size_t>> choices(a.rank());
  for (std::size_t j = 0; j < a.rank(); ++j)
    for (std::size_t c = 0; c < chars.size(); ++c) {
      bool ok = true;
      for (Int X = 0; X < m && ok; ++X) ok = mulmod(a.factor(j), chars[c][X], n) == 0;
      if (ok) choices[j].push_back(c);
    }
  std::vector<std::vector<Int>> out;
  std::vector<std::size_t> pick(a.rank(), 0);
  while (true) {
    std::vector<Int> f;
    for (const auto& x : a.elements())
      for (Int X = 0; X < m; ++X) {
        Int s = 0;
        for (std::size_t j = 0; j < a.rank(); ++j) s = mod(s + x[j] * chars[choices[j][pick[j]]][X], n);
        f.push_back(s);
      }
    out.push_back(f);
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

inline void validate(const ZestingDatum& d) {
  const Int k = d.a_order(), m = d.base_order(), n = d.modulus();
  require(static_cast<Int>(d.f.size()) == k * m && static_cast<Int>(d.L.size()) == k * k &&
              static_cast<Int>(d.xi.size()) == k * k * k && static_cast<Int>(d.kappa.size()) == k * k,
          "zesting datum: table sizes do not match the groups");
  require(d.twist.group() == d.grading && d.twist.level() == Level::braided && d.twist.degree() == 3 &&
              d.twist.coeff() == d.base.coeff(),
          "zesting datum: twist must be a braided 3-cochain on the grading with the base coefficients");
  auto bt = base_tables(d.base);
  auto add = d.grading.addition_table();
  for (Int x = 0; x < k; ++x)
    for (Int X = 0; X < m; ++X) {
      for (Int Y = 0; Y < m; ++Y)
        require(d.fv(x, bt.sum(X, Y)) == mod(d.fv(x, X) + d.fv(x, Y), n), "f(x) is not a character");
      for (Int y = 0; y < k; ++y)
        require(d.fv(add[x * k + y], X) == mod(d.fv(x, X) + d.fv(y, X), n), "f is not a homomorphism");
    }
  for (Int x = 0; x < k; ++x)
    for (Int y = 0; y < k; ++y) {
      Int l = d.Lv(x, y);
      require(l >= 0 && l < m, "L value out of range");
      require(l == d.Lv(y, x), "L is not symmetric");
      if (x == 0 || y == 0) require(l == 0, "L is not normalized");
      for (Int X = 0; X < m; ++X) require(bt.b(l, X) == 0, "L does not take values in the radical");
      for (Int z = 0; z < k; ++z)
        require(bt.sum(d.Lv(add[x * k + y], z), l) == bt.sum(d.Lv(x, add[y * k + z]), d.Lv(y, z)),
                "L is not a 2-cocycle");
    }
}

// Skeletal data of the zested category on S = A0 x A with P = X + |A0| x.
class ZestedCategory {
 public:
  explicit ZestedCategory(const ZestingDatum& d) : d_(d), bt_(base_tables(d.base)) {
    m_ = d.base_order();
    k_ = d.a_order();
    size_ = m_ * k_;
    if (size_ > 16) throw SizeGuardError("skeletal oracle needs |A0 x A| <= 16");
    add_a_ = d.grading.addition_table();
    const Int s = size_;
    sum_.assign(s * s, 0);
    for (Int p = 0; p < s; ++p)
      for (Int q = 0; q < s; ++q) {
        Int x = p / m_, y = q / m_;
        sum_[p * s + q] = bt_.sum(bt_.sum(p % m_, q % m_), d.Lv(x, y)) + m_ * add_a_[x * k_ + y];
      }
    const int t3 = d.twist.shape_index("3"), t11 = d.twist.shape_index("1|1");
    omega_.assign(s * s * s, 0);
    c_.assign(s * s, 0);
    std::vector<Int> a2(2), a3(3);
    for (Int p = 0; p < s; ++p)
      for (Int q = 0; q < s; ++q) {
        a2 = {p / m_, q / m_};
        c_[p * s + q] = mod(d.kappav(p / m_, q / m_) + cc(p, q) + d.twist.value(t11, a2)[0], n());
        for (Int r = 0; r < s; ++r) {
          a3 = {p / m_, q / m_, r / m_};
          omega_[(p * s + q) * s + r] = mod(constant_omega(p, q, r) + d.xiv(p / m_, q / m_, r / m_) +
                                                d.twist.value(t3, a3)[0],
                                            n());
        }
      }
  }

  Int size() const { return size_; }
  Int n() const { return d_.modulus(); }
  Int sum(Int p, Int q) const { return sum_[p * size_ + q]; }
  Int omega(Int p, Int q, Int r) const { return omega_[(p * size_ + q) * size_ + r]; }
  Int c(Int p, Int q) const { return c_[p * size_ + q]; }
  Int grade(Int p) const { return p / m_; }
  Int base_part(Int p) const { return p % m_; }
  Int base_order() const { return m_; }

  // Associator with the xi and twist contributions removed.
  Int constant_omega(Int p, Int q, Int r) const {
    const Int x = p / m_, y = q / m_, z = r / m_;
    const Int lxy = d_.Lv(x, y), lxy_z = d_.Lv(add_a_[x * k_ + y], z);
    const Int lyz = d_.Lv(y, z), lx_yz = d_.Lv(x, add_a_[y * k_ + z]);
    Tree P = leaf(p), Q = leaf(q), R = leaf(r);
    Tree start = node(leaf(lxy_z), node(node(leaf(lxy), node(P, Q)), R));
    Tree t1 = node(node(leaf(lxy_z), leaf(lxy)), node(P, node(Q, R)));
    Tree t2 = node(node(leaf(lx_yz), leaf(lyz)), node(P, node(Q, R)));
    Tree t3 = node(leaf(lx_yz), node(node(leaf(lyz), P), node(Q, R)));
    Tree t4 = node(leaf(lx_yz), node(node(P, leaf(lyz)), node(Q, R)));
    Tree end = node(leaf(lx_yz), node(P, node(leaf(lyz), node(Q, R))));
    Int v = norm(start) - norm(t1) + norm(t2) - norm(t3) + cc(lyz, p) + norm(t4) - norm(end);
    return mod(v, n());
  }

 private:
  struct Tree {
    std::vector<Int> leaves;  // left to right
    std::vector<Tree> kids;   // empty for a leaf
  };
  static Tree leaf(Int p) { return {{p}, {}}; }
  static Tree node(Tree a, Tree b) {
    Tree t;
    t.leaves = a.leaves;
    t.leaves.insert(t.leaves.end(), b.leaves.begin(), b.leaves.end());
    t.kids = {std::move(a), std::move(b)};
    return t;
  }
  // Undeformed structure on A0 x A (direct product law).
  Int plain_sum(Int p, Int q) const { return bt_.sum(p % m_, q % m_) + m_ * add_a_[(p / m_) * k_ + q / m_]; }
  Int cw(Int p, Int q, Int r) const { return bt_.w(p % m_, q % m_, r % m_); }
  Int cc(Int p, Int q) const { return mod(d_.fv(p / m_, q % m_) + bt_.br(p % m_, q % m_), n()); }
  Int product(const std::vector<Int>& v, std::size_t from) const {
    Int s = 0;
    for (std::size_t i = from; i < v.size(); ++i) s = plain_sum(s, v[i]);
    return s;
  }
  // Scalar of the canonical map from the tree to its right-normed form.
  Int norm(const Tree& t) const {
    if (t.kids.empty()) return 0;
    return norm(t.kids[0]) + norm(t.kids[1]) + concat(t.kids[0].leaves, t.kids[1].leaves);
  }
  Int concat(const std::vector<Int>& a, const std::vector<Int>& b) const {
    Int s = 0;
    const Int pb = product(b, 0);
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      std::vector<Int> rest(a.begin() + i + 1, a.end());
      s += cw(a[i], product(rest, 0), pb);
    }
    return s;
  }

  ZestingDatum d_;
  BaseTables bt_;
  Int m_ = 1, k_ = 1, size_ = 1;
  std::vector<Int> add_a_, sum_, omega_, c_;
};

struct OracleResult {
  bool ok = true;
  std::string check;          // "pentagon", "hexagon1", "hexagon2"
  std::vector<Int> witness;   // simple objects as indices X + |A0| x
  Int defect = 0;
};

template <class Cat>
OracleResult check_coherence(const Cat& s) {
  const Int n = s.n(), N = s.size();
  for (Int p = 0; p < N; ++p)
    for (Int q = 0; q < N; ++q)
      for (Int r = 0; r < N; ++r) {
        Int h1 = s.c(p, s.sum(q, r)) - s.c(p, q) - s.c(p, r) - s.omega(q, p, r) + s.omega(q, r, p) + s.omega(p, q, r);
        if (mod(h1, n)) return {false, "hexagon1", {p, q, r}, mod(h1, n)};
        Int h2 = s.c(s.sum(p, q), r) - s.c(p, r) - s.c(q, r) + s.omega(p, r, q) - s.omega(r, p, q) - s.omega(p, q, r);
        if (mod(h2, n)) return {false, "hexagon2", {p, q, r}, mod(h2, n)};
        for (Int w = 0; w < N; ++w) {
          Int pe = s.omega(q, r, w) - s.omega(s.sum(p, q), r, w) + s.omega(p, s.sum(q, r), w) -
                   s.omega(p, q, s.sum(r, w)) + s.omega(p, q, r);
          if (mod(pe, n)) return {false, "pentagon", {p, q, r, w}, mod(pe, n)};
        }
      }
  return {};
}

inline OracleResult skeletal_oracle(const ZestingDatum& d) {
  validate(d);
  return check_coherence(ZestedCategory(d));
}

namespace detail {

// Normalized (xi, kappa) making the datum coherent at its own modulus, if any.
inline std::optional<ZestingDatum> solve_xi_kappa_at(const ZestingDatum& d) {
  ZestedCategory s(d);
  const Int k = d.a_order(), n = d.modulus(), N = s.size();
  const Int k1 = k - 1;
  const Int nxi = k1 * k1 * k1;
  auto xi_var = [&](Int x, Int y, Int z) -> Int {
    if (!x || !y || !z) return -1;
    return ((x - 1) * k1 + (y - 1)) * k1 + (z - 1);
  };
  auto ka_var = [&](Int x, Int y) -> Int {
    if (!x || !y) return -1;
    return nxi + (x - 1) * k1 + (y - 1);
  };
  std::map<std::pair<std::map<Int, Int>, Int>, int> rows;
  auto emit = [&](std::map<Int, Int> coeffs, Int rhs) {
    std::map<Int, Int> clean;
    for (auto [v, c] : coeffs)
      if (v >= 0 && mod(c, n)) clean[v] = mod(c, n);
    rhs = mod(rhs, n);
    if (clean.empty() && rhs) return false;
    if (!clean.empty()) rows[{clean, rhs}] = 1;
    return true;
  };
  auto gr = [&](Int p) { return s.grade(p); };
  for (Int p = 0; p < N; ++p)
    for (Int q = 0; q < N; ++q)
      for (Int r = 0; r < N; ++r) {
        std::map<Int, Int> h1, h2;
        auto acc = [](std::map<Int, Int>& m, Int v, Int c) {
          if (v >= 0) m[v] += c;
        };
        acc(h1, ka_var(gr(p), gr(s.sum(q, r))), 1), acc(h1, ka_var(gr(p), gr(q)), -1), acc(h1, ka_var(gr(p), gr(r)), -1);
        acc(h1, xi_var(gr(q), gr(p), gr(r)), -1), acc(h1, xi_var(gr(q), gr(r), gr(p)), 1);
        acc(h1, xi_var(gr(p), gr(q), gr(r)), 1);
        Int c1 = s.c(p, s.sum(q, r)) - s.c(p, q) - s.c(p, r) - s.omega(q, p, r) + s.omega(q, r, p) + s.omega(p, q, r);
        if (!emit(h1, -c1)) return std::nullopt;
        acc(h2, ka_var(gr(s.sum(p, q)), gr(r)), 1), acc(h2, ka_var(gr(p), gr(r)), -1), acc(h2, ka_var(gr(q), gr(r)), -1);
        acc(h2, xi_var(gr(p), gr(r), gr(q)), 1), acc(h2, xi_var(gr(r), gr(p), gr(q)), -1);
        acc(h2, xi_var(gr(p), gr(q), gr(r)), -1);
        Int c2 = s.c(s.sum(p, q), r) - s.c(p, r) - s.c(q, r) + s.omega(p, r, q) - s.omega(r, p, q) - s.omega(p, q, r);
        if (!emit(h2, -c2)) return std::nullopt;
        for (Int w = 0; w < N; ++w) {
          std::map<Int, Int> pe;
          acc(pe, xi_var(gr(q), gr(r), gr(w)), 1), acc(pe, xi_var(gr(s.sum(p, q)), gr(r), gr(w)), -1);
          acc(pe, xi_var(gr(p), gr(s.sum(q, r)), gr(w)), 1), acc(pe, xi_var(gr(p), gr(q), gr(s.sum(r, w))), -1);
          acc(pe, xi_var(gr(p), gr(q), gr(r)), 1);
          Int c3 = s.omega(q, r, w) - s.omega(s.sum(p, q), r, w) + s.omega(p, s.sum(q, r), w) -
                   s.omega(p, q, s.sum(r, w)) + s.omega(p, q, r);
          if (!emit(pe, -c3)) return std::nullopt;
        }
      }
  const Int vars = nxi + k1 * k1;
  ZestingDatum out = d;
  if (vars == 0 || rows.empty()) return rows.empty() ? std::optional<ZestingDatum>(out) : std::nullopt;
  SparseIntMatrix mat(rows.size(), static_cast<std::size_t>(vars));
  std::vector<Int> rhs;
  std::size_t i = 0;
  for (const auto& [key, _] : rows) {
    for (auto [v, c] : key.first) mat.add(i, static_cast<std::size_t>(v), c);
    rhs.push_back(key.second);
    ++i;
  }
  auto sol = solve_mod(mat, rhs, n);
  if (!sol) return std::nullopt;
  for (Int x = 1; x < k; ++x)
    for (Int y = 1; y < k; ++y) {
      out.kappa[x * k + y] = mod(out.kappa[x * k + y] + (*sol)[ka_var(x, y)], n);
      for (Int z = 1; z < k; ++z)
        out.xi[(x * k + y) * k + z] = mod(out.xi[(x * k + y) * k + z] + (*sol)[xi_var(x, y, z)], n);
    }
  return out;
}

}  // namespace detail

// Search for (xi, kappa) trivializing the datum in the k^x model: solved at modulus n e and rechecked at a
// larger e. The returned datum lives at modulus n e and is verified by the oracle.
inline std::optional<ZestingDatum> solve_xi_kappa(const ZestingDatum& d, Int factor = 0) {
  validate(d);
  const Int ex = std::max<Int>(2, d.grading.exponent());
  if (factor == 0) factor = 2 * ex * ex;
  auto sol = detail::solve_xi_kappa_at(rescaled(d, factor));
  auto check = detail::solve_xi_kappa_at(rescaled(d, factor * ex));
  if (sol.has_value() != check.has_value()) throw ConsistencyError("unstable (xi, kappa) solvability");
  if (sol && !skeletal_oracle(*sol).ok) throw ConsistencyError("solved (xi, kappa) fails the oracle");
  return sol;
}

// Q_Z(x) = f(x)(Z(x)) + q0(Z(x)) in Z/n', n' = lcm(n, 2 exp(A)^2).
inline QuadraticForm pw1(const QuadraticForm& base, const FinAbGroup& a, const std::vector<Int>& f,
                         const GroupHom& z) {
  require(z.domain() == a && z.codomain() == base.group(), "pw1: Z must map the grading to the base group");
  auto bt = base_tables(base);
  const Int m = base.group().order();
  for (const auto& x : a.elements()) {
    Int zx = base.group().index_of(z(x));
    for (Int X = 0; X < m; ++X)
      if (bt.b(zx, X)) throw ValidationError("pw1: Z does not land in the radical");
  }
  const Int n = bt.n, n2 = lcm(n, 2 * a.exponent() * a.exponent());
  std::vector<Element> v;
  for (Int x = 0; x < a.order(); ++x) {
    Int zx = base.group().index_of(z(a.element(x)));
    v.push_back({(f[x * m + zx] + base(zx)[0]) * (n2 / n)});
  }
  return QuadraticForm(a, FinAbGroup::cyclic(n2), v);
}

// Braided 4-cochain: (x,y,z,w) -> c0(L_xy, L_zw), (x,y|z) -> 0, (x|y,z) -> f(x)(L_yz).
inline Cochain pw2(const QuadraticForm& base, const FinAbGroup& a, const std::vector<Int>& f,
                   const std::vector<Int>& L) {
  auto bt = base_tables(base);
  const Int k = a.order(), m = base.group().order();
  Cochain c(a, base.coeff(), Level::braided, 4);
  const int s4 = c.shape_index("4"), s12 = c.shape_index("1|2");
  std::vector<Int> args4(4), args3(3);
  for (Int x = 1; x < k; ++x)
    for (Int y = 1; y < k; ++y)
      for (Int z = 1; z < k; ++z) {
        args3 = {x, y, z};
        c.set(s12, args3, {f[x * m + L[y * k + z]]});
        for (Int w = 1; w < k; ++w) {
          args4 = {x, y, z, w};
          c.set(s4, args4, {bt.br(L[x * k + y], L[z * k + w])});
        }
      }
  if (!is_cocycle(c)) throw ConsistencyError("pw2 output is not a braided 4-cocycle");
  return c;
}

inline bool pw2_trivial(const QuadraticForm& base, const FinAbGroup& a, const std::vector<Int>& f,
                        const std::vector<Int>& L) {
  if (a.trivial()) return true;
  return stably_trivial(pw2(base, a, f, L));
}

// All normalized symmetric 2-cocycles A x A -> radical, as tables of base indices.
inline std::vector<std::vector<Int>> symmetric_cocycles(const FinAbGroup& a, const QuadraticForm& base) {
  auto rad = radical(base);
  const Int k = a.order(), r = rad.group.order();
  std::vector<std::pair<Int, Int>> cells;
  for (Int x = 1; x < k; ++x)
    for (Int y = x; y < k; ++y) cells.push_back({x, y});
  Int total = 1;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    total *= r;
    if (total > size_guard()) throw SizeGuardError("too many symmetric 2-cochains to enumerate");
  }
  auto rad_el = rad.group.elements();
  std::vector<Int> rad_index;
  for (const auto& e : rad_el) rad_index.push_back(base.group().index_of(rad.inclusion(e)));
  auto add_a = a.addition_table();
  auto add0 = base.group().addition_table();
  const Int m = base.group().order();
  std::vector<std::vector<Int>> out;
  std::vector<Int> pick(cells.size(), 0);
  for (Int it = 0; it < total; ++it) {
    std::vector<Int> L(k * k, 0);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      auto [x, y] = cells[i];
      L[x * k + y] = L[y * k + x] = rad_index[pick[i]];
    }
    bool ok = true;
    for (Int x = 1; x < k && ok; ++x)
      for (Int y = 1; y < k && ok; ++y)
        for (Int z = 1; z < k && ok; ++z)
          ok = add0[L[add_a[x * k + y] * k + z] * m + L[x * k + y]] == add0[L[x * k + add_a[y * k + z]] * m + L[y * k + z]];
    if (ok) out.push_back(L);
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == r) pick[i++] = 0;
  }
  return out;
}

struct LClass {
  std::vector<Int> L;
  bool pw2_trivial = false;
  std::optional<ZestingDatum> witness;
};

struct QuasiTrivialOrbit {
  std::vector<Int> f;                    // representative
  std::vector<std::vector<Int>> members;
  std::vector<LClass> l_classes;
  FinAbGroup fiber;                      // coker pw1
  Int classes = 0;
};

struct QuasiTrivialReport {
  FinAbGroup grading, base_group, radical_group;
  std::vector<QuasiTrivialOrbit> orbits;  // per-degree Z reading
  Int total = 0;
  Int total_constant_reading = 0;         // f's never identified
};

namespace detail {

inline FinAbGroup pw1_cokernel(const QuadraticForm& base, const FinAbGroup& a, const std::vector<Int>& f) {
  auto rad = radical(base);
  HomGroup hom(a, rad.group);
  const Int n2 = lcm(base.coeff().factor(0), 2 * a.exponent() * a.exponent());
  QuadGroup quad(a, FinAbGroup::cyclic(n2));
  std::vector<Element> imgs;
  for (std::size_t i = 0; i < hom.group().rank(); ++i) {
    auto z = rad.inclusion.compose_after(hom.to_hom(hom.group().basis(i)));
    imgs.push_back(quad.coords(pw1(base, a, f, z)));
  }
  return kernel_cokernel(GroupHom::from_images(hom.group(), quad.group(), imgs)).cokernel;
}

}  // namespace detail

inline QuasiTrivialReport enumerate_quasi_trivial(const QuadraticForm& base, const FinAbGroup& a) {
  require(a.order() <= 8 && base.group().order() <= 8, "enumerate_quasi_trivial needs |A|, |A0| <= 8");
  QuasiTrivialReport rep;
  rep.grading = a;
  rep.base_group = base.group();
  auto rad = radical(base);
  rep.radical_group = rad.group;
  const Int n = base.coeff().factor(0), m = base.group().order(), k = a.order();
  auto bt = base_tables(base);
  auto fs = grading_characters(a, base.group(), n);
  // shifts x -> b0(Z(x), .) for Z in Hom(A, A0)
  HomGroup homz(a, base.group());
  std::vector<std::vector<Int>> shifts;
  for (const auto& c : homz.group().elements()) {
    auto z = homz.to_hom(c);
    std::vector<Int> s(k * m);
    for (Int x = 0; x < k; ++x)
      for (Int X = 0; X < m; ++X) s[x * m + X] = bt.b(base.group().index_of(z(a.element(x))), X);
    shifts.push_back(s);
  }
  // L classes: representatives of H^2_br(A, radical)
  std::vector<std::vector<Int>> lreps;
  if (a.trivial() || rad.group.trivial()) {
    lreps.push_back(std::vector<Int>(k * k, 0));
  } else {
    auto h = cohomology(a, rad.group, Level::braided, 2);
    for (const auto& cls : h.invariants().elements()) {
      auto c = h.cocycle_of(cls);
      std::vector<Int> L(k * k, 0);
      for (Int x = 1; x < k; ++x)
        for (Int y = 1; y < k; ++y) L[x * k + y] = base.group().index_of(rad.inclusion(c.value("2", {x, y})));
      lreps.push_back(L);
    }
  }
  std::vector<char> seen(fs.size(), 0);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (seen[i]) continue;
    QuasiTrivialOrbit orb;
    orb.f = fs[i];
    for (const auto& s : shifts) {
      std::vector<Int> g(fs[i].size());
      for (std::size_t j = 0; j < g.size(); ++j) g[j] = mod(fs[i][j] + s[j], n);
      auto it = std::find(fs.begin(), fs.end(), g);
      if (it == fs.end()) throw ConsistencyError("f shift left the homomorphism set");
      std::size_t idx = static_cast<std::size_t>(it - fs.begin());
      if (!seen[idx]) seen[idx] = 1, orb.members.push_back(g);
    }
    orb.fiber = detail::pw1_cokernel(base, a, orb.f);
    Int zeros = 0;
    for (const auto& L : lreps) {
      LClass lc;
      lc.L = L;
      lc.pw2_trivial = pw2_trivial(base, a, orb.f, L);
      if (lc.pw2_trivial) {
        ++zeros;
        auto d = trivial_datum(base, a);
        d.f = orb.f;
        d.L = L;
        lc.witness = solve_xi_kappa(d);
        if (!lc.witness) throw ConsistencyError("trivial pw2 class without a coherent witness");
      }
      orb.l_classes.push_back(std::move(lc));
    }
    orb.classes = zeros * orb.fiber.order();
    rep.total += orb.classes;
    rep.orbits.push_back(std::move(orb));
  }
  for (const auto& f : fs) {
    Int zeros = 0;
    for (const auto& L : lreps) zeros += pw2_trivial(base, a, f, L);
    rep.total_constant_reading += zeros * detail::pw1_cokernel(base, a, f).order();
  }
  return rep;
}

}  // namespace emcoh
