#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emcoh/groupcoh.hpp"
#include "emcoh/quadratic.hpp"

namespace emcoh {

// Values of a homomorphism G -> Z/L, indexed by group element.
using Character = std::vector<Int>;

struct SymmetricFusionData {
  FiniteGroup group;
  Int t = 0;
};

inline SymmetricFusionData symmetric_data(FiniteGroup g, Int t) {
  require(t >= 0 && t < g.order(), "t out of range");
  require(g.is_central(t), "t is not central");
  require(g.mul(t, t) == g.identity(), "t is not an involution");
  return {std::move(g), t};
}

inline Int model_modulus(const GroupCochain& c) {
  require(c.coeff().rank() == 1, "expected cyclic coefficients");
  return c.coeff().factor(0);
}

inline Int xi(const GroupCochain& gamma, Int g, Int t) {
  require(gamma.degree() == 2, "xi needs a 2-cochain");
  const Int L = model_modulus(gamma);
  Int v = mod(gamma.value({t, g})[0] - gamma.value({g, t})[0], L);
  if (v == 0) return 0;
  if (L % 2 == 0 && v == L / 2) return 1;
  throw ConsistencyError("xi: gamma(t,g) - gamma(g,t) is not 2-torsion");
}

inline GroupCochain twisted_product(const GroupCochain& a, const GroupCochain& b, Int t) {
  require(a.same_space(b) && a.degree() == 2, "twisted product: mismatched cochains");
  const auto& g = a.group();
  const Int L = model_modulus(a);
  GroupCochain r = a + b;
  if (t == g.identity()) return r;
  std::vector<Int> xa(g.order()), xb(g.order());
  for (Int x = 0; x < g.order(); ++x) xa[x] = xi(a, x, t), xb[x] = xi(b, x, t);
  for (Int f : g.nonidentity())
    for (Int h : g.nonidentity())
      if (xa[f] && xb[h]) r.set({f, h}, {r.value({f, h})[0] + L / 2});
  return r;
}

// g -> gamma(g, w) - gamma(w, g)
inline Character gamma_at(const GroupCochain& gamma, Int w) {
  const Int L = model_modulus(gamma);
  Character c(gamma.group().order());
  for (Int g = 0; g < gamma.group().order(); ++g) c[g] = mod(gamma.value({g, w})[0] - gamma.value({w, g})[0], L);
  return c;
}

inline Character add_characters(const Character& a, const Character& b, Int L) {
  Character r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] + b[i], L);
  return r;
}

struct PicElement {
  Element cls;  // class in the stable H^2
  Int eps = 0;  // split factor, 0 when non-split
  bool operator==(const PicElement&) const = default;
};

class PicGroup {
 public:
  explicit PicGroup(SymmetricFusionData s)
      : s_(std::move(s)), h2_(stable_group_cohomology(s_.group, 2)) {
    L_ = h2_.coefficients().factor(0);
    classes_ = h2_.invariants().elements();
    const Int n = static_cast<Int>(classes_.size());
    if (s_.t != s_.group.identity()) split_ = split_central_involution(s_.group, s_.t);
    table_.assign(n, std::vector<Int>(n));
    std::vector<GroupCochain> reps;
    for (const auto& c : classes_) reps.push_back(h2_.cocycle_of(c));
    for (Int a = 0; a < n; ++a)
      for (Int b = 0; b < n; ++b) {
        auto p = twisted_product(reps[a], reps[b], s_.t);
        if (!is_group_cocycle(p)) throw ConsistencyError("twisted product is not a cocycle");
        table_[a][b] = h2_.invariants().index_of(h2_.class_of(p));
      }
    for (Int a = 0; a < n; ++a)
      for (Int b = 0; b < n; ++b)
        if (table_[a][b] != table_[b][a]) throw ConsistencyError("twisted product is not commutative on classes");
    twisted_ = invariants_from_torsion_counts(n, [&](Int k) {
      Int c = 0;
      for (Int a = 0; a < n; ++a) c += power_index(a, k) == 0;
      return c;
    });
    invariants_ = split_ ? direct_sum(twisted_, FinAbGroup::cyclic(2)) : twisted_;
  }

  const SymmetricFusionData& data() const { return s_; }
  const GroupCohomology& h2() const { return h2_; }
  Int modulus() const { return L_; }
  bool split() const { return split_.has_value(); }
  // Chosen splitting character G -> Z/2 with value 1 at t.
  const std::optional<std::vector<Int>>& splitting() const { return split_; }
  const FinAbGroup& twisted_invariants() const { return twisted_; }
  const FinAbGroup& invariants() const { return invariants_; }
  Int order() const { return invariants_.order(); }
  const std::vector<std::vector<Int>>& table() const { return table_; }

  std::vector<PicElement> elements() const {
    std::vector<PicElement> out;
    for (Int e = 0; e < (split() ? 2 : 1); ++e)
      for (const auto& c : classes_) out.push_back({c, e});
    return out;
  }
  PicElement identity() const { return {h2_.invariants().zero(), 0}; }
  PicElement mul(const PicElement& a, const PicElement& b) const {
    check(a), check(b);
    Int i = table_[index(a.cls)][index(b.cls)];
    return {classes_[i], (a.eps + b.eps) % 2};
  }
  GroupCochain cocycle(const PicElement& p) const {
    check(p);
    return h2_.cocycle_of(p.cls);
  }
  void check(const PicElement& p) const {
    require(p.cls.size() == h2_.invariants().rank() && h2_.invariants().contains(p.cls), "Pic element: bad class");
    require(p.eps == 0 || (split() && p.eps == 1), "Pic element: split flag only allowed when split");
  }
  // Character G -> Z/L with values 0 or L/2.
  Character split_character() const {
    Character c(s_.group.order(), 0);
    if (split_)
      for (Int g = 0; g < s_.group.order(); ++g) c[g] = (*split_)[g] ? L_ / 2 : 0;
    return c;
  }

 private:
  Int index(const Element& c) const { return h2_.invariants().index_of(c); }
  Int power_index(Int a, Int k) const {
    Int r = 0;
    for (Int i = 0; i < k; ++i) r = table_[r][a];
    return r;
  }

  SymmetricFusionData s_;
  GroupCohomology h2_;
  Int L_ = 1;
  std::vector<Element> classes_;
  std::optional<std::vector<Int>> split_;
  std::vector<std::vector<Int>> table_;
  FinAbGroup twisted_, invariants_;
};

inline PicGroup pic(const SymmetricFusionData& s) { return PicGroup(s); }

// gamma_t, plus the splitting character when eps = 1.
inline Character pic_Q(const PicGroup& pg, const PicElement& p) {
  const auto& s = pg.data();
  Character c(s.group.order(), 0);
  if (s.t == s.group.identity()) return c;
  auto gamma = pg.cocycle(p);
  for (Int g = 0; g < s.group.order(); ++g)
    c[g] = mod(gamma.value({s.t, g})[0] - gamma.value({g, s.t})[0], pg.modulus());
  if (p.eps) c = add_characters(c, pg.split_character(), pg.modulus());
  return c;
}

// <p, z> = gamma_{z t^{xi(z)}} + chi(z) eps nu
inline Character pairing(const PicGroup& pg, const PicElement& p, Int z) {
  const auto& s = pg.data();
  require(z >= 0 && z < s.group.order() && s.group.is_central(z), "pairing: z is not central");
  auto gamma = pg.cocycle(p);
  Int w = z;
  if (s.t != s.group.identity() && xi(gamma, z, s.t)) w = s.group.mul(z, s.t);
  auto c = gamma_at(gamma, w);
  if (p.eps && pg.split() && (*pg.splitting())[z]) c = add_characters(c, pg.split_character(), pg.modulus());
  return c;
}

inline FinAbGroup abelian_invariants(const FiniteGroup& g) {
  require(g.is_abelian(), "group is not abelian");
  return invariants_from_torsion_counts(g.order(), [&](Int k) {
    Int c = 0;
    for (Int x = 0; x < g.order(); ++x) c += g.power(x, k) == g.identity();
    return c;
  });
}

struct PicBrElement {
  PicElement p;
  Int z = 0;
  bool operator==(const PicBrElement&) const = default;
};

class PicBr {
 public:
  explicit PicBr(const SymmetricFusionData& s) : pic_(s) {
    center_ = s.group.center();
    center_group_ = abelian_invariants(subgroup(s.group, center_).group);
    pi0_ = direct_sum(pic_.invariants(), center_group_);
    dual_ = group_cohomology(s.group, FinAbGroup::cyclic(pic_.modulus()), 1).invariants();
  }

  const PicGroup& pic() const { return pic_; }
  const std::vector<Int>& center() const { return center_; }
  const FinAbGroup& pi0() const { return pi0_; }
  const FinAbGroup& pi1() const { return dual_; }
  std::string pi2() const { return "k^x"; }
  Int modulus() const { return pic_.modulus(); }

  std::vector<PicBrElement> elements() const {
    std::vector<PicBrElement> out;
    for (const auto& p : pic_.elements())
      for (Int z : center_) out.push_back({p, z});
    return out;
  }
  PicBrElement mul(const PicBrElement& a, const PicBrElement& b) const {
    return {pic_.mul(a.p, b.p), pic_.data().group.mul(a.z, b.z)};
  }
  // Q(p, z) = Q_Pic(p) + <p, z>
  Character Q(const PicBrElement& x) const {
    return add_characters(pic_Q(pic_, x.p), pairing(pic_, x.p, x.z), modulus());
  }
  // chi -> chi(t), as a bit
  Int second_class(const Character& chi) const {
    Int v = chi[pic_.data().t];
    if (v == 0) return 0;
    require(2 * v == modulus(), "second class: chi(t) is not 2-torsion");
    return 1;
  }
  Int whitehead(const PicBrElement& x, const Character& chi) const { return chi[x.z]; }

  // All characters G -> Z/L.
  std::vector<Character> characters() const {
    const auto& g = pic_.data().group;
    auto h1 = group_cohomology(g, FinAbGroup::cyclic(modulus()), 1);
    std::vector<Character> out;
    for (const auto& c : h1.invariants().elements()) {
      auto f = h1.cocycle_of(c);
      Character ch(g.order(), 0);
      for (Int x : g.nonidentity()) ch[x] = f.value({x})[0];
      out.push_back(ch);
    }
    return out;
  }

 private:
  PicGroup pic_;
  std::vector<Int> center_;
  FinAbGroup center_group_, pi0_, dual_;
};

inline PicBr picbr_invariants(const SymmetricFusionData& s) { return PicBr(s); }

struct PointedBraidedData {
  QuadraticForm q;
  const FinAbGroup& group() const { return q.group(); }
};

inline PointedBraidedData zsym(const PointedBraidedData& b) {
  auto rad = radical(b.q);
  std::vector<Element> v;
  for (const auto& x : rad.group.elements()) v.push_back(rad.tau(x));
  return {QuadraticForm(rad.group, b.q.coeff(), v)};
}

struct PicBrPointed {
  FinAbGroup perp;
  bool tau_trivial = true;
  bool split = false;
  FinAbGroup dual;       // character group of the radical, the symmetric side's G
  Int t = 0;             // index in dual
  FinAbGroup pipeline;
  FinAbGroup closed_form;         // hat read as characters of the radical
  FinAbGroup closed_form_full_a;  // hat read as characters of A
  bool agree = true;
};

inline PicBrPointed picbr_pointed(const PointedBraidedData& b) {
  require(b.q.coeff().rank() <= 1, "pointed data: expected cyclic coefficients");
  auto center = zsym(b);
  const auto& h = center.group();
  const Int n = b.q.coeff().trivial() ? 1 : b.q.coeff().factor(0);
  PicBrPointed r;
  r.perp = h;
  const Int e = std::max<Int>(1, h.exponent());
  HomGroup hom(h, FinAbGroup::cyclic(e));
  std::vector<Element> imgs;
  for (std::size_t i = 0; i < h.rank(); ++i) {
    Int v = center.q(h.basis(i)).empty() ? 0 : center.q(h.basis(i))[0];
    if (v) r.tau_trivial = false;
    imgs.push_back(FinAbGroup::cyclic(e).reduce({v ? e / 2 : 0}));
    if (v) require(2 * v == n && e % 2 == 0, "radical form is not 2-torsion");
  }
  r.dual = hom.group();
  r.t = r.dual.index_of(hom.from_hom(GroupHom::from_images(h, FinAbGroup::cyclic(e), imgs)));
  for (const auto& x : h.elements())
    if (h.is_zero(h.scale(2, x)) && !center.q(x).empty() && center.q(x)[0]) r.split = true;
  auto sym = symmetric_data(FiniteGroup::abelian(r.dual), r.t);
  r.pipeline = picbr_invariants(sym).pi0();
  FinAbGroup extra = !r.tau_trivial && !r.split ? FinAbGroup::cyclic(2) : FinAbGroup();
  r.closed_form = direct_sum(direct_sum(exterior_square(h), extra), h);
  r.closed_form_full_a = direct_sum(direct_sum(exterior_square(b.group()), extra), h);
  r.agree = r.pipeline == r.closed_form;
  return r;
}

}  // namespace emcoh
