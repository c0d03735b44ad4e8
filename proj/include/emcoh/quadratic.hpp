#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emcoh/cochain.hpp"

namespace emcoh {

// Quadratic map q: A -> M, stored as a value table indexed by element index.
class QuadraticForm {
 public:
  QuadraticForm() = default;
  QuadraticForm(FinAbGroup a, FinAbGroup m, std::vector<Element> values)
      : a_(std::move(a)), m_(std::move(m)), v_(std::move(values)) {
    require(static_cast<Int>(v_.size()) == a_.order(), "quadratic form: wrong number of values");
    for (auto& x : v_) {
      require(x.size() == m_.rank(), "quadratic form: value has wrong rank");
      x = m_.reduce(x);
    }
    if (auto err = violation()) throw ValidationError("not a quadratic map: " + *err);
  }

  // From q(e_i) and b(e_i, e_j) for i < j (row-major over pairs).
  static QuadraticForm from_generators(const FinAbGroup& a, const FinAbGroup& m, const std::vector<Element>& diag,
                                       const std::vector<Element>& polar) {
    require(diag.size() == a.rank(), "quadratic form: need one value per generator");
    require(polar.size() == a.rank() * (a.rank() - (a.rank() ? 1 : 0)) / 2, "quadratic form: need one value per pair");
    std::vector<Element> v;
    for (const auto& x : a.elements()) {
      Element s = m.zero();
      std::size_t p = 0;
      for (std::size_t i = 0; i < a.rank(); ++i) {
        s = m.add(s, m.scale(x[i] * x[i], diag[i]));
        for (std::size_t j = i + 1; j < a.rank(); ++j, ++p) s = m.add(s, m.scale(x[i] * x[j], polar[p]));
      }
      v.push_back(s);
    }
    return QuadraticForm(a, m, v);
  }

  const FinAbGroup& group() const { return a_; }
  const FinAbGroup& coeff() const { return m_; }
  const std::vector<Element>& values() const { return v_; }
  const Element& operator()(Int index) const { return v_[index]; }
  const Element& operator()(const Element& x) const { return v_[a_.index_of(x)]; }
  Element polarization(Int x, Int y) const {
    return m_.sub(m_.sub(v_[a_.index_of(a_.add(a_.element(x), a_.element(y)))], v_[x]), v_[y]);
  }
  bool operator==(const QuadraticForm& o) const { return a_ == o.a_ && m_ == o.m_ && v_ == o.v_; }
  QuadraticForm operator+(const QuadraticForm& o) const {
    std::vector<Element> v;
    for (std::size_t i = 0; i < v_.size(); ++i) v.push_back(m_.add(v_[i], o.v_[i]));
    return QuadraticForm(a_, m_, v);
  }

  // First violated axiom, if any.
  std::optional<std::string> violation() const {
    const Int n = a_.order();
    if (!m_.is_zero(v_[0])) return "q(0) != 0";
    const auto add = a_.addition_table();
    std::vector<Element> b(n * n);
    for (Int x = 0; x < n; ++x)
      for (Int y = 0; y < n; ++y) b[x * n + y] = m_.sub(m_.sub(v_[add[x * n + y]], v_[x]), v_[y]);
    for (Int x = 0; x < n; ++x)
      for (Int y = 0; y < n; ++y)
        for (Int z = 0; z < n; ++z)
          if (b[add[x * n + y] * n + z] != m_.add(b[x * n + z], b[y * n + z])) return "polarization not biadditive";
    for (Int x = 0; x < n; ++x) {
      Int kx = 0;
      for (Int k = 0; k <= a_.exponent(); ++k) {
        if (v_[kx] != m_.scale(k * k, v_[x])) return "q(nx) != n^2 q(x)";
        kx = add[kx * n + x];
      }
    }
    return std::nullopt;
  }

 private:
  FinAbGroup a_, m_;
  std::vector<Element> v_;
};

// Quad(A, M) by exhaustive search: every quadratic map is determined by q(e_i) and b(e_i, e_j),
// and each candidate table is checked against the axioms.
class QuadGroup {
 public:
  QuadGroup(FinAbGroup a, FinAbGroup m) : a_(std::move(a)), m_(std::move(m)) {
    const std::size_t r = a_.rank();
    std::vector<std::vector<Element>> diag_cand(r), polar_cand;
    for (std::size_t i = 0; i < r; ++i) {
      Int d = a_.factor(i);
      for (const auto& s : m_.elements())
        if (m_.is_zero(m_.scale(d * d, s)) && m_.is_zero(m_.scale(2 * d, s))) diag_cand[i].push_back(s);
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j) {
        std::vector<Element> c;
        Int g = gcd(a_.factor(i), a_.factor(j));
        for (const auto& s : m_.elements())
          if (m_.is_zero(m_.scale(g, s))) c.push_back(s);
        polar_cand.push_back(c);
      }
    std::vector<std::vector<Element>*> slots;
    for (auto& c : diag_cand) slots.push_back(&c);
    for (auto& c : polar_cand) slots.push_back(&c);
    Int total = 1;
    for (auto* s : slots) total *= static_cast<Int>(s->size());
    check_size(total, "quadratic form search");
    std::vector<std::size_t> idx(slots.size(), 0);
    for (Int t = 0; t < total; ++t) {
      Int rem = t;
      for (std::size_t k = slots.size(); k-- > 0;) {
        idx[k] = static_cast<std::size_t>(rem % static_cast<Int>(slots[k]->size()));
        rem /= static_cast<Int>(slots[k]->size());
      }
      std::vector<Element> dg, pl;
      for (std::size_t k = 0; k < r; ++k) dg.push_back((*slots[k])[idx[k]]);
      for (std::size_t k = r; k < slots.size(); ++k) pl.push_back((*slots[k])[idx[k]]);
      try {
        forms_.push_back(QuadraticForm::from_generators(a_, m_, dg, pl));
      } catch (const ValidationError&) {
      }
    }
    // group structure inside M^{|A|}
    std::vector<Int> orders;
    for (Int x = 0; x < a_.order(); ++x)
      for (Int f : m_.factors()) orders.push_back(f);
    ambient_ = canonicalize_orders(orders);
    std::vector<Element> gens;
    for (const auto& q : forms_) gens.push_back(ambient_.to_canonical(flatten(q)));
    sub_ = subgroup_generated(ambient_.group, gens);
    if (sub_.image.order() != static_cast<Int>(forms_.size()))
      throw ConsistencyError("quadratic maps do not form a group of the expected order");
  }

  const FinAbGroup& group() const { return sub_.image; }
  Int order() const { return sub_.image.order(); }
  const std::vector<QuadraticForm>& all() const { return forms_; }

  Element coords(const QuadraticForm& q) const {
    auto pre = preimage(sub_.inclusion, ambient_.to_canonical(flatten(q)));
    if (!pre) throw ValidationError("form not in Quad(A, M)");
    return *pre;
  }
  QuadraticForm form(const Element& c) const {
    auto amb = sub_.inclusion(c);
    auto raw = ambient_.lift(amb);
    std::vector<Element> v;
    std::size_t k = 0;
    for (Int x = 0; x < a_.order(); ++x) {
      Element e(m_.rank());
      for (std::size_t j = 0; j < m_.rank(); ++j, ++k)
        e[j] = static_cast<Int>(floor_mod(raw[k], BigInt(m_.factor(j))));
      v.push_back(e);
    }
    return QuadraticForm(a_, m_, v);
  }

 private:
  std::vector<Int> flatten(const QuadraticForm& q) const {
    std::vector<Int> raw;
    for (const auto& e : q.values()) raw.insert(raw.end(), e.begin(), e.end());
    return raw;
  }

  FinAbGroup a_, m_;
  std::vector<QuadraticForm> forms_;
  CanonicalQuotient ambient_;
  ImageData sub_;
};

inline FinAbGroup quad_group(const FinAbGroup& a, const FinAbGroup& m) { return QuadGroup(a, m).group(); }

// Braided 3-cocycle (omega, c) with c(x,x) = q(x): a standard cocycle per cyclic factor plus the
// mixed bilinear part.
inline Cochain to_braided_3cocycle(const QuadraticForm& q) {
  const auto& a = q.group();
  const auto& m = q.coeff();
  const std::size_t r = a.rank();
  std::vector<Element> s(r), polar;
  for (std::size_t i = 0; i < r; ++i) s[i] = q(a.basis(i));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      polar.push_back(m.sub(m.sub(q(a.add(a.basis(i), a.basis(j))), s[i]), s[j]));
  Cochain c(a, m, Level::braided, 3);
  const int assoc = c.shape_index("3"), braid = c.shape_index("1|1");
  const Int n = a.order();
  std::vector<Element> els = a.elements();
  for (Int x = 1; x < n; ++x)
    for (Int y = 1; y < n; ++y) {
      const auto &ex = els[x], &ey = els[y];
      Element v = m.zero();
      std::size_t p = 0;
      for (std::size_t i = 0; i < r; ++i) {
        v = m.add(v, m.scale(ex[i] * ey[i], s[i]));
        for (std::size_t j = i + 1; j < r; ++j, ++p) v = m.add(v, m.scale(ex[i] * ey[j], polar[p]));
      }
      std::vector<Int> args{x, y};
      c.set(braid, args, v);
      for (Int z = 1; z < n; ++z) {
        const auto& ez = els[z];
        Element w = m.zero();
        for (std::size_t i = 0; i < r; ++i) {
          const Int d = a.factor(i);
          if (ey[i] + ez[i] >= d) w = m.add(w, m.scale(ex[i] * d, s[i]));
        }
        std::vector<Int> args3{x, y, z};
        c.set(assoc, args3, w);
      }
    }
  return c;
}

inline QuadraticForm from_braided_3cocycle(const Cochain& c) {
  require(c.level() == Level::braided && c.degree() == 3, "braided 3-cochain expected");
  std::vector<Element> v;
  for (Int x = 0; x < c.group().order(); ++x) v.push_back(c.value("1|1", {x, x}));
  return QuadraticForm(c.group(), c.coeff(), v);
}

struct Radical {
  FinAbGroup group;
  GroupHom inclusion;
  GroupHom tau;  // restriction of q, a homomorphism
};

inline Radical radical(const QuadraticForm& q) {
  const auto& a = q.group();
  const auto& m = q.coeff();
  std::vector<Element> rad;
  for (Int x = 0; x < a.order(); ++x) {
    bool ok = true;
    for (Int y = 0; y < a.order() && ok; ++y) ok = m.is_zero(q.polarization(x, y));
    if (ok) rad.push_back(a.element(x));
  }
  auto sub = subgroup_generated(a, rad);
  std::vector<Element> imgs;
  for (std::size_t i = 0; i < sub.image.rank(); ++i) imgs.push_back(q(sub.inclusion(sub.image.basis(i))));
  GroupHom tau = GroupHom::from_images(sub.image, m, imgs);
  for (const auto& x : sub.image.elements())
    if (tau(x) != q(sub.inclusion(x))) throw ConsistencyError("q is not additive on its radical");
  return {sub.image, sub.inclusion, tau};
}

}  // namespace emcoh
