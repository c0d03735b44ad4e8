#pragma once

#include <map>
#include <memory>
#include <optional>
#include <tuple>

#include "emcoh/cochain.hpp"
#include "emcoh/homology.hpp"

namespace emcoh {

class CohomologyGroup {
 public:
  CohomologyGroup(std::shared_ptr<const ClassMap> map, FinAbGroup a, Level level, int degree)
      : map_(std::move(map)), a_(std::move(a)), level_(level), degree_(degree) {}

  const FinAbGroup& invariants() const { return map_->invariants(); }
  Int order() const { return invariants().order(); }
  const FinAbGroup& group() const { return a_; }
  const FinAbGroup& coefficients() const { return map_->coefficients(); }
  Level level() const { return level_; }
  int degree() const { return degree_; }

  Cochain representative(std::size_t i) const { return from_flat(map_->representative(i), degree_); }
  std::vector<Cochain> representatives() const {
    std::vector<Cochain> out;
    for (std::size_t i = 0; i < invariants().rank(); ++i) out.push_back(representative(i));
    return out;
  }
  // A cocycle in the given class.
  Cochain cocycle_of(const Element& cls) const {
    Cochain c(a_, coefficients(), level_, degree_);
    for (std::size_t i = 0; i < cls.size(); ++i)
      if (cls[i]) c += representative(i).scaled(cls[i]);
    return c;
  }
  Element class_of(const Cochain& c) const {
    check(c, degree_);
    return map_->class_of(c.values());
  }
  std::optional<Cochain> primitive(const Cochain& c) const {
    check(c, degree_);
    if (!map_->is_cocycle(c.values())) return std::nullopt;
    if (degree_ == 0) {
      if (c.is_zero()) return Cochain();
      return std::nullopt;
    }
    auto p = map_->primitive(c.values());
    if (!p) return std::nullopt;
    return from_flat(*p, degree_ - 1);
  }
  bool is_coboundary(const Cochain& c) const { return primitive(c).has_value(); }
  const ClassMap& class_map() const { return *map_; }

 private:
  void check(const Cochain& c, int degree) const {
    require(c.group() == a_ && c.level() == level_ && c.degree() == degree && c.coeff() == coefficients(),
            "cochain does not belong to this cohomology group");
  }
  Cochain from_flat(const std::vector<Int>& x, int degree) const {
    Cochain c(a_, coefficients(), level_, degree);
    c.values() = x;
    return c;
  }

  std::shared_ptr<const ClassMap> map_;
  FinAbGroup a_;
  Level level_;
  int degree_;
};

namespace detail {

inline const SparseIntMatrix& cached_differential(const FinAbGroup& a, Level level, int degree) {
  static std::map<std::tuple<std::string, int, int>, SparseIntMatrix> cache;
  auto key = std::make_tuple(a.literal(), static_cast<int>(level), degree);
  auto it = cache.find(key);
  if (it == cache.end()) {
    SparseIntMatrix m = degree < 0 ? SparseIntMatrix(1, 0) : differential_matrix(a, level, degree);
    it = cache.emplace(key, std::move(m)).first;
  }
  return it->second;
}

inline std::shared_ptr<const FlatCohomology> flat_cohomology(const FinAbGroup& a, const FinAbGroup& m, Level level,
                                                             int degree) {
  static std::map<std::tuple<std::string, std::string, int, int>, std::shared_ptr<const FlatCohomology>> cache;
  auto key = std::make_tuple(a.literal(), m.literal(), static_cast<int>(level), degree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // guard on the largest dense matrix before building anything
  const Int dim = static_cast<Int>(basis_size(a, FinAbGroup::cyclic(2), level, degree));
  const Int dim_out = static_cast<Int>(basis_size(a, FinAbGroup::cyclic(2), level, degree + 1));
  if (dim * dim_out > dense_guard())
    throw SizeGuardError("cohomology of " + a.literal() + " in degree " + std::to_string(degree) +
                         " needs a " + std::to_string(dim_out) + "x" + std::to_string(dim) + " matrix");
  auto h = std::make_shared<const FlatCohomology>(cached_differential(a, level, degree - 1),
                                                  cached_differential(a, level, degree), m);
  cache.emplace(key, h);
  return h;
}

}  // namespace detail

inline CohomologyGroup cohomology(const FinAbGroup& a, const FinAbGroup& m, Level level, int degree) {
  require(degree >= 0 && degree <= kMaxDifferentialDegree,
          "cohomology is available in degrees 0..4 (no differential out of degree 5)");
  return CohomologyGroup(detail::flat_cohomology(a, m, level, degree), a, level, degree);
}

// Coefficients in k^x are modelled by Z/L, j <-> exp(2 pi i j / L). The stable group is the image
// of H(A; Z/N) in H(A; Z/(N e)) under multiplication by e.
struct StableModel {
  Int base = 0;    // N; 0 selects exp(A)^2
  Int factor = 0;  // e; 0 selects exp(A)^2
};

inline StableModel resolve(const FinAbGroup& a, StableModel m) {
  const Int e2 = a.exponent() * a.exponent();
  if (m.base == 0) m.base = std::max<Int>(2, e2);
  if (m.factor == 0) m.factor = std::max<Int>(2, e2);
  return m;
}

inline CohomologyGroup stable_cohomology(const FinAbGroup& a, Level level, int degree, StableModel model = {}) {
  model = resolve(a, model);
  auto build = [&](Int factor) {
    auto small = detail::flat_cohomology(a, FinAbGroup::cyclic(model.base), level, degree);
    auto big = detail::flat_cohomology(a, FinAbGroup::cyclic(model.base * factor), level, degree);
    return std::make_shared<const ImageClassMap>(small, big, factor);
  };
  auto map = build(model.factor);
  auto check = build(model.factor * a.exponent());
  if (!(map->invariants() == check->invariants()))
    throw ConsistencyError("unstable: image " + map->invariants().literal() + " changes to " +
                           check->invariants().literal() + " when the factor grows");
  return CohomologyGroup(map, a, level, degree);
}

// Same cochain with values multiplied into Z/new_modulus (the modulus must divide new_modulus).
inline Cochain embed(const Cochain& c, Int new_modulus) {
  require(c.coeff().rank() == 1, "embed: cyclic coefficients expected");
  const Int n = c.coeff().factor(0);
  require(new_modulus % n == 0, "embed: modulus must divide the new modulus");
  Cochain out(c.group(), FinAbGroup::cyclic(new_modulus), c.level(), c.degree());
  for (std::size_t b = 0; b < c.dim(); ++b) out.values()[b] = c.values()[b] * (new_modulus / n);
  return out;
}

// Whether a cocycle with values in Z/n (read in k^x) is a coboundary over k^x.
inline bool stably_trivial(const Cochain& c, Int factor = 0) {
  const auto& a = c.group();
  if (factor == 0) factor = std::max<Int>(2, a.exponent() * a.exponent());
  const Int n = c.coeff().factor(0);
  auto test = [&](Int f) {
    auto h = cohomology(a, FinAbGroup::cyclic(n * f), c.level(), c.degree());
    return a.trivial() || h.invariants().is_zero(h.class_of(embed(c, n * f)));
  };
  bool t1 = test(factor);
  bool t2 = test(factor * a.exponent());
  if (t1 != t2) throw ConsistencyError("unstable coboundary test");
  return t1;
}

// --- theta maps ---

inline Element cochain_value(const Cochain& c, std::string_view shape, std::initializer_list<Int> args) {
  return c.value(shape, args);
}

// x -> a(x,x|x) - a(x|x,x) - a(x,x,x,x) on the 2-torsion of A.
inline GroupHom theta_sym(const Cochain& c) {
  require(c.degree() == 4 && c.level() != Level::ordinary, "theta_sym: degree-4 cocycle expected");
  require(is_cocycle(c), "theta_sym: argument is not a cocycle");
  const auto& a = c.group();
  const auto& m = c.coeff();
  auto tor = subgroup_ops(a, 2);
  auto eval = [&](const Element& x) {
    Int i = a.index_of(x);
    Element v = c.value("2|1", {i, i, i});
    v = m.sub(v, c.value("1|2", {i, i, i}));
    return m.sub(v, c.value("4", {i, i, i, i}));
  };
  std::vector<Element> imgs;
  for (std::size_t g = 0; g < tor.torsion.rank(); ++g) imgs.push_back(eval(tor.torsion_inclusion(tor.torsion.basis(g))));
  GroupHom h = GroupHom::from_images(tor.torsion, m, imgs);
  for (const auto& x : tor.torsion.elements())
    if (!(h(x) == eval(tor.torsion_inclusion(x)))) throw ConsistencyError("theta_sym is not additive on this cocycle");
  return h;
}

struct ThetaSyl {
  GroupHom on_torsion;   // A_2 -> M
  GroupHom on_wedge;     // wedge^2 A -> M
};

inline ThetaSyl theta_syl(const Cochain& c) {
  require(c.degree() == 4 && (c.level() == Level::sylleptic || c.level() == Level::symmetric),
          "theta_syl: sylleptic 4-cocycle expected");
  const auto& a = c.group();
  const auto& m = c.coeff();
  ExteriorSquare w(a);
  auto form = [&](const Element& x, const Element& y) {
    Int i = a.index_of(x), j = a.index_of(y);
    return m.sub(c.value("1||1", {i, j}), c.value("1||1", {j, i}));
  };
  std::vector<Element> imgs;
  for (std::size_t g = 0; g < w.group().rank(); ++g) {
    Element e = w.group().basis(g);
    auto raw = w.coordinates().lift(e);
    Element v = m.zero();
    for (std::size_t r = 0; r < raw.size(); ++r) {
      auto [i, j] = w.pairs()[r];
      Int k = static_cast<Int>(floor_mod(raw[r], BigInt(gcd(a.factor(i), a.factor(j)))));
      v = m.add(v, m.scale(k, form(a.basis(i), a.basis(j))));
    }
    imgs.push_back(v);
  }
  GroupHom h = GroupHom::from_images(w.group(), m, imgs);
  for (const auto& x : a.elements())
    for (const auto& y : a.elements())
      if (!(h(w.wedge(x, y)) == form(x, y))) throw ConsistencyError("theta_syl: form does not factor through wedge^2");
  return {theta_sym(c), h};
}

struct ThetaBr {
  FinAbGroup ext;  // H^2(A, Hom(A, Z/L)) = Ext(A, Hom(A, Z/L))
  Element cls;
  Int modulus = 0;  // L
};

// Obstruction to a sylleptic structure on a braided 4-cocycle with values in Z/n read in k^x.
inline ThetaBr theta_br(const Cochain& c, Int factor = 0) {
  require(c.degree() == 4 && c.level() == Level::braided, "theta_br: braided 4-cocycle expected");
  require(c.coeff().rank() == 1, "theta_br: cyclic (k^x model) coefficients expected");
  require(is_cocycle(c), "theta_br: argument is not a cocycle");
  const auto& a = c.group();
  if (factor == 0) factor = std::max<Int>(2, a.exponent() * a.exponent());
  const Int L = c.coeff().factor(0) * factor;
  Cochain big = embed(c, L);
  const Int n = a.order();
  const auto add = a.addition_table();
  // h[x][y] = a(x||y) solving d h_x = -b_x
  std::vector<std::vector<Int>> h(n, std::vector<Int>(n, 0));
  const SparseIntMatrix& d1 = detail::cached_differential(a, Level::ordinary, 1);
  for (Int x = 1; x < n; ++x) {
    std::vector<Int> rhs((n - 1) * (n - 1));
    for (Int y = 1; y < n; ++y)
      for (Int z = 1; z < n; ++z) {
        Int b = big.value("1|2", {x, y, z})[0] + big.value("2|1", {y, z, x})[0];
        rhs[(y - 1) * (n - 1) + (z - 1)] = mod(-b, L);
      }
    auto sol = solve_mod(d1, rhs, L);
    if (!sol) throw ConsistencyError("theta_br: b_x is not a coboundary at modulus " + std::to_string(L));
    for (Int y = 1; y < n; ++y) h[x][y] = (*sol)[y - 1];
  }
  HomGroup hg(a, FinAbGroup::cyclic(L));
  Cochain g(a, hg.group(), Level::braided, 2);
  auto gval = [&](Int x, Int y, Int z) {
    Int yz = add[y * n + z];
    return mod(h[x][y] - h[y][x] + h[x][z] - h[z][x] - h[x][yz] + h[yz][x], L);
  };
  for (Int y = 1; y < n; ++y)
    for (Int z = 1; z < n; ++z) {
      std::vector<Int> m(a.rank());
      for (std::size_t i = 0; i < a.rank(); ++i) m[i] = gval(a.index_of(a.basis(i)), y, z);
      GroupHom hom(a, FinAbGroup::cyclic(L), m);
      for (Int x = 0; x < n; ++x)
        if (hom(a.element(x))[0] != gval(x, y, z)) throw ConsistencyError("theta_br: g is not additive in x");
      std::vector<Int> args{y, z};
      g.set(0, args, hg.from_hom(hom));
    }
  auto hcoh = cohomology(a, hg.group(), Level::braided, 2);
  return {hcoh.invariants(), hcoh.class_of(g), L};
}

}  // namespace emcoh
