#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "emcoh/homology.hpp"

namespace emcoh {

// Finite group given by a multiplication table on indices 0..n-1.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<Int>>{{0}}) {}
  explicit FiniteGroup(std::vector<std::vector<Int>> table, std::vector<std::string> labels = {}) {
    auto d = std::make_shared<Data>();
    const Int n = static_cast<Int>(table.size());
    require(n >= 1, "group table is empty");
    for (const auto& row : table) {
      require(static_cast<Int>(row.size()) == n, "group table is not square");
      for (Int v : row) require(v >= 0 && v < n, "group table entry out of range");
    }
    d->table = std::move(table);
    d->identity = -1;
    for (Int e = 0; e < n && d->identity < 0; ++e) {
      bool ok = true;
      for (Int g = 0; g < n && ok; ++g) ok = d->table[e][g] == g && d->table[g][e] == g;
      if (ok) d->identity = e;
    }
    require(d->identity >= 0, "group table has no identity");
    d->inverse.assign(n, -1);
    for (Int g = 0; g < n; ++g)
      for (Int h = 0; h < n; ++h)
        if (d->table[g][h] == d->identity && d->table[h][g] == d->identity) d->inverse[g] = h;
    for (Int g = 0; g < n; ++g) require(d->inverse[g] >= 0, "group table: element without inverse");
    for (Int a = 0; a < n; ++a)
      for (Int b = 0; b < n; ++b)
        for (Int c = 0; c < n; ++c)
          require(d->table[d->table[a][b]][c] == d->table[a][d->table[b][c]], "group table is not associative");
    d->abelian = true;
    for (Int a = 0; a < n && d->abelian; ++a)
      for (Int b = 0; b < n && d->abelian; ++b) d->abelian = d->table[a][b] == d->table[b][a];
    for (Int g = 0; g < n; ++g)
      if (g != d->identity) d->nonidentity.push_back(g);
    if (labels.empty())
      for (Int g = 0; g < n; ++g) labels.push_back(std::to_string(g));
    require(static_cast<Int>(labels.size()) == n, "group labels do not match the order");
    d->labels = std::move(labels);
    for (const auto& row : d->table)
      for (Int v : row) d->key += std::to_string(v) + ",";
    d_ = std::move(d);
  }

  static FiniteGroup abelian(const FinAbGroup& a) {
    const Int n = a.order();
    auto add = a.addition_table();
    std::vector<std::vector<Int>> t(n, std::vector<Int>(n));
    std::vector<std::string> labels;
    for (Int x = 0; x < n; ++x) {
      for (Int y = 0; y < n; ++y) t[x][y] = add[x * n + y];
      labels.push_back(element_string(a.element(x)));
    }
    FiniteGroup g(t, labels);
    std::const_pointer_cast<Data>(g.d_)->structure = a;
    return g;
  }

  // Dihedral group of order 2m: r^i s^j at index i + m j.
  static FiniteGroup dihedral(Int m) {
    require(m >= 1, "dihedral: m must be positive");
    const Int n = 2 * m;
    std::vector<std::vector<Int>> t(n, std::vector<Int>(n));
    std::vector<std::string> labels;
    for (Int a = 0; a < n; ++a) {
      Int i = a % m, j = a / m;
      labels.push_back((i ? "r" + std::to_string(i) : std::string(j ? "" : "e")) + (j ? "s" : ""));
      for (Int b = 0; b < n; ++b) {
        Int k = b % m, l = b / m;
        Int ri = j ? mod(i - k, m) : mod(i + k, m);
        t[a][b] = ri + m * ((j + l) % 2);
      }
    }
    return FiniteGroup(t, labels);
  }

  // Quaternion group: (+-1) u for u in {1, i, j, k} at index u + 4 (sign < 0).
  static FiniteGroup quaternion() {
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<std::vector<Int>> t(8, std::vector<Int>(8));
    std::vector<std::string> labels;
    const char* names[4] = {"1", "i", "j", "k"};
    for (Int a = 0; a < 8; ++a) {
      labels.push_back(std::string(a >= 4 ? "-" : "") + names[a % 4]);
      for (Int b = 0; b < 8; ++b) {
        int s = (a / 4 + b / 4 + sign[a % 4][b % 4]) % 2;
        t[a][b] = unit[a % 4][b % 4] + 4 * s;
      }
    }
    return FiniteGroup(t, labels);
  }

  Int order() const { return static_cast<Int>(d_->table.size()); }
  Int identity() const { return d_->identity; }
  Int mul(Int a, Int b) const { return d_->table[a][b]; }
  Int inv(Int a) const { return d_->inverse[a]; }
  bool is_abelian() const { return d_->abelian; }
  const std::vector<Int>& nonidentity() const { return d_->nonidentity; }
  const std::string& label(Int g) const { return d_->labels[g]; }
  const std::optional<FinAbGroup>& structure() const { return d_->structure; }
  const std::string& key() const { return d_->key; }
  const std::vector<std::vector<Int>>& table() const { return d_->table; }
  bool operator==(const FiniteGroup& o) const { return d_ == o.d_ || d_->key == o.d_->key; }

  Int power(Int g, Int k) const {
    Int r = identity();
    for (Int i = 0; i < k; ++i) r = mul(r, g);
    return r;
  }
  Int element_order(Int g) const {
    Int k = 1, x = g;
    while (x != identity()) x = mul(x, g), ++k;
    return k;
  }
  Int exponent() const {
    Int e = 1;
    for (Int g = 0; g < order(); ++g) e = lcm(e, element_order(g));
    return e;
  }
  bool is_central(Int z) const {
    for (Int g = 0; g < order(); ++g)
      if (mul(g, z) != mul(z, g)) return false;
    return true;
  }
  std::vector<Int> center() const {
    std::vector<Int> c;
    for (Int g = 0; g < order(); ++g)
      if (is_central(g)) c.push_back(g);
    return c;
  }
  // Position of g among the non-identity elements.
  Int slot(Int g) const {
    for (std::size_t i = 0; i < nonidentity().size(); ++i)
      if (nonidentity()[i] == g) return static_cast<Int>(i);
    return -1;
  }

 private:
  struct Data {
    std::vector<std::vector<Int>> table;
    std::vector<Int> inverse, nonidentity;
    std::vector<std::string> labels;
    Int identity = 0;
    bool abelian = true;
    std::optional<FinAbGroup> structure;
    std::string key;
  };
  std::shared_ptr<const Data> d_;
};

struct Subgroup {
  FiniteGroup group;
  std::vector<Int> to_parent;  // index in the subgroup -> index in the parent
};

inline Subgroup subgroup(const FiniteGroup& g, std::vector<Int> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  require(!elems.empty(), "subgroup: empty set");
  for (Int e : elems) require(e >= 0 && e < g.order(), "subgroup: element out of range");
  auto pos = [&](Int x) -> Int {
    auto it = std::lower_bound(elems.begin(), elems.end(), x);
    return it != elems.end() && *it == x ? static_cast<Int>(it - elems.begin()) : -1;
  };
  const Int n = static_cast<Int>(elems.size());
  std::vector<std::vector<Int>> t(n, std::vector<Int>(n));
  std::vector<std::string> labels;
  for (Int a = 0; a < n; ++a) {
    labels.push_back(g.label(elems[a]));
    for (Int b = 0; b < n; ++b) {
      Int p = pos(g.mul(elems[a], elems[b]));
      if (p < 0) throw ValidationError("subgroup: set is not closed under multiplication");
      t[a][b] = p;
    }
  }
  return {FiniteGroup(t, labels), elems};
}

inline std::vector<Int> generated_subgroup(const FiniteGroup& g, const std::vector<Int>& gens) {
  std::vector<Int> els{g.identity()};
  std::vector<char> seen(g.order(), 0);
  seen[g.identity()] = 1;
  for (std::size_t i = 0; i < els.size(); ++i)
    for (Int s : gens) {
      Int y = g.mul(els[i], s);
      if (!seen[y]) seen[y] = 1, els.push_back(y);
    }
  std::sort(els.begin(), els.end());
  return els;
}

struct Quotient {
  FiniteGroup group;
  std::vector<Int> projection;  // parent index -> coset index
};

// Quotient by a normal subgroup; cosets ordered by their smallest element.
inline Quotient quotient(const FiniteGroup& g, const std::vector<Int>& normal) {
  for (Int x = 0; x < g.order(); ++x)
    for (Int h : normal) {
      Int c = g.mul(g.mul(x, h), g.inv(x));
      if (std::find(normal.begin(), normal.end(), c) == normal.end())
        throw ValidationError("quotient: subgroup is not normal");
    }
  std::vector<Int> proj(g.order(), -1), reps;
  for (Int x = 0; x < g.order(); ++x) {
    if (proj[x] >= 0) continue;
    Int c = static_cast<Int>(reps.size());
    reps.push_back(x);
    for (Int h : normal) proj[g.mul(x, h)] = c;
  }
  const Int n = static_cast<Int>(reps.size());
  std::vector<std::vector<Int>> t(n, std::vector<Int>(n));
  std::vector<std::string> labels;
  for (Int a = 0; a < n; ++a) {
    labels.push_back(g.label(reps[a]));
    for (Int b = 0; b < n; ++b) t[a][b] = proj[g.mul(reps[a], reps[b])];
  }
  return {FiniteGroup(t, labels), proj};
}

// Normalized group cochain with values in M (slot-major over the cyclic factors of M).
class GroupCochain {
 public:
  GroupCochain() = default;
  GroupCochain(FiniteGroup g, FinAbGroup m, int degree) : g_(std::move(g)), m_(std::move(m)), degree_(degree) {
    require(degree >= 0, "group cochain degree must be nonnegative");
    dim_ = 1;
    for (int i = 0; i < degree; ++i) dim_ *= static_cast<std::size_t>(g_.order() - 1);
    check_size(static_cast<Int>(dim_ * std::max<std::size_t>(1, m_.rank())), "group cochain space");
    v_.assign(dim_ * m_.rank(), 0);
  }

  const FiniteGroup& group() const { return g_; }
  const FinAbGroup& coeff() const { return m_; }
  int degree() const { return degree_; }
  std::size_t dim() const { return dim_; }
  std::vector<Int>& values() { return v_; }
  const std::vector<Int>& values() const { return v_; }

  // -1 if some argument is the identity.
  Int basis_index(const std::vector<Int>& args) const {
    require(static_cast<int>(args.size()) == degree_, "wrong number of arguments");
    Int idx = 0;
    for (Int a : args) {
      Int s = g_.slot(a);
      if (s < 0) return -1;
      idx = idx * (g_.order() - 1) + s;
    }
    return idx;
  }
  Element value(const std::vector<Int>& args) const {
    Int b = basis_index(args);
    Element e(m_.rank(), 0);
    if (b < 0) return e;
    for (std::size_t j = 0; j < m_.rank(); ++j) e[j] = v_[j * dim_ + b];
    return e;
  }
  void set(const std::vector<Int>& args, const Element& x) {
    Int b = basis_index(args);
    require(b >= 0, "normalized cochain: cannot set a value at the identity");
    auto y = m_.reduce(x);
    for (std::size_t j = 0; j < m_.rank(); ++j) v_[j * dim_ + b] = y[j];
  }
  bool same_space(const GroupCochain& o) const { return g_ == o.g_ && m_ == o.m_ && degree_ == o.degree_; }
  GroupCochain& operator+=(const GroupCochain& o) {
    require(same_space(o), "cochains live in different spaces");
    for (std::size_t j = 0; j < m_.rank(); ++j)
      for (std::size_t b = 0; b < dim_; ++b) v_[j * dim_ + b] = mod(v_[j * dim_ + b] + o.v_[j * dim_ + b], m_.factor(j));
    return *this;
  }
  GroupCochain operator+(const GroupCochain& o) const { return GroupCochain(*this) += o; }
  GroupCochain scaled(Int k) const {
    GroupCochain r(*this);
    for (std::size_t j = 0; j < m_.rank(); ++j)
      for (std::size_t b = 0; b < dim_; ++b) r.v_[j * dim_ + b] = mulmod(mod(k, m_.factor(j)), v_[j * dim_ + b], m_.factor(j));
    return r;
  }
  GroupCochain operator-(const GroupCochain& o) const { return *this + o.scaled(-1); }
  bool operator==(const GroupCochain& o) const { return same_space(o) && v_ == o.v_; }
  bool is_zero() const {
    for (Int x : v_)
      if (x) return false;
    return true;
  }

 private:
  FiniteGroup g_;
  FinAbGroup m_;
  int degree_ = 0;
  std::size_t dim_ = 1;
  std::vector<Int> v_;
};

// Normalized bar differential C^k -> C^{k+1}, trivial action.
inline SparseIntMatrix bar_differential(const FiniteGroup& g, int k) {
  if (k < 0) return SparseIntMatrix(1, 0);
  const Int m = g.order() - 1;
  Int rows = 1, cols = 1;
  for (int i = 0; i < k; ++i) cols *= m;
  rows = cols * m;
  check_size(rows, "bar complex");
  SparseIntMatrix d(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  const auto& nid = g.nonidentity();
  std::vector<Int> args(k + 1), sub(k);
  auto index_of = [&](const std::vector<Int>& a) -> Int {
    Int idx = 0;
    for (Int x : a) {
      Int s = g.slot(x);
      if (s < 0) return -1;
      idx = idx * m + s;
    }
    return idx;
  };
  for (Int r = 0; r < rows; ++r) {
    Int rem = r;
    for (int i = k; i >= 0; --i) args[i] = nid[rem % m], rem /= m;
    for (int i = 0; i <= k + 1; ++i) {
      // face i: drop first (i = 0), multiply i-1,i (0 < i <= k), drop last (i = k+1)
      if (i == 0) {
        for (int j = 0; j < k; ++j) sub[j] = args[j + 1];
      } else if (i == k + 1) {
        for (int j = 0; j < k; ++j) sub[j] = args[j];
      } else {
        int p = 0;
        for (int j = 0; j <= k; ++j) {
          if (j == i) continue;
          sub[p++] = j == i - 1 ? g.mul(args[i - 1], args[i]) : args[j];
        }
      }
      Int c = index_of(sub);
      if (c >= 0) d.add(r, c, i % 2 ? -1 : 1);
    }
  }
  return d;
}

inline GroupCochain group_differential(const GroupCochain& c) {
  GroupCochain out(c.group(), c.coeff(), c.degree() + 1);
  auto d = bar_differential(c.group(), c.degree());
  for (std::size_t j = 0; j < c.coeff().rank(); ++j) {
    std::vector<Int> s(c.values().begin() + j * c.dim(), c.values().begin() + (j + 1) * c.dim());
    auto y = d.apply_mod(s, c.coeff().factor(j));
    std::copy(y.begin(), y.end(), out.values().begin() + j * out.dim());
  }
  return out;
}

inline bool is_group_cocycle(const GroupCochain& c) { return group_differential(c).is_zero(); }

class GroupCohomology {
 public:
  GroupCohomology(std::shared_ptr<const ClassMap> map, FiniteGroup g, int degree)
      : map_(std::move(map)), g_(std::move(g)), degree_(degree) {}

  const FinAbGroup& invariants() const { return map_->invariants(); }
  Int order() const { return invariants().order(); }
  const FiniteGroup& group() const { return g_; }
  const FinAbGroup& coefficients() const { return map_->coefficients(); }
  int degree() const { return degree_; }

  GroupCochain representative(std::size_t i) const { return from_flat(map_->representative(i), degree_); }
  GroupCochain cocycle_of(const Element& cls) const {
    GroupCochain c(g_, coefficients(), degree_);
    for (std::size_t i = 0; i < cls.size(); ++i)
      if (cls[i]) c += representative(i).scaled(cls[i]);
    return c;
  }
  Element class_of(const GroupCochain& c) const {
    check(c, degree_);
    return map_->class_of(c.values());
  }
  std::optional<GroupCochain> primitive(const GroupCochain& c) const {
    check(c, degree_);
    if (!map_->is_cocycle(c.values())) return std::nullopt;
    if (degree_ == 0) return c.is_zero() ? std::optional<GroupCochain>(GroupCochain()) : std::nullopt;
    auto p = map_->primitive(c.values());
    if (!p) return std::nullopt;
    return from_flat(*p, degree_ - 1);
  }
  bool is_coboundary(const GroupCochain& c) const { return primitive(c).has_value(); }

 private:
  void check(const GroupCochain& c, int degree) const {
    require(c.group() == g_ && c.degree() == degree && c.coeff() == coefficients(),
            "cochain does not belong to this cohomology group");
  }
  GroupCochain from_flat(const std::vector<Int>& x, int degree) const {
    GroupCochain c(g_, coefficients(), degree);
    c.values() = x;
    return c;
  }

  std::shared_ptr<const ClassMap> map_;
  FiniteGroup g_;
  int degree_;
};

namespace detail {

inline void group_size_guard(const FiniteGroup& g, int degree) {
  require(degree >= 0 && degree <= 3, "group cohomology: degree must be in 0..3");
  if (degree == 3 && g.order() > 16) throw SizeGuardError("group cohomology in degree 3 needs |G| <= 16");
  if (g.order() > 64) throw SizeGuardError("group cohomology needs |G| <= 64");
  Int dim = 1, out = 1;
  for (int i = 0; i < degree; ++i) dim *= g.order() - 1;
  out = dim * (g.order() - 1);
  if (dim * out > dense_guard()) throw SizeGuardError("group cohomology: differential too large for the dense guard");
}

inline std::shared_ptr<const FlatCohomology> flat_group_cohomology(const FiniteGroup& g, const FinAbGroup& m,
                                                                   int degree) {
  static std::map<std::tuple<std::string, std::string, int>, std::shared_ptr<const FlatCohomology>> cache;
  auto key = std::make_tuple(g.key(), m.literal(), degree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  group_size_guard(g, degree);
  auto h = std::make_shared<const FlatCohomology>(bar_differential(g, degree - 1), bar_differential(g, degree), m);
  cache.emplace(key, h);
  return h;
}

}  // namespace detail

inline GroupCohomology group_cohomology(const FiniteGroup& g, const FinAbGroup& m, int degree) {
  return GroupCohomology(detail::flat_group_cohomology(g, m, degree), g, degree);
}

// Torsion of k^x modelled as the image of H(G, Z/N) -> H(G, Z/(N e)); N = e = |G| by default.
inline GroupCohomology stable_group_cohomology(const FiniteGroup& g, int degree, Int base = 0, Int factor = 0) {
  if (base == 0) base = std::max<Int>(2, g.order());
  if (factor == 0) factor = std::max<Int>(2, g.order());
  auto build = [&](Int f) {
    auto small = detail::flat_group_cohomology(g, FinAbGroup::cyclic(base), degree);
    auto big = detail::flat_group_cohomology(g, FinAbGroup::cyclic(base * f), degree);
    return std::make_shared<const ImageClassMap>(small, big, f);
  };
  auto map = build(factor);
  auto check = build(factor * std::max<Int>(2, g.exponent()));
  if (!(map->invariants() == check->invariants()))
    throw ConsistencyError("unstable: image " + map->invariants().literal() + " changes to " +
                           check->invariants().literal() + " when the factor grows");
  return GroupCohomology(map, g, degree);
}

inline GroupCochain restriction(const GroupCochain& c, const Subgroup& h) {
  GroupCochain out(h.group, c.coeff(), c.degree());
  const Int n = h.group.order() - 1;
  std::vector<Int> args(c.degree()), parent(c.degree());
  for (std::size_t b = 0; b < out.dim(); ++b) {
    Int rem = static_cast<Int>(b);
    for (int i = c.degree() - 1; i >= 0; --i) {
      args[i] = h.group.nonidentity()[rem % n];
      rem /= n;
      parent[i] = h.to_parent[args[i]];
    }
    out.set(args, c.value(parent));
  }
  return out;
}

// A character chi: G -> Z/2 with chi(t) = 1, if one exists (then G = ker(chi) x <t>).
inline std::optional<std::vector<Int>> split_central_involution(const FiniteGroup& g, Int t) {
  require(t >= 0 && t < g.order(), "t out of range");
  require(g.is_central(t), "t is not central");
  require(g.mul(t, t) == g.identity(), "t is not an involution");
  if (t == g.identity()) return std::nullopt;
  auto h = group_cohomology(g, FinAbGroup::cyclic(2), 1);
  for (const auto& cls : h.invariants().elements()) {
    auto c = h.cocycle_of(cls);
    std::vector<Int> chi(g.order());
    for (Int x = 0; x < g.order(); ++x) chi[x] = x == g.identity() ? 0 : c.value({x})[0];
    if (chi[t] == 1) return chi;
  }
  return std::nullopt;
}

}  // namespace emcoh
