#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "emcoh/core.hpp"
#include "emcoh/intmatrix.hpp"

namespace emcoh {

using Element = std::vector<Int>;

// Finite abelian group in invariant-factor form: Z/d_1 + ... + Z/d_r, d_i > 1, d_i | d_{i+1}.
class FinAbGroup {
 public:
  FinAbGroup() = default;

  // Any list of positive orders; non-chain input is normalized.
  static FinAbGroup from_orders(const std::vector<Int>& orders);
  static FinAbGroup cyclic(Int n) { return from_orders({n}); }
  static FinAbGroup parse(std::string_view literal);

  const std::vector<Int>& factors() const { return d_; }
  std::size_t rank() const { return d_.size(); }
  Int factor(std::size_t i) const { return d_[i]; }
  Int order() const {
    Int n = 1;
    for (Int d : d_) n *= d;
    return n;
  }
  Int exponent() const { return d_.empty() ? 1 : d_.back(); }
  bool trivial() const { return d_.empty(); }
  std::string literal() const {
    if (d_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < d_.size(); ++i) s += (i ? "," : "") + std::to_string(d_[i]);
    return s;
  }
  bool operator==(const FinAbGroup&) const = default;

  Element zero() const { return Element(d_.size(), 0); }
  Element reduce(Element x) const {
    for (std::size_t i = 0; i < d_.size(); ++i) x[i] = mod(x[i], d_[i]);
    return x;
  }
  Element add(const Element& x, const Element& y) const {
    Element r(d_.size());
    for (std::size_t i = 0; i < d_.size(); ++i) r[i] = mod(x[i] + y[i], d_[i]);
    return r;
  }
  Element sub(const Element& x, const Element& y) const {
    Element r(d_.size());
    for (std::size_t i = 0; i < d_.size(); ++i) r[i] = mod(x[i] - y[i], d_[i]);
    return r;
  }
  Element neg(const Element& x) const { return sub(zero(), x); }
  Element scale(Int n, const Element& x) const {
    Element r(d_.size());
    for (std::size_t i = 0; i < d_.size(); ++i) r[i] = mulmod(mod(n, d_[i]), x[i], d_[i]);
    return r;
  }
  bool is_zero(const Element& x) const {
    return std::all_of(x.begin(), x.end(), [](Int v) { return v == 0; });
  }
  Int element_order(const Element& x) const {
    Int o = 1;
    for (std::size_t i = 0; i < d_.size(); ++i) o = lcm(o, d_[i] / gcd(d_[i], x[i]));
    return o;
  }
  bool contains(const Element& x) const {
    if (x.size() != d_.size()) return false;
    for (std::size_t i = 0; i < d_.size(); ++i)
      if (x[i] < 0 || x[i] >= d_[i]) return false;
    return true;
  }
  Element basis(std::size_t i) const {
    Element e = zero();
    e[i] = 1;
    return e;
  }

  // Lexicographic enumeration, first coordinate most significant.
  Element element(Int index) const {
    Element x(d_.size());
    for (std::size_t i = d_.size(); i-- > 0;) {
      x[i] = index % d_[i];
      index /= d_[i];
    }
    return x;
  }
  Int index_of(const Element& x) const {
    Int idx = 0;
    for (std::size_t i = 0; i < d_.size(); ++i) idx = idx * d_[i] + mod(x[i], d_[i]);
    return idx;
  }
  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(order());
    for (Int i = 0; i < order(); ++i) out.push_back(element(i));
    return out;
  }

  // Addition table on element indices.
  std::vector<Int> addition_table() const {
    const Int n = order();
    std::vector<Int> t(n * n);
    auto els = elements();
    for (Int i = 0; i < n; ++i)
      for (Int j = 0; j < n; ++j) t[i * n + j] = index_of(add(els[i], els[j]));
    return t;
  }

 private:
  explicit FinAbGroup(std::vector<Int> d) : d_(std::move(d)) {}
  std::vector<Int> d_;
};

inline std::ostream& operator<<(std::ostream& os, const FinAbGroup& g) { return os << g.literal(); }

inline std::string element_string(const Element& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

// Quotient Z^g / (relations) in invariant-factor form with coordinate maps both ways.
struct CanonicalQuotient {
  FinAbGroup group;
  IntMatrix to;    // rank x g
  IntMatrix from;  // g x rank
  std::vector<Int> raw_orders;  // order of each raw generator's image (informational)

  Element to_canonical(const std::vector<Int>& raw) const {
    Element c(group.rank());
    for (std::size_t i = 0; i < group.rank(); ++i) {
      BigInt acc = 0;
      for (std::size_t j = 0; j < raw.size(); ++j)
        if (raw[j]) acc += to(i, j) * raw[j];
      c[i] = static_cast<Int>(floor_mod(acc, BigInt(group.factor(i))));
    }
    return c;
  }
  // Integer lift of a canonical element to raw coordinates (not reduced).
  std::vector<BigInt> lift(const Element& c) const {
    std::vector<BigInt> r(from.rows());
    for (std::size_t j = 0; j < from.rows(); ++j)
      for (std::size_t i = 0; i < group.rank(); ++i)
        if (c[i]) r[j] += from(j, i) * c[i];
    return r;
  }
};

// relations: g x m integer matrix whose columns span the relation lattice (must have full rank g).
inline CanonicalQuotient canonical_quotient(const IntMatrix& relations) {
  const std::size_t g = relations.rows();
  SmithForm s = smith_normal_form(relations);
  std::vector<std::size_t> keep;
  std::vector<Int> factors;
  for (std::size_t i = 0; i < g; ++i) {
    BigInt di = s.diag(i);
    if (i >= s.rank || di == 0) throw ValidationError("quotient is infinite");
    if (di != 1) {
      keep.push_back(i);
      factors.push_back(static_cast<Int>(di));
    }
  }
  CanonicalQuotient q;
  q.group = FinAbGroup::from_orders(factors);  // already a divisor chain
  q.to = IntMatrix(keep.size(), g);
  q.from = IntMatrix(g, keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t j = 0; j < g; ++j) {
      q.to(a, j) = floor_mod(s.u(keep[a], j), BigInt(factors[a]));
      q.from(j, a) = s.u_inv(j, keep[a]);
    }
  }
  return q;
}

inline FinAbGroup FinAbGroup::from_orders(const std::vector<Int>& orders) {
  std::vector<Int> d;
  for (Int o : orders) {
    if (o <= 0) throw ValidationError("cyclic order must be positive");
    if (o > 1) d.push_back(o);
  }
  bool chain = true;
  for (std::size_t i = 1; i < d.size(); ++i)
    if (d[i] % d[i - 1]) chain = false;
  if (chain) return FinAbGroup(d);
  // invariant factors via prime-power decomposition
  std::vector<std::pair<Int, std::vector<Int>>> by_prime;
  for (Int o : d)
    for (auto pp : factorize(o)) {
      auto it = std::find_if(by_prime.begin(), by_prime.end(),
                             [&](auto& e) { return e.first == pp.p; });
      if (it == by_prime.end()) {
        by_prime.emplace_back(pp.p, std::vector<Int>{});
        it = by_prime.end() - 1;
      }
      it->second.push_back(pp.q);
    }
  std::size_t len = 0;
  for (auto& [p, qs] : by_prime) {
    std::sort(qs.begin(), qs.end());
    len = std::max(len, qs.size());
  }
  std::vector<Int> out(len, 1);
  for (auto& [p, qs] : by_prime)
    for (std::size_t i = 0; i < qs.size(); ++i) out[len - qs.size() + i] *= qs[i];
  return FinAbGroup(out);
}

inline FinAbGroup FinAbGroup::parse(std::string_view literal) {
  std::vector<Int> orders;
  std::string s(literal);
  for (char& c : s)
    if (c == 'x' || c == '*' || c == ' ') c = ',';
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &pos);
    } catch (...) {
      throw ValidationError("bad group literal: " + std::string(literal));
    }
    if (pos != tok.size() || v <= 0) throw ValidationError("bad group literal: " + std::string(literal));
    orders.push_back(v);
  }
  if (orders.empty()) throw ValidationError("empty group literal");
  return from_orders(orders);
}

// Coordinates of a group presented by cyclic generators of given orders, canonicalized.
inline CanonicalQuotient canonicalize_orders(const std::vector<Int>& orders) {
  IntMatrix rel(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) rel(i, i) = orders[i];
  auto q = canonical_quotient(rel);
  q.raw_orders = orders;
  return q;
}

class GroupHom {
 public:
  GroupHom() = default;
  // matrix is codomain.rank() x domain.rank(), row-major.
  GroupHom(FinAbGroup dom, FinAbGroup cod, std::vector<Int> matrix)
      : dom_(std::move(dom)), cod_(std::move(cod)), m_(std::move(matrix)) {
    require(m_.size() == dom_.rank() * cod_.rank(), "hom matrix has wrong shape");
    for (std::size_t i = 0; i < cod_.rank(); ++i)
      for (std::size_t j = 0; j < dom_.rank(); ++j) at(i, j) = mod(at(i, j), cod_.factor(i));
    for (std::size_t j = 0; j < dom_.rank(); ++j) {
      Element img(cod_.rank());
      for (std::size_t i = 0; i < cod_.rank(); ++i) img[i] = at(i, j);
      require(cod_.is_zero(cod_.scale(dom_.factor(j), img)), "hom is not well defined");
    }
  }
  static GroupHom zero(FinAbGroup dom, FinAbGroup cod) {
    std::vector<Int> m(dom.rank() * cod.rank(), 0);
    return GroupHom(std::move(dom), std::move(cod), std::move(m));
  }
  static GroupHom from_images(FinAbGroup dom, FinAbGroup cod, const std::vector<Element>& images) {
    std::vector<Int> m(dom.rank() * cod.rank());
    for (std::size_t j = 0; j < dom.rank(); ++j)
      for (std::size_t i = 0; i < cod.rank(); ++i) m[i * dom.rank() + j] = images[j][i];
    return GroupHom(std::move(dom), std::move(cod), std::move(m));
  }

  const FinAbGroup& domain() const { return dom_; }
  const FinAbGroup& codomain() const { return cod_; }
  Int entry(std::size_t i, std::size_t j) const { return m_[i * dom_.rank() + j]; }
  const std::vector<Int>& matrix() const { return m_; }

  Element operator()(const Element& x) const {
    Element y(cod_.rank());
    for (std::size_t i = 0; i < cod_.rank(); ++i) {
      __int128 acc = 0;
      for (std::size_t j = 0; j < dom_.rank(); ++j) acc += static_cast<__int128>(entry(i, j)) * x[j];
      y[i] = mod(static_cast<Int>(acc % cod_.factor(i)), cod_.factor(i));
    }
    return y;
  }
  Element image_of_generator(std::size_t j) const {
    Element y(cod_.rank());
    for (std::size_t i = 0; i < cod_.rank(); ++i) y[i] = entry(i, j);
    return y;
  }
  GroupHom compose_after(const GroupHom& first) const {  // this o first
    std::vector<Element> imgs;
    for (std::size_t j = 0; j < first.domain().rank(); ++j)
      imgs.push_back((*this)(first.image_of_generator(j)));
    return from_images(first.domain(), cod_, imgs);
  }
  bool operator==(const GroupHom&) const = default;

 private:
  Int& at(std::size_t i, std::size_t j) { return m_[i * dom_.rank() + j]; }
  FinAbGroup dom_, cod_;
  std::vector<Int> m_;
};

namespace detail {

// Columns spanning the integer kernel of m.
inline IntMatrix integer_kernel(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  const std::size_t n = m.cols();
  IntMatrix k(n, n - s.rank);
  for (std::size_t c = s.rank; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) k(r, c - s.rank) = s.v(r, c);
  return k;
}

// [M | diag(e)] for a hom
inline IntMatrix hom_with_relations(const GroupHom& h) {
  const auto& D = h.domain();
  const auto& C = h.codomain();
  IntMatrix b(C.rank(), D.rank() + C.rank());
  for (std::size_t i = 0; i < C.rank(); ++i) {
    for (std::size_t j = 0; j < D.rank(); ++j) b(i, j) = h.entry(i, j);
    b(i, D.rank() + i) = C.factor(i);
  }
  return b;
}

// Lattice {x in Z^n : h(x) = 0}, as spanning columns (n x k).
inline IntMatrix kernel_lattice(const GroupHom& h) {
  IntMatrix k = integer_kernel(hom_with_relations(h));
  const std::size_t n = h.domain().rank();
  IntMatrix x(n, k.cols());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < k.cols(); ++c) x(r, c) = k(r, c);
  return x;
}

}  // namespace detail

struct KernelCokernel {
  FinAbGroup kernel;
  GroupHom kernel_inclusion;
  FinAbGroup cokernel;
  GroupHom cokernel_projection;
};

inline KernelCokernel kernel_cokernel(const GroupHom& h) {
  const auto& D = h.domain();
  const auto& C = h.codomain();
  KernelCokernel out;
  {
    auto q = canonical_quotient(detail::hom_with_relations(h));
    out.cokernel = q.group;
    std::vector<Element> imgs;
    for (std::size_t j = 0; j < C.rank(); ++j) {
      std::vector<Int> raw(C.rank(), 0);
      raw[j] = 1;
      imgs.push_back(q.to_canonical(raw));
    }
    out.cokernel_projection = GroupHom::from_images(C, q.group, imgs);
  }
  {
    // K = generators gk of the kernel lattice; ker = Z^k / {w : gk w in diag(d) Z^n}
    IntMatrix gk = detail::kernel_lattice(h);
    const std::size_t n = D.rank(), k = gk.cols();
    IntMatrix big(n, k + n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < k; ++c) big(r, c) = gk(r, c);
      big(r, k + r) = D.factor(r);
    }
    IntMatrix rel_full = detail::integer_kernel(big);
    IntMatrix rel(k, rel_full.cols());
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < rel_full.cols(); ++c) rel(r, c) = rel_full(r, c);
    auto q = canonical_quotient(rel);
    out.kernel = q.group;
    std::vector<Element> imgs;
    for (std::size_t i = 0; i < q.group.rank(); ++i) {
      Element e = q.group.zero();
      e[i] = 1;
      auto w = q.lift(e);
      Element x(n);
      for (std::size_t r = 0; r < n; ++r) {
        BigInt acc = 0;
        for (std::size_t c = 0; c < k; ++c) acc += gk(r, c) * w[c];
        x[r] = static_cast<Int>(floor_mod(acc, BigInt(D.factor(r))));
      }
      imgs.push_back(x);
    }
    out.kernel_inclusion = GroupHom::from_images(q.group, D, imgs);
  }
  return out;
}

struct ImageData {
  FinAbGroup image;
  GroupHom inclusion;   // image -> codomain
  GroupHom corestriction;  // domain -> image
};

inline ImageData image(const GroupHom& h) {
  IntMatrix gk = detail::kernel_lattice(h);
  auto q = canonical_quotient(gk);
  ImageData out;
  out.image = q.group;
  std::vector<Element> inc, cor;
  for (std::size_t i = 0; i < q.group.rank(); ++i) {
    Element e = q.group.zero();
    e[i] = 1;
    auto w = q.lift(e);
    Element x(h.domain().rank());
    for (std::size_t r = 0; r < x.size(); ++r)
      x[r] = static_cast<Int>(floor_mod(w[r], BigInt(h.domain().factor(r))));
    inc.push_back(h(x));
  }
  for (std::size_t j = 0; j < h.domain().rank(); ++j) {
    std::vector<Int> raw(h.domain().rank(), 0);
    raw[j] = 1;
    cor.push_back(q.to_canonical(raw));
  }
  out.inclusion = GroupHom::from_images(q.group, h.codomain(), inc);
  out.corestriction = GroupHom::from_images(h.domain(), q.group, cor);
  return out;
}

// Some x with h(x) = y.
inline std::optional<Element> preimage(const GroupHom& h, const Element& y) {
  SmithForm s = smith_normal_form(detail::hom_with_relations(h));
  std::vector<BigInt> b(y.begin(), y.end());
  auto sol = solve_integer(s, b);
  if (!sol) return std::nullopt;
  Element x(h.domain().rank());
  for (std::size_t r = 0; r < x.size(); ++r)
    x[r] = static_cast<Int>(floor_mod((*sol)[r], BigInt(h.domain().factor(r))));
  return x;
}

// Subgroup generated by elements, with its inclusion.
inline ImageData subgroup_generated(const FinAbGroup& a, const std::vector<Element>& gens) {
  std::vector<Int> orders;
  for (auto& g : gens) orders.push_back(a.element_order(g));
  auto free = canonicalize_orders(orders);
  std::vector<Element> imgs;
  for (std::size_t i = 0; i < free.group.rank(); ++i) {
    Element e = free.group.zero();
    e[i] = 1;
    auto w = free.lift(e);
    Element x = a.zero();
    for (std::size_t j = 0; j < gens.size(); ++j)
      x = a.add(x, a.scale(static_cast<Int>(floor_mod(w[j], BigInt(orders[j]))), gens[j]));
    imgs.push_back(x);
  }
  return image(GroupHom::from_images(free.group, a, imgs));
}

inline GroupHom scalar_hom(const FinAbGroup& a, Int n) {
  std::vector<Element> imgs;
  for (std::size_t j = 0; j < a.rank(); ++j) imgs.push_back(a.scale(n, a.basis(j)));
  return GroupHom::from_images(a, a, imgs);
}

struct SubgroupOps {
  FinAbGroup torsion;   // A_n
  GroupHom torsion_inclusion;
  FinAbGroup multiples;  // nA
  GroupHom multiples_inclusion;
  FinAbGroup quotient;   // A/nA
  GroupHom quotient_projection;
};

inline SubgroupOps subgroup_ops(const FinAbGroup& a, Int n) {
  require(n > 0, "subgroup_ops: n must be positive");
  GroupHom m = scalar_hom(a, n);
  auto kc = kernel_cokernel(m);
  auto im = image(m);
  return {kc.kernel, kc.kernel_inclusion, im.image, im.inclusion, kc.cokernel, kc.cokernel_projection};
}

// Hom(A, B) with explicit coordinates.
class HomGroup {
 public:
  HomGroup(FinAbGroup a, FinAbGroup b) : a_(std::move(a)), b_(std::move(b)) {
    std::vector<Int> orders;
    for (std::size_t i = 0; i < a_.rank(); ++i)
      for (std::size_t j = 0; j < b_.rank(); ++j) orders.push_back(gcd(a_.factor(i), b_.factor(j)));
    q_ = canonicalize_orders(orders);
  }
  const FinAbGroup& group() const { return q_.group; }
  const FinAbGroup& source() const { return a_; }
  const FinAbGroup& target() const { return b_; }

  GroupHom to_hom(const Element& c) const {
    auto raw = q_.lift(c);
    std::vector<Int> m(a_.rank() * b_.rank(), 0);
    for (std::size_t i = 0; i < a_.rank(); ++i)
      for (std::size_t j = 0; j < b_.rank(); ++j) {
        Int g = gcd(a_.factor(i), b_.factor(j));
        Int v = static_cast<Int>(floor_mod(raw[i * b_.rank() + j], BigInt(g)));
        m[j * a_.rank() + i] = v * (b_.factor(j) / g);
      }
    return GroupHom(a_, b_, m);
  }
  Element from_hom(const GroupHom& h) const {
    std::vector<Int> raw;
    for (std::size_t i = 0; i < a_.rank(); ++i)
      for (std::size_t j = 0; j < b_.rank(); ++j) {
        Int g = gcd(a_.factor(i), b_.factor(j));
        raw.push_back(h.entry(j, i) / (b_.factor(j) / g));
      }
    return q_.to_canonical(raw);
  }

 private:
  FinAbGroup a_, b_;
  CanonicalQuotient q_;
};

inline FinAbGroup hom_group(const FinAbGroup& a, const FinAbGroup& b) { return HomGroup(a, b).group(); }

inline FinAbGroup ext_group(const FinAbGroup& a, const FinAbGroup& b) {
  std::vector<Int> orders;
  for (Int x : a.factors())
    for (Int y : b.factors()) orders.push_back(gcd(x, y));
  return FinAbGroup::from_orders(orders);
}

// Exterior square with generators e_i ^ e_j (i < j).
class ExteriorSquare {
 public:
  explicit ExteriorSquare(FinAbGroup a) : a_(std::move(a)) {
    std::vector<Int> orders;
    for (std::size_t i = 0; i < a_.rank(); ++i)
      for (std::size_t j = i + 1; j < a_.rank(); ++j) {
        pairs_.push_back({i, j});
        orders.push_back(gcd(a_.factor(i), a_.factor(j)));
      }
    q_ = canonicalize_orders(orders);
  }
  const FinAbGroup& group() const { return q_.group; }
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
  const CanonicalQuotient& coordinates() const { return q_; }
  // Canonical coordinates of x ^ y.
  Element wedge(const Element& x, const Element& y) const {
    std::vector<Int> raw;
    for (auto [i, j] : pairs_) raw.push_back(x[i] * y[j] - x[j] * y[i]);
    return q_.to_canonical(raw);
  }

 private:
  FinAbGroup a_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  CanonicalQuotient q_;
};

inline FinAbGroup exterior_square(const FinAbGroup& a) { return ExteriorSquare(a).group(); }

inline FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
  std::vector<Int> o = a.factors();
  o.insert(o.end(), b.factors().begin(), b.factors().end());
  return FinAbGroup::from_orders(o);
}

// Invariants of a finite abelian group from the number of elements killed by each divisor.
inline FinAbGroup invariants_from_torsion_counts(Int order, const std::function<Int(Int)>& killed_by) {
  std::vector<Int> orders;
  for (auto pp : factorize(order)) {
    // count of cyclic factors Z/p^j with j >= i: log_p(|A[p^i]| / |A[p^{i-1}]|)
    std::vector<int> ge;
    Int prev = 1, pi = 1;
    for (int i = 1; i <= pp.k; ++i) {
      pi *= pp.p;
      Int cur = killed_by(pi);
      Int ratio = cur / prev;
      int c = 0;
      while (ratio > 1) {
        ratio /= pp.p;
        ++c;
      }
      ge.push_back(c);
      prev = cur;
    }
    for (int i = 0; i < static_cast<int>(ge.size()); ++i) {
      int next = i + 1 < static_cast<int>(ge.size()) ? ge[i + 1] : 0;
      for (int c = 0; c < ge[i] - next; ++c) orders.push_back(ipow(pp.p, i + 1));
    }
  }
  return FinAbGroup::from_orders(orders);
}

}  // namespace emcoh
