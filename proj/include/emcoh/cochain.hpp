#pragma once

#include <array>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emcoh/abelian.hpp"
#include "emcoh/modsnf.hpp"

namespace emcoh {

enum class Level { ordinary, braided, sylleptic, symmetric };

inline Level parse_level(std::string_view s) {
  if (s == "ord" || s == "ordinary" || s == "ab") return Level::ordinary;
  if (s == "br" || s == "braided") return Level::braided;
  if (s == "syl" || s == "sylleptic") return Level::sylleptic;
  if (s == "sym" || s == "symmetric") return Level::symmetric;
  throw ValidationError("unknown level: " + std::string(s));
}

inline std::string level_name(Level l) {
  switch (l) {
    case Level::ordinary: return "ord";
    case Level::braided: return "br";
    case Level::sylleptic: return "syl";
    case Level::symmetric: return "sym";
  }
  return "?";
}

struct Shape {
  std::string name;
  int arity = 0;
};

constexpr int kMaxCochainDegree = 5;
constexpr int kMaxDifferentialDegree = 4;

namespace detail {

inline int shape_arity(std::string_view name) {
  if (name == "0") return 0;
  int a = 0;
  for (char c : name)
    if (c >= '1' && c <= '9') a += c - '0';
  return a;
}

inline std::vector<std::string> shape_names(Level level, int n) {
  std::vector<std::string> s{std::to_string(n)};
  if (level == Level::ordinary) return s;
  if (n == 3) s.insert(s.end(), {"1|1"});
  if (n == 4) s.insert(s.end(), {"2|1", "1|2"});
  if (n == 5) s.insert(s.end(), {"3|1", "2|2", "1|3", "1|1|1"});
  if (level == Level::braided) return s;
  if (n == 4) s.insert(s.end(), {"1||1"});
  if (n == 5) s.insert(s.end(), {"2||1", "1||2"});
  if (level == Level::sylleptic) return s;
  if (n == 5) s.insert(s.end(), {"1|||1"});
  return s;
}

}  // namespace detail

inline std::vector<Shape> shapes(Level level, int degree) {
  require(degree >= 0 && degree <= kMaxCochainDegree, "cochain degree out of range");
  std::vector<Shape> out;
  for (auto& n : detail::shape_names(level, degree)) out.push_back({n, detail::shape_arity(n)});
  return out;
}

// Normalized cochain: values on tuples of non-identity elements, one table per shape.
// Storage is slot-major: values[j * dim + b] is coordinate j of the value at basis index b.
class Cochain {
 public:
  Cochain() = default;
  Cochain(FinAbGroup a, FinAbGroup m, Level level, int degree)
      : a_(std::move(a)), m_(std::move(m)), level_(level), degree_(degree) {
    shapes_ = shapes(level_, degree_);
    const Int n1 = a_.order() - 1;
    std::size_t off = 0;
    for (auto& s : shapes_) {
      offsets_.push_back(off);
      Int cnt = 1;
      for (int i = 0; i < s.arity; ++i) cnt *= n1;
      off += static_cast<std::size_t>(cnt);
    }
    dim_ = off;
    check_size(static_cast<Int>(dim_ * std::max<std::size_t>(1, m_.rank())), "cochain space");
    v_.assign(dim_ * m_.rank(), 0);
  }

  const FinAbGroup& group() const { return a_; }
  const FinAbGroup& coeff() const { return m_; }
  Level level() const { return level_; }
  int degree() const { return degree_; }
  const std::vector<Shape>& shape_list() const { return shapes_; }
  std::size_t dim() const { return dim_; }
  std::size_t shape_offset(std::size_t s) const { return offsets_[s]; }
  std::size_t shape_size(std::size_t s) const {
    return (s + 1 < offsets_.size() ? offsets_[s + 1] : dim_) - offsets_[s];
  }
  int shape_index(std::string_view name) const {
    for (std::size_t i = 0; i < shapes_.size(); ++i)
      if (shapes_[i].name == name) return static_cast<int>(i);
    throw ValidationError("shape " + std::string(name) + " not in " + level_name(level_) +
                          " degree " + std::to_string(degree_));
  }

  // Basis index of a tuple of element indices; -1 if some argument is the identity.
  long basis_index(std::size_t shape, std::span<const Int> args) const {
    const Int n1 = a_.order() - 1;
    std::size_t idx = 0;
    for (Int e : args) {
      if (e == 0) return -1;
      idx = idx * n1 + static_cast<std::size_t>(e - 1);
    }
    return static_cast<long>(offsets_[shape] + idx);
  }
  // Inverse of basis_index: shape and element indices.
  std::pair<std::size_t, std::vector<Int>> basis_tuple(std::size_t b) const {
    std::size_t s = 0;
    while (s + 1 < offsets_.size() && offsets_[s + 1] <= b) ++s;
    std::size_t idx = b - offsets_[s];
    const Int n1 = a_.order() - 1;
    std::vector<Int> args(shapes_[s].arity);
    for (int i = shapes_[s].arity; i-- > 0;) {
      args[i] = static_cast<Int>(idx % n1) + 1;
      idx /= n1;
    }
    return {s, args};
  }

  Element value(std::size_t shape, std::span<const Int> args) const {
    Element x(m_.rank(), 0);
    long b = basis_index(shape, args);
    if (b < 0) return x;
    for (std::size_t j = 0; j < m_.rank(); ++j) x[j] = v_[j * dim_ + b];
    return x;
  }
  Element value(std::string_view shape, std::initializer_list<Int> args) const {
    std::vector<Int> a(args);
    return value(shape_index(shape), a);
  }
  void set(std::size_t shape, std::span<const Int> args, const Element& x) {
    long b = basis_index(shape, args);
    require(b >= 0, "normalized cochain: identity argument");
    for (std::size_t j = 0; j < m_.rank(); ++j) v_[j * dim_ + b] = mod(x[j], m_.factor(j));
  }

  std::vector<Int>& values() { return v_; }
  const std::vector<Int>& values() const { return v_; }
  // Values of coefficient slot j as a flat vector over the basis.
  std::vector<Int> slot(std::size_t j) const {
    return std::vector<Int>(v_.begin() + j * dim_, v_.begin() + (j + 1) * dim_);
  }
  void set_slot(std::size_t j, const std::vector<Int>& x) {
    for (std::size_t b = 0; b < dim_; ++b) v_[j * dim_ + b] = mod(x[b], m_.factor(j));
  }

  bool same_space(const Cochain& o) const {
    return a_ == o.a_ && m_ == o.m_ && level_ == o.level_ && degree_ == o.degree_;
  }
  bool is_zero() const {
    for (Int x : v_)
      if (x) return false;
    return true;
  }
  Cochain& operator+=(const Cochain& o) {
    require(same_space(o), "cochain spaces differ");
    for (std::size_t j = 0; j < m_.rank(); ++j)
      for (std::size_t b = 0; b < dim_; ++b)
        v_[j * dim_ + b] = mod(v_[j * dim_ + b] + o.v_[j * dim_ + b], m_.factor(j));
    return *this;
  }
  Cochain operator+(const Cochain& o) const {
    Cochain r = *this;
    r += o;
    return r;
  }
  Cochain scaled(Int k) const {
    Cochain r = *this;
    for (std::size_t j = 0; j < m_.rank(); ++j)
      for (std::size_t b = 0; b < dim_; ++b) r.v_[j * dim_ + b] = mulmod(mod(k, m_.factor(j)), v_[j * dim_ + b], m_.factor(j));
    return r;
  }
  Cochain operator-(const Cochain& o) const { return *this + o.scaled(-1); }
  bool operator==(const Cochain& o) const { return same_space(o) && v_ == o.v_; }

 private:
  FinAbGroup a_, m_;
  Level level_ = Level::braided;
  int degree_ = 0;
  std::vector<Shape> shapes_;
  std::vector<std::size_t> offsets_;
  std::size_t dim_ = 0;
  std::vector<Int> v_;
};

// Each output component of d is a signed sum of input values; each input argument
// is the sum of a subset (bitmask) of the output arguments.
struct DiffTerm {
  int sign = 1;
  int in_shape = 0;
  int nargs = 0;
  std::array<unsigned, 5> args{};
};

struct DiffComponent {
  int out_shape = 0;
  std::vector<DiffTerm> terms;
};

namespace detail {

constexpr unsigned X = 1, Y = 2, Z = 4, W = 8, U = 16;

class TableBuilder {
 public:
  TableBuilder(Level level, int n) : in_(shape_names(level, n)), out_(shape_names(level, n + 1)) {}

  void comp(std::string_view out, std::initializer_list<std::tuple<int, std::string_view, std::vector<unsigned>>> terms) {
    DiffComponent c;
    c.out_shape = index(out_, out);
    for (auto& [sign, shape, args] : terms) add_term(c, sign, shape, args);
    table.push_back(std::move(c));
  }
  void ordinary(int n) {
    // d(a)(x1..x_{n+1}) = a(x2..) + sum (-1)^i a(.., x_i x_{i+1}, ..) + (-1)^{n+1} a(x1..xn)
    DiffComponent c;
    c.out_shape = index(out_, std::to_string(n + 1));
    const std::string in = std::to_string(n);
    std::vector<unsigned> args;
    for (int k = 1; k <= n; ++k) args.push_back(1u << k);
    add_term(c, 1, in, args);
    for (int i = 0; i < n; ++i) {
      args.clear();
      for (int k = 0; k <= n; ++k) {
        if (k == i + 1) continue;
        args.push_back(k == i ? ((1u << i) | (1u << (i + 1))) : (1u << k));
      }
      add_term(c, (i + 1) % 2 ? -1 : 1, in, args);
    }
    args.clear();
    for (int k = 0; k < n; ++k) args.push_back(1u << k);
    add_term(c, (n + 1) % 2 ? -1 : 1, in, args);
    table.push_back(std::move(c));
  }

  std::vector<DiffComponent> table;

 private:
  static int index(const std::vector<std::string>& names, std::string_view s) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == s) return static_cast<int>(i);
    throw std::logic_error("bad shape in differential table: " + std::string(s));
  }
  void add_term(DiffComponent& c, int sign, std::string_view shape, const std::vector<unsigned>& args) {
    DiffTerm t;
    t.sign = sign;
    t.in_shape = index(in_, shape);
    t.nargs = static_cast<int>(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) t.args[i] = args[i];
    if (t.nargs != shape_arity(in_[t.in_shape])) throw std::logic_error("arity mismatch");
    c.terms.push_back(t);
  }
  std::vector<std::string> in_, out_;
};

inline std::vector<DiffComponent> build_table(Level level, int n) {
  TableBuilder b(level, n);
  b.ordinary(n);
  if (level == Level::ordinary) return b.table;
  if (n == 2) {
    b.comp("1|1", {{+1, "2", {Y, X}}, {-1, "2", {X, Y}}});
  }
  if (n == 3) {
    b.comp("2|1", {{+1, "1|1", {Y, Z}}, {-1, "1|1", {X | Y, Z}}, {+1, "1|1", {X, Z}},
                   {+1, "3", {X, Y, Z}}, {-1, "3", {X, Z, Y}}, {+1, "3", {Z, X, Y}}});
    b.comp("1|2", {{+1, "1|1", {X, Y}}, {-1, "1|1", {X, Y | Z}}, {+1, "1|1", {X, Z}},
                   {-1, "3", {X, Y, Z}}, {+1, "3", {Y, X, Z}}, {-1, "3", {Y, Z, X}}});
    if (level != Level::braided) b.comp("1||1", {{-1, "1|1", {X, Y}}, {-1, "1|1", {Y, X}}});
  }
  if (n == 4) {
    b.comp("1|3", {{+1, "1|2", {X, Z, W}}, {-1, "1|2", {X, Y | Z, W}}, {+1, "1|2", {X, Y, Z | W}},
                   {-1, "1|2", {X, Y, Z}}, {-1, "4", {X, Y, Z, W}}, {+1, "4", {Y, X, Z, W}},
                   {-1, "4", {Y, Z, X, W}}, {+1, "4", {Y, Z, W, X}}});
    b.comp("3|1", {{+1, "2|1", {Y, Z, W}}, {-1, "2|1", {X | Y, Z, W}}, {+1, "2|1", {X, Y | Z, W}},
                   {-1, "2|1", {X, Y, W}}, {-1, "4", {X, Y, Z, W}}, {+1, "4", {X, Y, W, Z}},
                   {-1, "4", {X, W, Y, Z}}, {+1, "4", {W, X, Y, Z}}});
    b.comp("2|2", {{+1, "1|2", {Y, Z, W}}, {-1, "1|2", {X | Y, Z, W}}, {+1, "1|2", {X, Z, W}},
                   {-1, "2|1", {X, Y, W}}, {+1, "2|1", {X, Y, Z | W}}, {-1, "2|1", {X, Y, Z}},
                   {+1, "4", {X, Y, Z, W}}, {-1, "4", {X, Z, Y, W}}, {+1, "4", {Z, X, Y, W}},
                   {+1, "4", {X, Z, W, Y}}, {-1, "4", {Z, X, W, Y}}, {+1, "4", {Z, W, X, Y}}});
    b.comp("1|1|1", {{-1, "2|1", {X, Y, Z}}, {+1, "2|1", {Y, X, Z}},
                     {-1, "1|2", {X, Y, Z}}, {+1, "1|2", {X, Z, Y}}});
    if (level != Level::braided) {
      b.comp("1||2", {{+1, "1|2", {X, Y, Z}}, {+1, "2|1", {Y, Z, X}}, {+1, "1||1", {X, Y}},
                      {+1, "1||1", {X, Z}}, {-1, "1||1", {X, Y | Z}}});
      b.comp("2||1", {{+1, "2|1", {X, Y, Z}}, {+1, "1|2", {Z, X, Y}}, {+1, "1||1", {X, Z}},
                      {+1, "1||1", {Y, Z}}, {-1, "1||1", {X | Y, Z}}});
    }
    if (level == Level::symmetric) b.comp("1|||1", {{+1, "1||1", {X, Y}}, {-1, "1||1", {Y, X}}});
  }
  return b.table;
}

}  // namespace detail

inline const std::vector<DiffComponent>& differential_table(Level level, int degree) {
  require(degree >= 0 && degree <= kMaxDifferentialDegree,
          "no differential out of degree " + std::to_string(degree));
  static std::map<std::pair<int, int>, std::vector<DiffComponent>> cache;
  auto key = std::make_pair(static_cast<int>(level), degree);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, detail::build_table(level, degree)).first;
  return it->second;
}

namespace detail {

// Calls f(row basis index, column basis index, sign) for every nonvanishing term of d.
template <class F>
void for_each_term(const FinAbGroup& a, Level level, int degree, F&& f) {
  const auto& table = differential_table(level, degree);
  Cochain in_proto(a, FinAbGroup(), level, degree);
  Cochain out_proto(a, FinAbGroup(), level, degree + 1);
  const Int n = a.order();
  const Int n1 = n - 1;
  const auto add = a.addition_table();
  std::vector<Int> out_args, in_args;
  for (const auto& comp : table) {
    const int arity = out_proto.shape_list()[comp.out_shape].arity;
    Int count = 1;
    for (int i = 0; i < arity; ++i) count *= n1;
    out_args.assign(arity, 1);
    for (Int idx = 0; idx < count; ++idx) {
      Int r = idx;
      for (int i = arity; i-- > 0;) {
        out_args[i] = r % n1 + 1;
        r /= n1;
      }
      const std::size_t row = out_proto.shape_offset(comp.out_shape) + static_cast<std::size_t>(idx);
      for (const auto& t : comp.terms) {
        in_args.assign(t.nargs, 0);
        bool vanish = false;
        for (int k = 0; k < t.nargs; ++k) {
          Int s = 0;
          for (int v = 0; v < arity; ++v)
            if (t.args[k] & (1u << v)) s = add[s * n + out_args[v]];
          if (s == 0) {
            vanish = true;
            break;
          }
          in_args[k] = s;
        }
        if (vanish) continue;
        long col = in_proto.basis_index(t.in_shape, in_args);
        f(row, static_cast<std::size_t>(col), t.sign);
      }
    }
  }
}

}  // namespace detail

inline Cochain differential(const Cochain& c) {
  Cochain out(c.group(), c.coeff(), c.level(), c.degree() + 1);
  const std::size_t din = c.dim(), dout = out.dim();
  auto& ov = out.values();
  const auto& iv = c.values();
  const auto& m = c.coeff();
  detail::for_each_term(c.group(), c.level(), c.degree(), [&](std::size_t row, std::size_t col, int sign) {
    for (std::size_t j = 0; j < m.rank(); ++j) ov[j * dout + row] += sign * iv[j * din + col];
  });
  for (std::size_t j = 0; j < m.rank(); ++j)
    for (std::size_t b = 0; b < dout; ++b) ov[j * dout + b] = mod(ov[j * dout + b], m.factor(j));
  return out;
}

// Integer matrix of d: C^degree -> C^{degree+1} on one coefficient slot.
inline SparseIntMatrix differential_matrix(const FinAbGroup& a, Level level, int degree) {
  Cochain in(a, FinAbGroup(), level, degree);
  Cochain out(a, FinAbGroup(), level, degree + 1);
  SparseIntMatrix m(out.dim(), in.dim());
  detail::for_each_term(a, level, degree, [&](std::size_t row, std::size_t col, int sign) { m.add(row, col, sign); });
  return m;
}

inline bool is_cocycle(const Cochain& c) {
  if (c.degree() > kMaxDifferentialDegree)
    throw ValidationError("no differential out of degree " + std::to_string(c.degree()));
  return differential(c).is_zero();
}

inline std::size_t basis_size(const FinAbGroup& a, const FinAbGroup& m, Level level, int degree) {
  return Cochain(a, FinAbGroup(), level, degree).dim() * m.rank();
}

inline Cochain basis_cochain(const FinAbGroup& a, const FinAbGroup& m, Level level, int degree, std::size_t i) {
  Cochain c(a, m, level, degree);
  require(i < c.dim() * m.rank(), "basis index out of range");
  c.values()[i] = 1;
  return c;
}

inline std::vector<Cochain> cochain_space_basis(const FinAbGroup& a, const FinAbGroup& m, Level level, int degree) {
  std::vector<Cochain> out;
  const std::size_t n = basis_size(a, m, level, degree);
  for (std::size_t i = 0; i < n; ++i) out.push_back(basis_cochain(a, m, level, degree, i));
  return out;
}

}  // namespace emcoh
