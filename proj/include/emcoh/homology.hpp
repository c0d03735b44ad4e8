#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "emcoh/abelian.hpp"
#include "emcoh/modsnf.hpp"

namespace emcoh {

// Cohomology at the middle of Z^{in} -> Z^{dim} -> Z^{out} tensored with a coefficient group.
// Flat cochains are slot-major: x[j * dim + b].
class ClassMap {
 public:
  virtual ~ClassMap() = default;
  virtual const FinAbGroup& invariants() const = 0;
  virtual const FinAbGroup& coefficients() const = 0;
  virtual std::size_t dim() const = 0;
  virtual std::size_t dim_in() const = 0;
  virtual std::vector<Int> representative(std::size_t i) const = 0;
  virtual bool is_cocycle(const std::vector<Int>& x) const = 0;
  virtual Element class_of(const std::vector<Int>& x) const = 0;
  virtual std::optional<std::vector<Int>> primitive(const std::vector<Int>& x) const = 0;
};

namespace detail {

// One p-primary part of one cyclic coefficient slot.
class PrimaryCohomology {
 public:
  PrimaryCohomology(const SparseIntMatrix& d_in, const SparseIntMatrix& d_out, PrimePower pk)
      : pk_(pk), d_in_(&d_in) {
    const Int q = pk.q;
    dim_ = d_out.cols();
    LocalSnf out(DenseMod::from_sparse(d_out, q), pk, {false, true, true});
    // kernel generators
    for (std::size_t i = 0; i < dim_; ++i) {
      int order = i < out.rank() ? out.valuation(i) : pk.k;
      if (order == 0) continue;
      gen_col_.push_back(i);
      gen_order_.push_back(order);
      gen_mult_.push_back(ipow(pk.p, pk.k - order));
    }
    v_ = out.v();
    v_inv_ = out.v_inv();
    const std::size_t r = gen_col_.size();
    const std::size_t cin = d_in.cols();
    // relations: images of the C^{n-1} basis, and generator orders
    DenseMod rel(r, cin + r, q);
    {
      std::vector<std::vector<Int>> cols(cin, std::vector<Int>(dim_, 0));
      for (std::size_t row = 0; row < d_in.rows(); ++row)
        for (auto [c, v] : d_in.row(row)) cols[c][row] = mod(cols[c][row] + v, q);
      for (std::size_t c = 0; c < cin; ++c) {
        auto z = kernel_coords(cols[c]);
        for (std::size_t l = 0; l < r; ++l) rel(l, c) = z[l];
      }
    }
    for (std::size_t l = 0; l < r; ++l) rel(l, cin + l) = mod(ipow(pk.p, gen_order_[l]), q);
    LocalSnf rs(std::move(rel), pk, {true, false, false});
    u_ = rs.u();
    u_inv_ = rs.u_inv();
    for (std::size_t t = 0; t < r; ++t) {
      int w = t < rs.rank() ? rs.valuation(t) : pk.k;
      if (w == 0) continue;
      inv_row_.push_back(t);
      inv_exp_.push_back(w);
    }
  }

  const PrimePower& prime_power() const { return pk_; }
  std::size_t num_invariants() const { return inv_row_.size(); }
  Int invariant_order(std::size_t i) const { return ipow(pk_.p, inv_exp_[i]); }

  // Coordinates of a cocycle (values mod p^k) on the kernel generators.
  std::vector<Int> kernel_coords(const std::vector<Int>& x) const {
    auto y = v_inv_.apply(x);
    std::vector<Int> z(gen_col_.size());
    for (std::size_t l = 0; l < gen_col_.size(); ++l) {
      Int yi = y[gen_col_[l]];
      if (yi % gen_mult_[l]) throw ConsistencyError("class_of: argument is not a cocycle");
      z[l] = yi / gen_mult_[l];
    }
    return z;
  }

  std::vector<Int> class_coords(const std::vector<Int>& x) const {
    auto z = kernel_coords(x);
    auto u = u_.apply(z);
    std::vector<Int> c(inv_row_.size());
    for (std::size_t i = 0; i < inv_row_.size(); ++i) c[i] = mod(u[inv_row_[i]], invariant_order(i));
    return c;
  }

  std::vector<Int> representative(std::size_t i) const {
    const Int q = pk_.q;
    std::vector<Int> x(dim_, 0);
    const std::size_t t = inv_row_[i];
    for (std::size_t l = 0; l < gen_col_.size(); ++l) {
      Int coef = mulmod(u_inv_(l, t), gen_mult_[l], q);
      if (!coef) continue;
      for (std::size_t b = 0; b < dim_; ++b) {
        Int vb = v_(b, gen_col_[l]);
        if (vb) x[b] = (x[b] + mulmod(coef, vb, q)) % q;
      }
    }
    return x;
  }

  std::optional<std::vector<Int>> primitive(const std::vector<Int>& x) const {
    if (!in_snf_) in_snf_ = std::make_unique<LocalSnf>(DenseMod::from_sparse(*d_in_, pk_.q), pk_,
                                                       LocalSnf::Options{true, true, false});
    return in_snf_->solve(x);
  }

 private:
  PrimePower pk_;
  const SparseIntMatrix* d_in_;
  std::size_t dim_ = 0;
  DenseMod v_, v_inv_, u_, u_inv_;
  std::vector<std::size_t> gen_col_;
  std::vector<int> gen_order_;
  std::vector<Int> gen_mult_;
  std::vector<std::size_t> inv_row_;
  std::vector<int> inv_exp_;
  mutable std::unique_ptr<LocalSnf> in_snf_;
};

}  // namespace detail

class FlatCohomology : public ClassMap {
 public:
  FlatCohomology(SparseIntMatrix d_in, SparseIntMatrix d_out, FinAbGroup coeff)
      : d_in_(std::move(d_in)), d_out_(std::move(d_out)), m_(std::move(coeff)) {
    dim_ = d_out_.cols();
    if (d_in_.rows() != dim_) throw std::logic_error("complex dimensions do not match");
    check_size(static_cast<Int>(dim_ * std::max<std::size_t>(1, m_.rank())), "cochain space");
    std::vector<Int> raw_orders;
    for (std::size_t j = 0; j < m_.rank(); ++j) {
      const Int e = m_.factor(j);
      for (auto pk : factorize(e)) {
        Part part{j, pk, e / pk.q, detail::PrimaryCohomology(d_in_, d_out_, pk)};
        part.cofactor_inv = inv_mod(part.cofactor % pk.q, pk.q);
        for (std::size_t i = 0; i < part.h.num_invariants(); ++i) raw_orders.push_back(part.h.invariant_order(i));
        parts_.push_back(std::move(part));
      }
    }
    raw_ = canonicalize_orders(raw_orders);
  }
  FlatCohomology(const FlatCohomology&) = delete;
  FlatCohomology& operator=(const FlatCohomology&) = delete;

  const FinAbGroup& invariants() const override { return raw_.group; }
  const FinAbGroup& coefficients() const override { return m_; }
  std::size_t dim() const override { return dim_; }
  std::size_t dim_in() const override { return d_in_.cols(); }
  const SparseIntMatrix& d_in() const { return d_in_; }
  const SparseIntMatrix& d_out() const { return d_out_; }

  bool is_cocycle(const std::vector<Int>& x) const override {
    for (std::size_t j = 0; j < m_.rank(); ++j) {
      std::vector<Int> s(x.begin() + j * dim_, x.begin() + (j + 1) * dim_);
      for (Int v : d_out_.apply_mod(s, m_.factor(j)))
        if (v) return false;
    }
    return true;
  }

  std::vector<Int> representative(std::size_t i) const override {
    Element e = raw_.group.zero();
    e[i] = 1;
    auto raw = raw_.lift(e);
    std::vector<Int> x(dim_ * m_.rank(), 0);
    std::size_t r = 0;
    for (const auto& part : parts_) {
      const Int ej = m_.factor(part.slot);
      for (std::size_t t = 0; t < part.h.num_invariants(); ++t, ++r) {
        Int c = static_cast<Int>(floor_mod(raw[r], BigInt(part.h.invariant_order(t))));
        if (!c) continue;
        auto rep = part.h.representative(t);
        const Int scale = mulmod(c, part.cofactor, ej);
        for (std::size_t b = 0; b < dim_; ++b)
          if (rep[b]) {
            Int& dst = x[part.slot * dim_ + b];
            dst = (dst + mulmod(scale, rep[b], ej)) % ej;
          }
      }
    }
    return x;
  }

  Element class_of(const std::vector<Int>& x) const override {
    if (!is_cocycle(x)) throw ValidationError("class_of: argument is not a cocycle");
    std::vector<Int> raw;
    for (const auto& part : parts_) {
      auto local = local_values(x, part);
      auto c = part.h.class_coords(local);
      raw.insert(raw.end(), c.begin(), c.end());
    }
    return raw_.to_canonical(raw);
  }

  std::optional<std::vector<Int>> primitive(const std::vector<Int>& x) const override {
    const std::size_t din = d_in_.cols();
    std::vector<Int> y(din * m_.rank(), 0);
    for (const auto& part : parts_) {
      auto sol = part.h.primitive(local_values(x, part));
      if (!sol) return std::nullopt;
      const Int ej = m_.factor(part.slot);
      for (std::size_t b = 0; b < din; ++b) {
        Int& dst = y[part.slot * din + b];
        dst = (dst + mulmod(part.cofactor, (*sol)[b], ej)) % ej;
      }
    }
    return y;
  }

 private:
  struct Part {
    std::size_t slot;
    PrimePower pk;
    Int cofactor;
    detail::PrimaryCohomology h;
    Int cofactor_inv = 1;
  };

  std::vector<Int> local_values(const std::vector<Int>& x, const Part& part) const {
    std::vector<Int> local(dim_);
    const Int q = part.pk.q;
    for (std::size_t b = 0; b < dim_; ++b) local[b] = mulmod(mod(x[part.slot * dim_ + b], q), part.cofactor_inv, q);
    return local;
  }

  SparseIntMatrix d_in_, d_out_;
  FinAbGroup m_;
  std::size_t dim_ = 0;
  std::vector<Part> parts_;
  CanonicalQuotient raw_;
};

// Image of H(Z/N) in H(Z/(N e)) under multiplication by e, as a subgroup of the larger group.
class ImageClassMap : public ClassMap {
 public:
  ImageClassMap(std::shared_ptr<const FlatCohomology> small, std::shared_ptr<const FlatCohomology> big, Int factor)
      : small_(std::move(small)), big_(std::move(big)), factor_(factor) {
    std::vector<Element> imgs;
    for (std::size_t i = 0; i < small_->invariants().rank(); ++i) {
      auto x = small_->representative(i);
      imgs.push_back(big_->class_of(embed(x)));
    }
    auto h = GroupHom::from_images(small_->invariants(), big_->invariants(), imgs);
    im_ = image(h);
  }

  const FinAbGroup& invariants() const override { return im_.image; }
  const FinAbGroup& coefficients() const override { return big_->coefficients(); }
  std::size_t dim() const override { return big_->dim(); }
  std::size_t dim_in() const override { return big_->dim_in(); }
  bool is_cocycle(const std::vector<Int>& x) const override { return big_->is_cocycle(x); }

  std::vector<Int> representative(std::size_t i) const override {
    // lift through the corestriction: find a small class mapping onto generator i
    Element target = im_.image.zero();
    target[i] = 1;
    auto pre = preimage(im_.corestriction, target);
    if (!pre) throw std::logic_error("corestriction not surjective");
    std::vector<Int> x(big_->dim() * coefficients().rank(), 0);
    const Int L = coefficients().factor(0);
    for (std::size_t g = 0; g < pre->size(); ++g) {
      if (!(*pre)[g]) continue;
      auto r = embed(small_->representative(g));
      for (std::size_t b = 0; b < x.size(); ++b) x[b] = (x[b] + mulmod((*pre)[g], r[b], L)) % L;
    }
    return x;
  }

  Element class_of(const std::vector<Int>& x) const override {
    auto c = big_->class_of(x);
    auto pre = preimage(im_.inclusion, c);
    if (!pre) throw ValidationError("class is not in the stable subgroup");
    return *pre;
  }

  std::optional<std::vector<Int>> primitive(const std::vector<Int>& x) const override { return big_->primitive(x); }

  std::vector<Int> embed(const std::vector<Int>& x) const {
    std::vector<Int> y(x.size());
    for (std::size_t b = 0; b < x.size(); ++b) y[b] = x[b] * factor_;
    return y;
  }
  const FlatCohomology& big() const { return *big_; }
  const FlatCohomology& small() const { return *small_; }

 private:
  std::shared_ptr<const FlatCohomology> small_, big_;
  Int factor_;
  ImageData im_;
};

// Some x with m x = b (mod n), for a sparse integer matrix, via prime-power parts and CRT.
inline std::optional<std::vector<Int>> solve_mod(const SparseIntMatrix& m, const std::vector<Int>& b, Int n) {
  std::vector<Int> x(m.cols(), 0);
  for (auto pk : factorize(n)) {
    LocalSnf s(DenseMod::from_sparse(m, pk.q), pk, {true, true, false});
    std::vector<Int> bl(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) bl[i] = mod(b[i], pk.q);
    auto sol = s.solve(bl);
    if (!sol) return std::nullopt;
    const Int cof = n / pk.q;
    const Int e = mulmod(cof, inv_mod(cof % pk.q, pk.q), n);  // idempotent for this prime
    for (std::size_t c = 0; c < x.size(); ++c) x[c] = (x[c] + mulmod(e, (*sol)[c], n)) % n;
  }
  return x;
}

}  // namespace emcoh
