#pragma once

#include <vector>

#include "emcoh/extensions.hpp"

namespace emcoh {

// Direct count of quasi-trivial braided extensions: every oracle-passing skeletal datum with normalized
// (xi, kappa) over Z/(refine n), grouped by equivalence (relabeling X -> X + Z(x) and a 2-cochain gauge J
// vanishing on the base).
struct CensusReport {
  Int data_checked = 0;
  Int coherent = 0;
  std::vector<ZestingDatum> classes;
};

namespace detail {

inline std::vector<std::vector<Int>> normalized_functions(Int k, Int m) {
  // functions A -> A0 by index, Z(0) = 0
  std::vector<std::vector<Int>> out;
  std::vector<Int> z(k, 0);
  while (true) {
    out.push_back(z);
    Int i = 1;
    while (i < k && ++z[i] == m) z[i++] = 0;
    if (i >= k) break;
  }
  return out;
}

// Whether d2 is equivalent to d1 through the relabeling by z.
inline bool gauge_equivalent(const ZestingDatum& d1, const ZestingDatum& d2, const std::vector<Int>& z, Int e) {
  auto r1 = rescaled(d1, e), r2 = rescaled(d2, e);
  ZestedCategory s1(r1), s2(r2);
  const Int N = s1.size(), m = s1.base_order(), n = r1.modulus();
  const auto add0 = d1.base.group().addition_table();
  auto F = [&](Int p) { return add0[(p % m) * m + z[p / m]] + m * (p / m); };
  auto var = [&](Int p, Int q) -> Int {
    if (p / m == 0 && q / m == 0) return -1;
    return p * N + q;
  };
  std::map<std::pair<std::map<Int, Int>, Int>, int> rows;
  auto emit = [&](std::map<Int, Int> coeffs, Int rhs) {
    std::map<Int, Int> clean;
    for (auto [v, c] : coeffs)
      if (v >= 0 && mod(c, n)) clean[v] = mod(c, n);
    rhs = mod(rhs, n);
    if (clean.empty()) return rhs == 0;
    rows[{clean, rhs}] = 1;
    return true;
  };
  for (Int p = 0; p < N; ++p)
    for (Int q = 0; q < N; ++q) {
      std::map<Int, Int> br;
      br[var(p, q)] += 1;
      br[var(q, p)] -= 1;
      if (!emit(br, s2.c(F(p), F(q)) - s1.c(p, q))) return false;
      for (Int r = 0; r < N; ++r) {
        std::map<Int, Int> as;
        as[var(p, q)] += 1;
        as[var(s1.sum(p, q), r)] += 1;
        as[var(q, r)] -= 1;
        as[var(p, s1.sum(q, r))] -= 1;
        if (!emit(as, s2.omega(F(p), F(q), F(r)) - s1.omega(p, q, r))) return false;
      }
    }
  if (rows.empty()) return true;
  SparseIntMatrix mat(rows.size(), static_cast<std::size_t>(N * N));
  std::vector<Int> rhs;
  std::size_t i = 0;
  for (const auto& [key, _] : rows) {
    for (auto [v, c] : key.first) mat.add(i, static_cast<std::size_t>(v), c);
    rhs.push_back(key.second);
    ++i;
  }
  return solve_mod(mat, rhs, n).has_value();
}

}  // namespace detail

inline bool equivalent_extensions(const ZestingDatum& d1, const ZestingDatum& d2) {
  require(d1.grading == d2.grading && d1.base == d2.base, "extensions of different data");
  const Int k = d1.a_order(), m = d1.base_order();
  const auto add0 = d1.base.group().addition_table();
  const auto adda = d1.grading.addition_table();
  auto neg = [&](Int x) {
    for (Int y = 0; y < m; ++y)
      if (add0[x * m + y] == 0) return y;
    return Int(0);
  };
  const Int ex = std::max<Int>(2, d1.grading.exponent());
  for (const auto& z : detail::normalized_functions(k, m)) {
    // L1 - L2 = Z(p) + Z(q) - Z(p + q)
    bool ok = true;
    for (Int p = 0; p < k && ok; ++p)
      for (Int q = 0; q < k && ok; ++q) {
        Int lhs = add0[d1.Lv(p, q) * m + neg(d2.Lv(p, q))];
        Int rhs = add0[add0[z[p] * m + z[q]] * m + neg(z[adda[p * k + q]])];
        ok = lhs == rhs;
      }
    if (!ok) continue;
    bool a = detail::gauge_equivalent(d1, d2, z, 2 * ex * ex);
    bool b = detail::gauge_equivalent(d1, d2, z, 2 * ex * ex * ex);
    if (a != b) throw ConsistencyError("unstable gauge equivalence");
    if (a) return true;
  }
  return false;
}

inline CensusReport zesting_census(const QuadraticForm& base, const FinAbGroup& a, Int refine = 2) {
  const Int n = base.coeff().factor(0), nc = refine * n, k = a.order();
  const Int k1 = k - 1;
  const Int unknowns = k1 * k1 * k1 + k1 * k1;
  Int combos = 1;
  for (Int i = 0; i < unknowns; ++i) {
    combos *= nc;
    if (combos > size_guard()) throw SizeGuardError("census: too many (xi, kappa) candidates");
  }
  CensusReport rep;
  for (const auto& f : grading_characters(a, base.group(), n))
    for (const auto& L : symmetric_cocycles(a, base)) {
      auto d = trivial_datum(base, a);
      d.f = f;
      d.L = L;
      auto r = rescaled(d, refine);
      std::vector<Int> vals(unknowns, 0);
      for (Int it = 0; it < combos; ++it) {
        Int pos = 0;
        for (Int x = 1; x < k; ++x)
          for (Int y = 1; y < k; ++y) {
            for (Int z = 1; z < k; ++z) r.xi[(x * k + y) * k + z] = vals[pos++];
          }
        for (Int x = 1; x < k; ++x)
          for (Int y = 1; y < k; ++y) r.kappa[x * k + y] = vals[pos++];
        ++rep.data_checked;
        if (skeletal_oracle(r).ok) {
          ++rep.coherent;
          bool known = false;
          for (const auto& c : rep.classes)
            if ((known = equivalent_extensions(c, r))) break;
          if (!known) rep.classes.push_back(r);
        }
        std::size_t i = 0;
        while (i < vals.size() && ++vals[i] == nc) vals[i++] = 0;
      }
    }
  return rep;
}

}  // namespace emcoh
