#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace emcoh {

using Int = std::int64_t;

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

// Basis-size limit, overridable through EMCOH_SIZE_GUARD.
inline Int size_guard() {
  static const Int limit = [] {
    if (const char* env = std::getenv("EMCOH_SIZE_GUARD")) {
      char* end = nullptr;
      long long v = std::strtoll(env, &end, 10);
      if (end != env && v > 0) return static_cast<Int>(v);
    }
    return static_cast<Int>(2'000'000);
  }();
  return limit;
}

// Dense working matrices are bounded separately from the basis.
inline Int dense_guard() { return size_guard() * 20; }

inline void check_size(Int n, const std::string& what) {
  if (n > size_guard())
    throw SizeGuardError(what + ": " + std::to_string(n) + " exceeds size guard " +
                         std::to_string(size_guard()));
}

inline Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

inline Int mulmod(Int a, Int b, Int m) {
  Int r = static_cast<Int>((static_cast<__int128>(a) * b) % m);
  return r < 0 ? r + m : r;
}

inline Int ipow(Int p, int e) {
  Int r = 1;
  while (e-- > 0) r *= p;
  return r;
}

inline Int gcd(Int a, Int b) { return std::gcd(a, b); }
inline Int lcm(Int a, Int b) { return std::lcm(a, b); }

// Returns g and x,y with a*x + b*y = g.
inline Int ext_gcd(Int a, Int b, Int& x, Int& y) {
  Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

inline Int inv_mod(Int a, Int m) {
  Int x, y;
  Int g = ext_gcd(mod(a, m), m, x, y);
  if (g != 1) throw std::logic_error("inv_mod: not invertible");
  return mod(x, m);
}

struct PrimePower {
  Int p = 2;
  int k = 1;
  Int q = 2;
};

inline std::vector<PrimePower> factorize(Int n) {
  std::vector<PrimePower> out;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.k;
      pp.q *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

}  // namespace emcoh
