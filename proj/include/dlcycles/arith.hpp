#pragma once

// Number-theoretic kernel: 64-bit modular arithmetic, deterministic
// primality, factorization, and the multiplicative functions used by
// every divisor sum in the library.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "dlcycles/errors.hpp"

namespace dlc {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// -----------------------------------------------------------------------------
// Modular arithmetic
// -----------------------------------------------------------------------------

/// a*b mod m with a 128-bit intermediate.
constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

/// b^e mod m. Returns 0 when m == 1.
constexpr u64 mod_pow(u64 b, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  b %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return result;
}

/// Extended Euclid over signed 128-bit: returns g = gcd(a,b) with x*a + y*b = g.
constexpr i128 ext_gcd(i128 a, i128 b, i128& x, i128& y) {
  i128 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    i128 q = a / b;
    i128 t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  x = x0;
  y = y0;
  return a;
}

constexpr u64 reduce_mod(i128 v, u64 m) {
  i128 r = v % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

/// Inverse of x modulo m; throws NotInvertible when gcd(x, m) != 1.
inline u64 inv_mod(u64 x, u64 m) {
  if (m == 0) throw NotInvertible("modulus must be positive");
  if (m == 1) return 0;
  i128 s = 0, t = 0;
  const i128 g = ext_gcd(x % m, m, s, t);
  if (g != 1) {
    throw NotInvertible(std::to_string(x) + " is not invertible modulo " + std::to_string(m));
  }
  return reduce_mod(s, m);
}

struct BezoutResult {
  u64 d;   // gcd(h, a, m)
  u64 u0;  // u0*h + v0*a == d (mod m)
  u64 v0;
};

/// Coefficients with u0*h + v0*a == gcd(h, a, m) (mod m), reduced into [0, m).
inline BezoutResult bezout_mod(u64 h, u64 a, u64 m) {
  i128 x1 = 0, y1 = 0;
  const i128 g1 = ext_gcd(h, a, x1, y1);
  i128 x2 = 0, y2 = 0;
  const i128 d = ext_gcd(g1, m, x2, y2);
  const u64 x1r = reduce_mod(x1, m);
  const u64 y1r = reduce_mod(y1, m);
  const u64 x2r = reduce_mod(x2, m);
  return {static_cast<u64>(d), mul_mod(x1r, x2r, m), mul_mod(y1r, x2r, m)};
}

// -----------------------------------------------------------------------------
// Primality and factorization
// -----------------------------------------------------------------------------

namespace detail {

inline bool miller_rabin_round(u64 n, u64 a, u64 d, unsigned r) {
  u64 x = mod_pow(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

/// Deterministic for all 64-bit n (first twelve prime bases).
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : kBases) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : kBases) {
    if (!detail::miller_rabin_round(n, a, d, r)) return false;
  }
  return true;
}

namespace detail {

// Brent's variant of Pollard rho; n must be an odd composite.
inline u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split_into(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const u64 f = pollard_brent(n);
  split_into(f, primes);
  split_into(n / f, primes);
}

}  // namespace detail

struct PrimePower {
  u64 prime;
  unsigned exponent;
  bool operator==(const PrimePower&) const = default;
};

/// A natural number together with its prime factorization and sorted divisor list.
struct FactoredInt {
  u64 n = 1;
  std::vector<PrimePower> factors;
  std::vector<u64> divisors{1};

  bool squarefree() const {
    return std::all_of(factors.begin(), factors.end(),
                       [](const PrimePower& f) { return f.exponent == 1; });
  }
  bool divides(u64 d) const { return d != 0 && n % d == 0; }
};

namespace detail {

inline std::vector<u64> expand_divisors(const std::vector<PrimePower>& factors) {
  std::vector<u64> divs{1};
  for (const auto& [q, e] : factors) {
    const std::size_t base = divs.size();
    u64 pw = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pw *= q;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pw);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace detail

/// Trial division up to 10^6, Pollard-Brent on whatever remains.
inline FactoredInt factor(u64 n) {
  if (n == 0) throw DomainError("factor: n must be positive");
  FactoredInt out;
  out.n = n;
  std::vector<u64> primes;
  u64 m = n;
  auto strip = [&](u64 q) {
    while (m % q == 0) {
      primes.push_back(q);
      m /= q;
    }
  };
  strip(2);
  strip(3);
  constexpr u64 kTrialLimit = 1'000'000;
  for (u64 q = 5; q <= kTrialLimit && q * q <= m; q += 6) {
    strip(q);
    strip(q + 2);
  }
  if (m > 1) detail::split_into(m, primes);
  std::sort(primes.begin(), primes.end());
  for (u64 q : primes) {
    if (!out.factors.empty() && out.factors.back().prime == q) {
      ++out.factors.back().exponent;
    } else {
      out.factors.push_back({q, 1});
    }
  }
  out.divisors = detail::expand_divisors(out.factors);
  return out;
}

// -----------------------------------------------------------------------------
// Multiplicative functions
// -----------------------------------------------------------------------------

inline u64 phi(const FactoredInt& f) {
  u64 r = f.n;
  for (const auto& pp : f.factors) r = r / pp.prime * (pp.prime - 1);
  return r;
}

inline int mobius(const FactoredInt& f) {
  if (!f.squarefree()) return 0;
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

inline u64 num_divisors(const FactoredInt& f) {
  u64 r = 1;
  for (const auto& pp : f.factors) r *= pp.exponent + 1;
  return r;
}

inline unsigned omega(const FactoredInt& f) { return static_cast<unsigned>(f.factors.size()); }

/// sum_{d | n} d^k. The caller keeps the result within 64 bits.
inline u64 sigma_k(const FactoredInt& f, unsigned k) {
  u64 r = 1;
  for (const auto& [q, e] : f.factors) {
    u64 qk = 1;
    for (unsigned i = 0; i < k; ++i) qk *= q;
    u64 term = 1, pw = 1;
    for (unsigned i = 0; i < e; ++i) {
      pw *= qk;
      term += pw;
    }
    r *= term;
  }
  return r;
}

inline u64 sigma(const FactoredInt& f) { return sigma_k(f, 1); }

/// Jordan totient J_2(n) = n^2 prod_{q | n} (1 - 1/q^2).
inline u64 jordan2(const FactoredInt& f) {
  u64 r = 1;
  for (const auto& [q, e] : f.factors) {
    u64 pw = 1;
    for (unsigned i = 0; i + 1 < e; ++i) pw *= q * q;
    r *= pw * (q * q - 1);
  }
  return r;
}

inline u64 phi(u64 n) { return phi(factor(n)); }
inline int mobius(u64 n) { return mobius(factor(n)); }
inline u64 num_divisors(u64 n) { return num_divisors(factor(n)); }
inline u64 jordan2(u64 n) { return jordan2(factor(n)); }

/// Number of x in [1, q] with gcd(x, q) = 1 and a*x == b (mod q), i.e. phi(q)/phi(q/d)
/// with d = gcd(a, q). Throws GcdMismatch unless gcd(a, q) == gcd(b, q).
inline u64 count_linear_unit_solutions(u64 a, u64 b, u64 q) {
  if (q == 0) throw DomainError("count_linear_unit_solutions: q must be positive");
  const u64 d = std::gcd(a % q, q);
  const u64 db = std::gcd(b % q, q);
  if (d != db) {
    throw GcdMismatch("gcd(" + std::to_string(a) + "," + std::to_string(q) + ") = " +
                      std::to_string(d) + " differs from gcd(" + std::to_string(b) + "," +
                      std::to_string(q) + ") = " + std::to_string(db));
  }
  return phi(q) / phi(q / d);
}

/// All primes <= limit (sieve of Eratosthenes over odd numbers).
inline std::vector<u64> sieve_primes(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  primes.push_back(2);
  const u64 half = (limit - 1) / 2;  // index i represents 2i+1
  std::vector<bool> composite(half + 1, false);
  for (u64 i = 1; i <= half; ++i) {
    if (composite[i]) continue;
    const u64 q = 2 * i + 1;
    primes.push_back(q);
    for (u64 j = (q * q - 1) / 2; j <= half; j += q) composite[j] = true;
  }
  return primes;
}

}  // namespace dlc
