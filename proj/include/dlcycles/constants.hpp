#pragma once

// Euler products over primes with a rigorous truncation bound, and the
// density r(a, b).
//
// Tail: for p > N every family below has |ln f(p)| <= c / p^2, and
//   sum_{p > N} 1/p^2 <= 2 * 1.25506 / (N ln N)
// from pi(t) < 1.25506 t / ln t. So the omitted product lies in
// exp(+-tau) with tau = c * 2.51012 / (N ln N).

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <optional>
#include <string>

#include "dlcycles/arith.hpp"
#include "dlcycles/errors.hpp"
#include "dlcycles/parallel.hpp"

namespace dlc {

enum class ConstantId { A, S, A1Z3Z2, U, L, T };

struct ConstantSpec {
  ConstantId id = ConstantId::A;
  unsigned k = 0;  // only for A and T

  std::string name() const {
    switch (id) {
      case ConstantId::A: return "A" + std::to_string(k);
      case ConstantId::S: return "S";
      case ConstantId::A1Z3Z2: return "A1Z3Z2";
      case ConstantId::U: return "U";
      case ConstantId::L: return "L";
      case ConstantId::T: return "T" + std::to_string(k);
    }
    return "?";
  }
};

/// "A3", "T2", "S", "A1Z3Z2", "U", "L".
inline ConstantSpec parse_constant(const std::string& s) {
  if (s == "S") return {ConstantId::S, 0};
  if (s == "A1Z3Z2") return {ConstantId::A1Z3Z2, 0};
  if (s == "U") return {ConstantId::U, 0};
  if (s == "L") return {ConstantId::L, 0};
  if (s.size() >= 2 && (s[0] == 'A' || s[0] == 'T') &&
      s.find_first_not_of("0123456789", 1) == std::string::npos && s.size() <= 4) {
    return {s[0] == 'A' ? ConstantId::A : ConstantId::T, static_cast<unsigned>(std::stoul(s.substr(1)))};
  }
  throw UnknownConstant("unknown constant '" + s + "'");
}

struct EulerProductResult {
  std::string id;
  double value = 0;
  double tail_bound = 0;
  u64 prime_cutoff = 0;
};

/// Local factor at the prime p.
inline long double local_factor(const ConstantSpec& c, long double p) {
  switch (c.id) {
    case ConstantId::A: return 1.0L + (std::pow(1.0L - 1.0L / p, static_cast<long double>(c.k)) - 1.0L) / (p - 1.0L);
    case ConstantId::S: return 1.0L - p / (p * p * p - 1.0L);
    case ConstantId::A1Z3Z2: return 1.0L - 2.0L * p / (p * p * p - 1.0L);
    case ConstantId::U: return 1.0L + (3 * p * p + 2 * p + 1) / (p * (p + 1) * (p * p - 1));
    case ConstantId::L: {
      const long double p2 = p * p, p3 = p2 * p;
      return 1.0L + (p3 * p2 + 2 * p2 * p2 - 3 * p3 + p2 + 1) / (p3 * (p + 1) * (p + 1) * (p + 1) * (p - 1));
    }
    case ConstantId::T: return 1.0L + p / ((p - 1.0L) * (std::pow(p, static_cast<long double>(c.k + 1)) - 1.0L));
  }
  throw UnknownConstant(c.name());
}

/// c with |ln f(p)| <= c / p^2 for every prime p > N (N >= 100).
inline long double tail_constant(const ConstantSpec& c, long double N) {
  // raw: sup over p > N of p^2 |f(p) - 1|
  long double raw = 0;
  switch (c.id) {
    case ConstantId::A: raw = c.k * N / (N - 1); break;
    case ConstantId::S: raw = N * N * N / (N * N * N - 1); break;
    case ConstantId::A1Z3Z2: raw = 2 * N * N * N / (N * N * N - 1); break;
    case ConstantId::U: raw = 3; break;  // p(3p^2+2p+1) <= 3(p+1)(p^2-1) once p^2 >= 4p+3
    case ConstantId::L: raw = 1; break;  // numerator <= p(p-1)(p+1)^3 for p >= 2
    case ConstantId::T: raw = N * N * N / ((N - 1) * (N * N - 1)); break;  // decreasing in p, k >= 1
  }
  // |ln(1+x)| <= |x| / (1 - |x|)
  return raw / (1 - raw / (N * N));
}

inline EulerProductResult euler_product(const ConstantSpec& c, u64 prime_cutoff = 10'000'000,
                                        unsigned threads = 1) {
  if (prime_cutoff < 100) throw DomainError("prime_cutoff must be >= 100");
  if ((c.id == ConstantId::T) && c.k == 0) throw DomainError("T_k needs k >= 1");
  EulerProductResult r{c.name(), 1.0, 0.0, prime_cutoff};
  if (c.id == ConstantId::A && c.k == 0) return r;
  const auto primes = sieve_primes(prime_cutoff);
  // Sum of logs in fixed chunks, combined in order: bit-stable across thread counts.
  const long double log_value = chunked_reduce(
      0, primes.size(), 1 << 15, threads, 0.0L,
      [&](std::size_t b, std::size_t e) {
        long double s = 0;
        for (std::size_t i = b; i < e; ++i) s += std::log(local_factor(c, static_cast<long double>(primes[i])));
        return s;
      },
      [](long double a, long double b) { return a + b; });
  const long double value = std::exp(log_value);
  const long double N = static_cast<long double>(prime_cutoff);
  const long double tau = tail_constant(c, N) * 2.51012L / (N * std::log(N));
  r.value = static_cast<double>(value);
  r.tail_bound = static_cast<double>(std::fabs(value) * std::expm1(tau));
  return r;
}

inline EulerProductResult euler_product(const std::string& name, u64 prime_cutoff = 10'000'000,
                                        unsigned threads = 1) {
  return euler_product(parse_constant(name), prime_cutoff, threads);
}

/// The exact density r(a, b) multiplying A_2 in the joint-divisibility average.
inline boost::multiprecision::cpp_rational r_ab(u64 a, u64 b) {
  using R = boost::multiprecision::cpp_rational;
  if (a == 0 || b == 0) throw DomainError("r(a,b) needs a, b >= 1");
  const u64 g = std::gcd(a, b);
  const u64 l = a / g * b;
  R r = R(phi(l / g) * phi(l));
  r /= R(l) * l * l * l;
  for (const auto& f : factor(a * b).factors) {
    const R q = f.prime;
    r *= q * (q * q + q - 1) / (q * q * q - q * q - 2 * q + 1);
  }
  for (const auto& f : factor(a * b / (g * g)).factors) {
    const R q = f.prime;
    r *= q * (q * q - 1) / (q * q * q - 2 * q + 1);
  }
  return r;
}

}  // namespace dlc
