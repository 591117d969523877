#pragma once

// Checks on the large-E(q) examples, which live beyond 64 bits.
//
// The key fact: for k | q-1, T((q-1)/k, q) counts j in [1,k] coprime to k
// with (-j)^k == k^k (mod q). One such j gives E(q) >= (q-1)/k.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "dlcycles/counts.hpp"
#include "dlcycles/predict.hpp"

namespace dlc {

struct BigCheckStep {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct BigCheckReport {
  std::string id;
  std::string statement;
  bool applicable = true;  // false when the hypothesis (e.g. primality) does not hold
  bool verified = false;   // every step passed
  std::vector<BigCheckStep> steps;
  std::vector<std::pair<std::string, std::string>> witness;

  /// First failing step, or empty.
  std::string failing_step() const {
    for (const auto& s : steps)
      if (!s.ok) return s.name;
    return {};
  }
};

namespace detail {

inline u64 fnv1a(const std::string& s) {
  u64 h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

inline bool probable_prime(const BigInt& n, unsigned rounds, const std::string& seed_id) {
  std::mt19937_64 gen(fnv1a(seed_id));
  return boost::multiprecision::miller_rabin_test(n, rounds, gen);
}

inline double ln_big(const BigInt& n) {
  // n = mant * 2^shift with mant < 2^53
  const std::size_t bits = boost::multiprecision::msb(n) + 1;
  const std::size_t shift = bits > 53 ? bits - 53 : 0;
  const double mant = static_cast<BigInt>(n >> shift).convert_to<double>();
  return std::log(mant) + static_cast<double>(shift) * std::log(2.0);
}

inline void finish(BigCheckReport& r) {
  r.verified = !r.steps.empty();
  for (const auto& s : r.steps) r.verified = r.verified && s.ok;
}

}  // namespace detail

/// q = (29^29 + 5^29)/34 is prime and E(q) > q^0.964.
inline BigCheckReport check_29_29(unsigned rounds = 40) {
  using boost::multiprecision::pow;
  using boost::multiprecision::powm;
  if (rounds < 40) throw DomainError("check_29_29 needs at least 40 Miller-Rabin rounds");
  BigCheckReport r;
  r.id = "29-29";
  r.statement = "q = (29^29 + 5^29)/34 is prime and E(q) > q^0.964";
  const BigInt N = pow(BigInt(29), 29) + pow(BigInt(5), 29);
  const BigInt q = N / 34;
  r.witness.push_back({"q", q.str()});

  r.steps.push_back({"34 | 29^29 + 5^29", N % 34 == 0, "remainder " + BigInt(N % 34).str()});
  const bool prime = detail::probable_prime(q, rounds, r.id);
  r.steps.push_back({"q probable prime", prime, std::to_string(rounds) + " Miller-Rabin rounds"});
  r.witness.push_back({"miller_rabin_rounds", std::to_string(rounds)});
  r.steps.push_back({"29 | q - 1", (q - 1) % 29 == 0, "remainder " + BigInt((q - 1) % 29).str()});

  // (iv) follows from 34 q = 29^29 + 5^29; checked again by powm and the two must agree.
  const bool by_construction = (N % q) == 0;
  const BigInt lhs = powm(BigInt(q - 5), BigInt(29), q), rhs = powm(BigInt(29), BigInt(29), q);
  const bool by_powm = lhs == rhs;
  r.steps.push_back({"(-5)^29 == 29^29 (mod q)", by_powm && by_construction == by_powm,
                     std::string("powm ") + (by_powm ? "agrees" : "differs") + ", divisibility " +
                         (by_construction ? "agrees" : "differs")});
  r.witness.push_back({"29^29 mod q", rhs.str()});

  // (v) exactly: ((q-1)/29)^1000 > q^964, plus the logarithmic margin.
  const BigInt e = (q - 1) / 29;
  const bool exact = pow(e, 1000) > pow(q, 964);
  const double margin = detail::ln_big(e) - 0.964 * detail::ln_big(q);
  r.steps.push_back({"(q-1)/29 > q^0.964", exact && margin > 0,
                     "ln((q-1)/29) - 0.964 ln q = " + std::to_string(margin)});
  r.witness.push_back({"E_lower", e.str()});
  r.witness.push_back({"log_ratio", std::to_string(detail::ln_big(e) / detail::ln_big(q))});
  detail::finish(r);
  return r;
}

/// For odd k and q = k^k + j^k prime with k | q-1: E(q) >= (q-1)/k > (q-1)^(1-1/k).
inline BigCheckReport check_odd_k_prime(u64 k, u64 j, unsigned rounds = 40) {
  using boost::multiprecision::pow;
  using boost::multiprecision::powm;
  if (k % 2 == 0 || j < 1 || j > k || std::gcd(j, k) != 1)
    throw DomainError("need odd k, 1 <= j <= k, gcd(j, k) = 1");
  BigCheckReport r;
  r.id = "odd-k-" + std::to_string(k) + "-" + std::to_string(j);
  r.statement = "q = " + std::to_string(k) + "^" + std::to_string(k) + " + " + std::to_string(j) + "^" +
                std::to_string(k) + " prime gives E(q) > (q-1)^(1-1/k)";
  const BigInt q = pow(BigInt(k), static_cast<unsigned>(k)) + pow(BigInt(j), static_cast<unsigned>(k));
  r.witness.push_back({"q", q.str()});
  const bool prime = q < 4 ? q >= 2 : detail::probable_prime(q, rounds, r.id);
  r.witness.push_back({"prime", prime ? "probable" : "no"});
  if (!prime) {
    r.applicable = false;
    return r;
  }
  if ((q - 1) % k != 0) {
    r.applicable = false;
    r.witness.push_back({"k | q-1", "no"});
    return r;
  }
  const BigInt kk = pow(BigInt(k), static_cast<unsigned>(k));
  r.steps.push_back({"(-j)^k == k^k (mod q)", powm(BigInt(q - j), BigInt(k), q) == kk % q, {}});
  const BigInt e = (q - 1) / k;
  r.witness.push_back({"E_lower", e.str()});
  // ((q-1)/k)^k > (q-1)^(k-1)  <=>  q - 1 > k^k; equality when j = 1, where the bound is only >=.
  const bool strict = q - 1 > kk;
  r.steps.push_back({"(q-1)/k >= (q-1)^(1-1/k)", q - 1 >= kk, strict ? "strict" : "equality (j = 1)"});
  detail::finish(r);
  return r;
}

/// The m-form proposition checked against exact counts.
struct MFormCheck {
  u64 p = 0, m = 0, q = 0;
  double lambert_threshold = 0;
  bool holds = false;          // 2 k^k <= p for every k | m and q does not divide m
  bool threshold_agrees = true;  // m <= threshold iff 2 m^m <= p, up to rounding at the boundary
  std::optional<u64> F;          // FP (ANY,ANY), computed only when holds
  std::optional<u64> identity;   // sum_{e | m} e T(e, p)
  bool identity_holds() const { return F && identity && *F == *identity; }
};

inline MFormCheck m_form_check(u64 p, const CountOptions& opt = {}) {
  if (!is_prime(p)) throw NotPrime(p);
  if (p < 5) throw DomainError("m_form_check needs p >= 5");
  const MForm mf = m_form(p);
  MFormCheck r;
  r.p = p;
  r.m = mf.m;
  r.q = mf.q;
  r.lambert_threshold = mf.lambert_threshold;
  r.holds = mf.applicable;
  const double md = static_cast<double>(mf.m);
  if ((md <= mf.lambert_threshold) != mf.small) {
    // W-threshold and 2 m^m <= p can only disagree when m^m lands within rounding of p/2.
    const double gap = std::log(2.0) + md * std::log(md) - std::log(static_cast<double>(p));
    r.threshold_agrees = std::fabs(gap) < 1e-9;
  }
  if (!r.holds) return r;
  PrimeContext ctx(p);
  const auto spectrum = count_T_spectrum(ctx);
  r.F = count_fp(ctx, opt).cell(Condition::Any, Condition::Any);
  u64 id = 0;
  for (u64 e : factor(mf.m).divisors) id += e * spectrum_at(spectrum, e);
  r.identity = id;
  return r;
}

}  // namespace dlc
