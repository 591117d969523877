#pragma once

// Prime averages (1/N) sum_{p <= x} q(p)/(p-1), accumulated exactly.
//
// Count cells share one denominator D = lcm(p-1), so each prime adds
// count * D/(p-1) to an integer numerator; no rational normalisation happens
// until the end.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "dlcycles/analytic.hpp"
#include "dlcycles/cache.hpp"
#include "dlcycles/constants.hpp"
#include "dlcycles/predict.hpp"
#include "dlcycles/records.hpp"

namespace dlc {

/// Smallest prime included in the average. The library proper starts at 5;
/// 2 and 3 go through brute_record.
enum class SmallPrimes { From5 = 5, From3 = 3, From2 = 2 };

constexpr std::string_view to_string(SmallPrimes s) {
  switch (s) {
    case SmallPrimes::From5: return "p>=5";
    case SmallPrimes::From3: return "p>=3";
    case SmallPrimes::From2: return "p>=2";
  }
  return "?";
}

using RationalGrid = std::array<std::array<Rational, 4>, 4>;
using RealGrid = std::array<std::array<double, 4>, 4>;

/// Euler products the averages are compared with.
struct AverageConstants {
  std::array<double, 5> A{};  // A_0 .. A_4
  double T1 = 0, S = 0, A1Z3Z2 = 0, U = 0, L = 0;

  static AverageConstants compute(u64 cutoff = 1'000'000, unsigned threads = 1) {
    AverageConstants c;
    for (unsigned k = 0; k < 5; ++k) c.A[k] = euler_product({ConstantId::A, k}, cutoff, threads).value;
    c.T1 = euler_product({ConstantId::T, 1}, cutoff, threads).value;
    c.S = euler_product({ConstantId::S, 0}, cutoff, threads).value;
    c.A1Z3Z2 = euler_product({ConstantId::A1Z3Z2, 0}, cutoff, threads).value;
    c.U = euler_product({ConstantId::U, 0}, cutoff, threads).value;
    c.L = euler_product({ConstantId::L, 0}, cutoff, threads).value;
    return c;
  }
};

struct AverageReport {
  u64 x = 0;
  u64 pi_x = 0;          // all primes <= x
  u64 primes_used = 0;   // primes actually averaged over, the normaliser
  SmallPrimes convention = SmallPrimes::From5;
  double li_x = 0;

  // Normalised exact sums; HA and TC are the nontrivial parts.
  RationalGrid fp{}, ha{}, tc{};
  // Predicted constants per cell: A_k with the same k as the per-prime
  // phi-power formula; the collision cell uses the collision-sum average.
  RealGrid fp_pred{}, ha_pred{}, tc_pred{};

  Rational sigma_excess;   // (sigma(n) - 3n/2)/n, tends to T_1 - 3/2
  Rational g_pr, g_any;    // tend to A_1 zeta(3)/zeta(2) and S
  Rational w_printed;      // the w(p)/(p-1) summand as printed
  Rational w_collision;    // collision_sum/(p-1)
  Rational w_lower, w_upper;  // tend to L and U
  AverageConstants constants;

  static RealGrid to_real(const RationalGrid& g) {
    RealGrid out{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) out[r][c] = to_double(g[r][c]);
    return out;
  }
};

namespace detail {

inline RealGrid prediction_grid(Equation eq, const AverageConstants& c, double collision) {
  const auto& k = power_table(eq);
  RealGrid out{};
  for (int r = 0; r < 4; ++r)
    for (int col = 0; col < 4; ++col) out[r][col] = k[r][col] < 0 ? collision : c.A[k[r][col]];
  return out;
}

}  // namespace detail

/// fetch(p) must return the record for p (p >= 5); 2 and 3 come from brute_record.
inline AverageReport average_from(u64 x, SmallPrimes conv, const std::function<PrimeRecord(u64)>& fetch,
                                  const AverageConstants& constants) {
  if (x < 5) throw DomainError("average needs x >= 5");
  AverageReport rep;
  rep.x = x;
  rep.convention = conv;
  rep.li_x = li(static_cast<double>(x));
  rep.constants = constants;

  std::vector<u64> primes;
  for (u64 p : sieve_primes(x)) {
    ++rep.pi_x;
    if (p >= static_cast<u64>(conv)) primes.push_back(p);
  }
  rep.primes_used = primes.size();

  BigInt D = 1;
  for (u64 p : primes) D = boost::multiprecision::lcm(D, BigInt(p - 1));

  std::array<std::array<std::array<BigInt, 4>, 4>, 3> num{};
  BigInt sig = 0, gpr = 0, gany = 0;
  Rational wp = 0, wc = 0, wl = 0, wu = 0;
  for (u64 p : primes) {
    const PrimeRecord r = p < 5 ? brute_record(p) : fetch(p);
    if (r.p != p) throw CacheError("record for " + std::to_string(p) + " has p = " + std::to_string(r.p));
    const BigInt mult = D / (p - 1);
    const Grid* grids[3] = {&r.fp, &r.ha_nontrivial, &r.tc_nontrivial};
    for (int e = 0; e < 3; ++e)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) num[e][i][j] += mult * (*grids[e])[i][j];
    const FactoredInt fn = factor(p - 1);
    sig += mult * sigma(fn);
    gpr += mult * r.g.g_pr_h_any;
    gany += mult * r.g.g_any_h_any;
    const Rational inv(1, p - 1);
    wp += w_printed(fn) * inv;
    wc += collision_sum(fn) * inv;
    wl += w_lower(fn) * inv;
    wu += w_upper(fn) * inv;
  }
  const BigInt N = rep.primes_used;
  const BigInt den = D * N;
  RationalGrid* out[3] = {&rep.fp, &rep.ha, &rep.tc};
  for (int e = 0; e < 3; ++e)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) (*out[e])[i][j] = Rational(num[e][i][j], den);
  rep.sigma_excess = Rational(sig, den) - Rational(3, 2);
  rep.g_pr = Rational(gpr, den);
  rep.g_any = Rational(gany, den);
  const Rational nr(N);
  rep.w_printed = wp / nr;
  rep.w_collision = wc / nr;
  rep.w_lower = wl / nr;
  rep.w_upper = wu / nr;

  rep.fp_pred = detail::prediction_grid(Equation::FP, constants, 1.0);
  rep.ha_pred = detail::prediction_grid(Equation::HA, constants, to_double(rep.w_collision));
  rep.tc_pred = detail::prediction_grid(Equation::TC, constants, 1.0);
  return rep;
}

/// Averages over cached records, computing and appending any that are missing.
inline AverageReport average_harness(u64 x, Cache& cache, SmallPrimes conv, const AverageConstants& constants,
                                     const CountOptions& opt = {}) {
  return average_from(
      x, conv,
      [&](u64 p) {
        if (!cache.contains(p)) cache.append(compute_record(p, opt));
        return cache.at(p);
      },
      constants);
}

/// The convention whose FP (ANY, ANY) average lands closest to `target`,
/// with the three candidate values for the record.
struct ConventionChoice {
  SmallPrimes chosen = SmallPrimes::From5;
  std::array<double, 3> fp_any_any{};  // From5, From3, From2
};

inline ConventionChoice resolve_convention(u64 x, const std::function<PrimeRecord(u64)>& fetch, double target) {
  ConventionChoice c;
  const AverageConstants none{};
  const SmallPrimes all[3] = {SmallPrimes::From5, SmallPrimes::From3, SmallPrimes::From2};
  double best = 1e300;
  for (int i = 0; i < 3; ++i) {
    c.fp_any_any[i] = to_double(average_from(x, all[i], fetch, none).fp[0][0]);
    const double dev = std::fabs(c.fp_any_any[i] - target);
    if (dev < best) best = dev, c.chosen = all[i];
  }
  return c;
}

}  // namespace dlc
