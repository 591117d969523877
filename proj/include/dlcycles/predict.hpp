#pragma once

// Predicted main terms, proven error bounds and the variance model.
//
// Main terms are exact rationals in n = p - 1 and phi = phi(n); they only
// become doubles when reported.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "dlcycles/analytic.hpp"
#include "dlcycles/arith.hpp"
#include "dlcycles/counts.hpp"
#include "dlcycles/errors.hpp"
#include "dlcycles/prime_context.hpp"

namespace dlc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact decimal rendering rounded half-up (away from zero on ties).
inline std::string round_half_up(const Rational& r, int decimals) {
  BigInt scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const bool neg = r < 0;
  Rational a = neg ? Rational(-r) : r;
  const Rational shifted = a * scale;
  BigInt q = numerator(shifted) / denominator(shifted);
  const BigInt rem = numerator(shifted) - q * denominator(shifted);
  if (2 * rem >= denominator(shifted)) ++q;
  std::string digits = q.str();
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals))
      digits.insert(0, decimals + 1 - digits.size(), '0');
    digits.insert(digits.size() - decimals, ".");
  }
  return (neg && q != 0 ? "-" : "") + digits;
}

// ---------------------------------------------------------------- predictions

/// A predicted cell is either phi^k / n^(k-1) (k = 0 gives n) or the
/// divisor-sum collision formula.
struct CellFormula {
  enum Kind { PhiPower, CollisionSum } kind = PhiPower;
  int k = 0;

  std::string id() const {
    if (kind == CollisionSum) return "collision-sum";
    switch (k) {
      case 0: return "(p-1)";
      case 1: return "phi";
      default:
        return "phi^" + std::to_string(k) + "/(p-1)" + (k > 2 ? "^" + std::to_string(k - 1) : "");
    }
  }
  bool operator==(const CellFormula&) const = default;
};

struct PredictionMatrix {
  Equation equation = Equation::FP;
  u64 p = 0;
  std::array<std::array<Rational, 4>, 4> exact{};
  std::array<std::array<CellFormula, 4>, 4> formula{};

  double value(Condition r, Condition c) const { return to_double(exact[int(r)][int(c)]); }
};

namespace detail {

using KGrid = std::array<std::array<int, 4>, 4>;

// Powers of phi/(p-1) per cell; -1 marks the divisor-sum cell.
inline constexpr KGrid kFpPowers = {{{0, 2, 1, 2}, {1, 2, 2, 2}, {1, 3, 2, 3}, {2, 3, 3, 3}}};
inline constexpr KGrid kHaPowers = {{{-1, 1, 1, 3}, {1, 2, 2, 3}, {1, 2, 2, 3}, {3, 3, 3, 3}}};
inline constexpr KGrid kTcPowers = {{{0, 2, 1, 3}, {1, 2, 2, 3}, {1, 3, 2, 4}, {2, 3, 3, 4}}};

inline Rational phi_power(u64 n, u64 phi, int k) {
  Rational r = n;
  for (int i = 0; i < k; ++i) r = r * phi / n;
  return r;
}

}  // namespace detail

/// Exponent table for an equation (shared with the prime-average predictions,
/// where phi^k/(p-1)^(k-1) averages to A_k (p-1)).
inline const detail::KGrid& power_table(Equation eq) {
  switch (eq) {
    case Equation::FP: return detail::kFpPowers;
    case Equation::HA: return detail::kHaPowers;
    case Equation::TC: return detail::kTcPowers;
    default: throw DomainError("no prediction table for " + std::string(to_string(eq)));
  }
}

enum class CollisionFormula { SUM_7A, SQUAREFREE_7B, PRODUCT_7C };

/// sum over m | n of phi(m)/m^2 * (sum over d | n/m of phi(dm)/d)^2.
inline Rational collision_sum(const FactoredInt& n) {
  Rational total = 0;
  for (u64 m : n.divisors) {
    Rational inner = 0;
    for (u64 d : factor(n.n / m).divisors) inner += Rational(phi(d * m), d);
    total += Rational(phi(m), m * m) * inner * inner;
  }
  return total;
}

/// Product over prime powers q^alpha || n of the local collision factor.
inline Rational collision_product(const FactoredInt& n) {
  Rational total = 1;
  for (const auto& [q, alpha] : n.factors) {
    const Rational Q = q, a = alpha, one = 1;
    auto qp = [&](unsigned e) {
      BigInt r = 1;
      for (unsigned i = 0; i < e; ++i) r *= q;
      return Rational(r);
    };
    const Rational w = one - one / Q;
    const Rational lead = (w * a + 1) * (w * a + 1);
    const Rational t1 = (a + 1) * (a + 1) * (qp(alpha + 1) - Q) / (Q - 1);
    const Rational t2 = 2 * (a + 1) * (a * qp(alpha + 2) - (a + 1) * qp(alpha + 1) + Q) / ((Q - 1) * (Q - 1));
    const Rational t3 = (a * a * qp(alpha + 3) - (2 * a * a + 2 * a - 1) * qp(alpha + 2) +
                         (a + 1) * (a + 1) * qp(alpha + 1) - Q * Q - Q) /
                        ((Q - 1) * (Q - 1) * (Q - 1));
    total *= lead + w * w * w * (t1 - t2 + t3);
  }
  return total;
}

inline Rational collision_squarefree(const FactoredInt& n) {
  if (!n.squarefree()) throw NotSquarefree(std::to_string(n.n) + " is not squarefree");
  Rational total = 1;
  for (const auto& f : n.factors) total *= Rational(f.prime + 1) - Rational(1, f.prime);
  return total;
}

/// Predicted nontrivial part of C(ANY, ANY).
inline Rational predict_ha_nontrivial(const PrimeContext& ctx,
                                      CollisionFormula f = CollisionFormula::SUM_7A) {
  switch (f) {
    case CollisionFormula::SUM_7A: return collision_sum(ctx.pm1());
    case CollisionFormula::SQUAREFREE_7B: return collision_squarefree(ctx.pm1());
    case CollisionFormula::PRODUCT_7C: return collision_product(ctx.pm1());
  }
  return 0;
}

inline PredictionMatrix predict(const PrimeContext& ctx, Equation eq) {
  PredictionMatrix m;
  m.equation = eq;
  m.p = ctx.p();
  const auto& k = power_table(eq);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      if (k[r][c] < 0) {
        m.formula[r][c] = {CellFormula::CollisionSum, 0};
        m.exact[r][c] = predict_ha_nontrivial(ctx);
      } else {
        m.formula[r][c] = {CellFormula::PhiPower, k[r][c]};
        m.exact[r][c] = detail::phi_power(ctx.n(), ctx.phi_pm1(), k[r][c]);
      }
    }
  return m;
}

inline PredictionMatrix predict_fp(const PrimeContext& ctx) { return predict(ctx, Equation::FP); }
/// Nontrivial collisions.
inline PredictionMatrix predict_ha(const PrimeContext& ctx) { return predict(ctx, Equation::HA); }
/// Nontrivial two-cycles.
inline PredictionMatrix predict_tc(const PrimeContext& ctx) { return predict(ctx, Equation::TC); }

// ------------------------------------------------------------------ variance

/// sum over d | n of d phi(n/d), minus n.
inline u64 variance_sigma2(const PrimeContext& ctx) {
  u64 s = 0;
  for (u64 d : ctx.pm1().divisors) s += d * phi(ctx.n() / d);
  return s - ctx.n();
}

/// Same quantity as sum_{h=1}^{n} gcd(h, n) - n.
inline u64 variance_sigma2_gcd_sum(const PrimeContext& ctx) {
  u64 s = 0;
  for (u64 h = 1; h <= ctx.n(); ++h) s += std::gcd(h, ctx.n());
  return s - ctx.n();
}

// ------------------------------------------------------------------- w sums

/// The average-constant summand exactly as printed: inner sum over d | m with weight phi(dm)/(dm).
inline Rational w_printed(const FactoredInt& n) {
  Rational total = 0;
  for (u64 m : n.divisors) {
    Rational inner = 0;
    for (u64 d : factor(m).divisors) inner += Rational(phi(d * m), d * m);
    total += Rational(phi(m)) * inner * inner;
  }
  return total;
}

/// Lower (phi(m)^3/m^2 weight) and upper (phi(m) weight) envelopes of collision_sum.
inline Rational w_lower(const FactoredInt& n) {
  Rational total = 0;
  for (u64 m : n.divisors) {
    Rational inner = 0;
    for (u64 d : factor(n.n / m).divisors) inner += Rational(phi(d), d);
    const Rational pm = phi(m);
    total += pm * pm * pm / (m * m) * inner * inner;
  }
  return total;
}

inline Rational w_upper(const FactoredInt& n) {
  Rational total = 0;
  for (u64 m : n.divisors) {
    Rational inner = 0;
    for (u64 d : factor(n.n / m).divisors) inner += Rational(phi(d), d);
    total += Rational(phi(m)) * inner * inner;
  }
  return total;
}

inline Rational w_of_p(const PrimeContext& ctx) { return w_printed(ctx.pm1()); }

// ---------------------------------------------------------------- bounds

struct BoundReport {
  std::string id;
  u64 p = 0;
  double main = 0;
  u64 observed = 0;
  double bound = 0;
  bool satisfied = false;
  // Same bound with every divisor-count factor d(.) replaced by 2^omega(.).
  double bound_omega = 0;
  bool satisfied_omega = false;
  std::string detail;  // which e / pair attained the worst ratio, when aggregated
};

/// Counts a bound suite needs beyond the context itself.
struct ExactCounts {
  Grid fp{};
  std::vector<SpectrumEntry> spectrum;
  GCounts g{};
};

inline ExactCounts exact_counts(const PrimeContext& ctx, const CountOptions& opt = {}) {
  return {count_fp(ctx, opt).total(), count_T_spectrum(ctx), count_G(ctx)};
}

namespace detail {

inline double sqrt_term(u64 p) {
  const double pd = static_cast<double>(p);
  return std::sqrt(pd) * (1.0 + std::log(pd));
}

inline double two_pow_omega(u64 n) { return std::ldexp(1.0, static_cast<int>(omega(factor(n)))); }

inline BoundReport make(std::string id, u64 p, double main, u64 obs, double bound, double bound_omega,
                        std::string detail = {}) {
  BoundReport b{std::move(id), p, main, obs, bound, false, bound_omega, false, std::move(detail)};
  const double dev = std::fabs(static_cast<double>(obs) - main);
  b.satisfied = dev <= bound;
  b.satisfied_omega = dev <= bound_omega;
  return b;
}

// #{d | n : d < k}
inline u64 divisors_below(const FactoredInt& n, double k) {
  return static_cast<u64>(std::count_if(n.divisors.begin(), n.divisors.end(),
                                        [&](u64 d) { return static_cast<double>(d) < k; }));
}

}  // namespace detail

/// Largest prime factor q of p-1 and m = (p-1)/q, with the two forms of the
/// smallness condition on m.
struct MForm {
  u64 m = 0, q = 0;
  double lambert_threshold = 0;  // ln(p/2) / W(ln(p/2))
  bool small = false;            // 2 k^k <= p for every k | m, i.e. 2 m^m <= p
  bool applicable = false;       // small and q does not divide m
};

inline MForm m_form(u64 p) {
  const FactoredInt f = factor(p - 1);
  MForm r;
  r.q = f.factors.back().prime;
  r.m = (p - 1) / r.q;
  const double l = std::log(static_cast<double>(p) / 2.0);
  r.lambert_threshold = l / lambert_w(l);
  // 2 m^m <= p, with early exit before overflow
  u128 pw = 2;
  bool ok = true;
  for (u64 i = 0; i < r.m && ok; ++i) {
    pw *= r.m;
    if (pw > p) ok = false;
  }
  r.small = ok;
  r.applicable = ok && r.m % r.q != 0;
  return r;
}

inline std::vector<BoundReport> bound_suite(const PrimeContext& ctx, const ExactCounts& ex) {
  using detail::make;
  const u64 p = ctx.p(), n = ctx.n(), ph = ctx.phi_pm1();
  const FactoredInt& fn = ctx.pm1();
  const double S = detail::sqrt_term(p);
  const double nd = static_cast<double>(n), phd = static_cast<double>(ph);
  const double d = static_cast<double>(ctx.dtau_pm1()), w = detail::two_pow_omega(n);
  const double sig_excess = static_cast<double>(sigma(fn)) - 1.5 * nd;
  const u64 F = at(ex.fp, Condition::Any, Condition::Any);
  const u64 Fpr = at(ex.fp, Condition::PR, Condition::Any);
  std::vector<BoundReport> out;

  out.push_back(make("cz1", p, phd * phd / nd, at(ex.fp, Condition::PR, Condition::RPPR), d * d * S, w * w * S));

  // RPPR residues in [1, n]; n is a multiple of p-1 so the lone d(n) term drops.
  {
    u64 cnt = 0;
    for (u64 x = 1; x <= n; ++x) cnt += ctx.cls(x) == 3;
    out.push_back(make("rppr-count", p, phd * phd / nd, cnt, d * d * S, w * w * S));
  }

  // gcd(x, n) = e against ord x = n/f, worst pair by deviation/bound.
  {
    std::map<std::pair<u64, u64>, u64> hist;
    for (u64 x = 1; x <= n; ++x) ++hist[{ctx.gcd_pm1(x), ctx.gcd_pm1(ctx.dlog(x))}];
    BoundReport worst;
    double worst_ratio = -1;
    bool all = true, all_omega = true;
    for (u64 e : fn.divisors)
      for (u64 f : fn.divisors) {
        const auto it = hist.find({e, f});
        const u64 obs = it == hist.end() ? 0 : it->second;
        const double main = static_cast<double>(phi(n / f)) * static_cast<double>(phi(n / e)) / nd;
        const double b = static_cast<double>(num_divisors(n / f) * num_divisors(n / e)) * S;
        const double bo = detail::two_pow_omega(n / f) * detail::two_pow_omega(n / e) * S;
        auto r = make("ord-gcd", p, main, obs, b, bo, "e=" + std::to_string(e) + " f=" + std::to_string(f));
        all = all && r.satisfied;
        all_omega = all_omega && r.satisfied_omega;
        const double ratio = std::fabs(static_cast<double>(obs) - main) / b;
        if (ratio > worst_ratio) worst_ratio = ratio, worst = r;
      }
    worst.satisfied = all;
    worst.satisfied_omega = all_omega;
    out.push_back(worst);
  }

  // T(e, p) against phi(n/e)/e, worst e; plus the exact parts of the same proposition.
  {
    BoundReport worst;
    double worst_ratio = -1;
    bool all = true, all_omega = true;
    u64 out_of_range = 0, vanish_sum = 0;
    for (const auto& s : ex.spectrum) {
      const u64 k = n / s.e;
      const double main = static_cast<double>(phi(k)) / static_cast<double>(s.e);
      const double b = static_cast<double>(num_divisors(k)) * S;
      auto r = make("T-e", p, main, s.t_e, b, detail::two_pow_omega(k) * S, "e=" + std::to_string(s.e));
      all = all && r.satisfied;
      all_omega = all_omega && r.satisfied_omega;
      const double ratio = std::fabs(static_cast<double>(s.t_e) - main) / b;
      if (ratio > worst_ratio) worst_ratio = ratio, worst = r;
      if (s.t_e > phi(k)) ++out_of_range;
      // 2 k^k <= p
      u128 pw = 2;
      bool small = true;
      for (u64 i = 0; i < k && small; ++i) {
        pw *= k;
        if (pw > p) small = false;
      }
      if (small) vanish_sum += s.t_e;
    }
    worst.satisfied = all;
    worst.satisfied_omega = all_omega;
    out.push_back(worst);
    out.push_back(make("T-1", p, phd, spectrum_at(ex.spectrum, 1), 0, 0));
    out.push_back(make("T-vanish", p, 0, vanish_sum, 0, 0));
    out.push_back(make("T-range", p, 0, out_of_range, 0, 0));
  }

  out.push_back(make("F-sigma", p, nd - 2, F, d * sig_excess * S, w * sig_excess * S));
  const u64 E = static_cast<u64>(std::sqrt(nd));
  {
    const double cnt = static_cast<double>(detail::divisors_below(fn, nd / static_cast<double>(E)));
    const double Ed = static_cast<double>(E);
    out.push_back(make("F-E", p, nd, F, Ed * d * d * S + nd * cnt, Ed * w * w * S + nd * cnt,
                       "E=" + std::to_string(E)));
    out.push_back(make("Fpr-E", p, phd, Fpr, Ed * d * d * S + phd * cnt, Ed * w * w * S + phd * cnt,
                       "E=" + std::to_string(E)));
  }
  {
    const double Ep = static_cast<double>(E_of(ex.spectrum));
    const double pd = static_cast<double>(p);
    const double beta = std::max(0.25, std::log(Ep) / std::log(pd));
    const double f = std::pow(pd, 0.5 + beta) * (2.0 + std::log(pd));
    out.push_back(make("F-beta", p, nd, F, f * d * d, f * w * w, "beta=" + std::to_string(beta)));
  }
  out.push_back(make("Fpr-sigma", p, phd + 2, Fpr, d * d * sig_excess * S, w * w * sig_excess * S));

  {
    double main_pr = 0, main_any = 0;
    for (u64 e : fn.divisors) {
      const double pe = static_cast<double>(phi(n / e));
      main_pr += pe * pe;
      main_any += pe / static_cast<double>(e);
    }
    out.push_back(make("G-pr", p, main_pr / nd, ex.g.g_pr_h_any, d * d * d * S, w * w * w * S));
    out.push_back(make("G-any", p, main_any, ex.g.g_any_h_any, d * d * S, w * w * S));
  }

  if (is_prime(n / 2)) {
    out.push_back(make("sophie-germain", p, nd - 2, F, 2 * S, 2 * S));
    if (p >= 11) {
      const u64 id = spectrum_at(ex.spectrum, 1) + 2 * spectrum_at(ex.spectrum, 2);
      out.push_back(make("sophie-germain-identity", p, static_cast<double>(id), F, 0, 0));
    }
  }

  if (const MForm mf = m_form(p); mf.applicable) {
    const FactoredInt fm = factor(mf.m);
    const double c = 2.0 * static_cast<double>(num_divisors(fm) * sigma(fm)) * S;
    const double co = 2.0 * detail::two_pow_omega(mf.m) * static_cast<double>(sigma(fm)) * S;
    out.push_back(make("m-form", p, nd - static_cast<double>(mf.m), F, c, co, "m=" + std::to_string(mf.m)));
    u64 id = 0;
    for (u64 e : fm.divisors) id += e * spectrum_at(ex.spectrum, e);
    out.push_back(make("m-form-identity", p, static_cast<double>(id), F, 0, 0, "m=" + std::to_string(mf.m)));
  }
  return out;
}

// ---------------------------------------------------------------- census

/// Per-prime inputs of the density census.
struct CensusRow {
  u64 p = 0, F = 0, Fpr = 0, E = 0, phi = 0, d = 0, largest_q = 0;
};

inline CensusRow census_row(const PrimeContext& ctx, const ExactCounts& ex) {
  return {ctx.p(), at(ex.fp, Condition::Any, Condition::Any), at(ex.fp, Condition::PR, Condition::Any),
          E_of(ex.spectrum), ctx.phi_pm1(), ctx.dtau_pm1(), ctx.pm1().factors.back().prime};
}

/// Empirical fractions behind the density statements; nothing here is a theorem
/// about an individual prime except the two bounds conditioned on E(p) <= p^0.3313.
struct CensusReport {
  u64 primes = 0;
  u64 large_factor = 0;         // p-1 has a prime factor > p^0.6687
  u64 small_E = 0;              // E(p) <= p^0.3313
  u64 E_below_two_thirds = 0;   // E(p) < p^(2/3) ln^(2/3 + 0.1) p
  u64 var_exceed = 0;           // |F - (p-1)| > p^0.6
  u64 applicable_checked = 0;   // primes where the conditioned bounds apply
  u64 applicable_failed = 0;
  double x_over_ln_x = 0;
};

inline CensusReport census(const std::vector<CensusRow>& rows) {
  CensusReport r;
  u64 x = 0;
  for (const auto& c : rows) {
    x = std::max(x, c.p);
    const double pd = static_cast<double>(c.p), lp = std::log(pd);
    const double Ed = static_cast<double>(c.E), nd = pd - 1, dd = static_cast<double>(c.d);
    ++r.primes;
    if (static_cast<double>(c.largest_q) > std::pow(pd, 0.6687)) ++r.large_factor;
    if (Ed < std::pow(pd, 2.0 / 3.0) * std::pow(lp, 2.0 / 3.0 + 0.1)) ++r.E_below_two_thirds;
    if (std::fabs(static_cast<double>(c.F) - nd) > std::pow(pd, 0.6)) ++r.var_exceed;
    if (Ed <= std::pow(pd, 0.3313)) {
      ++r.small_E;
      ++r.applicable_checked;
      const double f = std::pow(pd, 0.8313) * (2.0 + lp);
      const bool ok_any = std::fabs(static_cast<double>(c.F) - nd) <= f * dd * dd;
      const bool ok_pr = std::fabs(static_cast<double>(c.Fpr) - static_cast<double>(c.phi)) <= f * dd * dd * dd;
      if (!ok_any || !ok_pr) ++r.applicable_failed;
    }
  }
  if (x > 1) r.x_over_ln_x = static_cast<double>(x) / std::log(static_cast<double>(x));
  return r;
}

}  // namespace dlc
