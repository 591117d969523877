#include <gtest/gtest.h>

#include <boost/math/special_functions/zeta.hpp>

#include "dlcycles/analytic.hpp"
#include "dlcycles/constants.hpp"
#include "dlcycles/reference_tables.hpp"

using namespace dlc;
using R = boost::multiprecision::cpp_rational;

namespace {

constexpr u64 kCutoff = 10'000'000;

const std::vector<std::string>& all_names() {
  static const std::vector<std::string> names = {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "S", "A1Z3Z2",
                                                 "U",  "L",  "T1", "T2", "T3", "T4", "T5", "T6", "T7"};
  return names;
}

}  // namespace

TEST(EulerProduct, ArtinFamilyTable) {
  for (unsigned k = 1; k <= 7; ++k) {
    const auto r = euler_product({ConstantId::A, k}, kCutoff);
    EXPECT_NEAR(r.value, reference::kA[k - 1], 1e-6) << "A" << k;
    EXPECT_LT(r.tail_bound, 1e-6);
  }
}

TEST(EulerProduct, AZeroIsExactlyOne) {
  const auto r = euler_product("A0", 1000);
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.tail_bound, 0.0);
}

TEST(EulerProduct, NamedConstants) {
  EXPECT_NEAR(euler_product("S", kCutoff).value, 0.5759599689, 1e-6);
  EXPECT_NEAR(euler_product("A1Z3Z2", kCutoff).value, 0.2732730608, 1e-6);
  EXPECT_NEAR(euler_product("U", kCutoff).value, reference::kU, 5e-4);
  EXPECT_NEAR(euler_product("L", kCutoff).value, reference::kL, 5e-4);
  for (unsigned k = 1; k <= 7; ++k)
    EXPECT_NEAR(euler_product({ConstantId::T, k}, kCutoff).value, reference::kT[k - 1], 1e-4) << "T" << k;
}

TEST(EulerProduct, ZetaRatioOracle) {
  // prod (1 - 2p/(p^3-1)) = A_1 zeta(3)/zeta(2)
  const double a1 = euler_product("A1", kCutoff).value;
  const double z = a1 * boost::math::zeta(3.0) / boost::math::zeta(2.0);
  const auto r = euler_product("A1Z3Z2", kCutoff);
  EXPECT_NEAR(r.value, z, 2e-7);
}

TEST(EulerProduct, SigmaExcess) {
  EXPECT_NEAR(euler_product("T1", kCutoff).value - 1.5, reference::kSigmaExcessAverage, 1e-4);
}

TEST(EulerProduct, Monotone) {
  double prev = 1.0;
  for (unsigned k = 1; k <= 7; ++k) {
    const double a = euler_product({ConstantId::A, k}, 100'000).value;
    EXPECT_LT(a, prev);
    prev = a;
  }
  prev = 1e9;
  for (unsigned k = 1; k <= 7; ++k) {
    const double t = euler_product({ConstantId::T, k}, 100'000).value;
    EXPECT_LT(t, prev);
    EXPECT_GT(t, 1.0);
    prev = t;
  }
}

TEST(EulerProduct, TailBracketsAcrossCutoffs) {
  const u64 cutoffs[] = {100, 1000, 10'000, 100'000, 1'000'000};
  for (const auto& name : all_names()) {
    const auto best = euler_product(name, kCutoff);
    double prev_tail = 1e300;
    for (u64 N : cutoffs) {
      const auto r = euler_product(name, N);
      EXPECT_GE(r.tail_bound, 0.0);
      EXPECT_LE(r.tail_bound, prev_tail) << name << " N=" << N;
      EXPECT_LE(std::fabs(best.value - r.value), r.tail_bound) << name << " N=" << N;
      prev_tail = r.tail_bound;
    }
  }
}

TEST(EulerProduct, ThreadCountIsBitStable) {
  for (const auto& name : all_names()) {
    const auto a = euler_product(name, 2'000'000, 1);
    const auto b = euler_product(name, 2'000'000, 3);
    EXPECT_EQ(a.value, b.value) << name;
    EXPECT_EQ(a.tail_bound, b.tail_bound) << name;
  }
}

TEST(EulerProduct, Errors) {
  EXPECT_THROW(parse_constant("B2"), UnknownConstant);
  EXPECT_THROW(parse_constant("A"), UnknownConstant);
  EXPECT_THROW(parse_constant("Sx"), UnknownConstant);
  EXPECT_THROW(euler_product("T0", 1000), DomainError);
  EXPECT_THROW(euler_product("S", 99), DomainError);
  EXPECT_EQ(parse_constant("T3").k, 3u);
  EXPECT_EQ(parse_constant("A1Z3Z2").id, ConstantId::A1Z3Z2);
}

// ------------------------------------------------------------------- r(a, b)

namespace {

// The unsimplified constant from the lemma's proof, divided by A_2.
R r_ab_unsimplified(u64 a, u64 b) {
  const u64 g = std::gcd(a, b), l = a / g * b;
  R r = R(phi(l / g)) / (R(phi(l)) * l * l);
  for (const auto& f : factor(a * b).factors) {
    const R q = f.prime;
    r *= (q - 1) * (q * q * q - 2 * q + 1) / (q * (q * q * q - q * q - 2 * q + 1));
  }
  for (const auto& f : factor(a * b / (g * g)).factors) {
    const R q = f.prime;
    r *= q * (q * q - 1) / (q * q * q - 2 * q + 1);
  }
  return r;
}

}  // namespace

TEST(Rab, Examples) {
  EXPECT_EQ(r_ab(1, 1), R(1));
  const R r22 = r_ab(2, 2);
  const R base = R(1, 4);  // phi(1) / (phi(2) 2^2)
  EXPECT_GE(r22, base);
  EXPECT_LE(r22, base * R(413, 100));
  EXPECT_THROW(r_ab(0, 3), DomainError);
}

TEST(Rab, MatchesUnsimplifiedForm) {
  for (u64 a = 1; a <= 40; ++a)
    for (u64 b = 1; b <= 40; ++b) ASSERT_EQ(r_ab(a, b), r_ab_unsimplified(a, b)) << a << "," << b;
}

TEST(Rab, Bounds) {
  for (u64 a = 1; a <= 60; ++a)
    for (u64 b = 1; b <= 60; ++b) {
      const u64 g = std::gcd(a, b), l = a / g * b;
      const R base = R(phi(l / g)) / (R(phi(l)) * l * l);
      const R r = r_ab(a, b);
      ASSERT_GE(r, base) << a << "," << b;
      ASSERT_LE(r, base * R(413, 100)) << a << "," << b;
    }
}

TEST(Rab, DiagonalSumApproachesZetaRatio) {
  const double A2 = euler_product("A2", kCutoff).value;
  const double target = euler_product("A1Z3Z2", kCutoff).value;
  R partial = 0;
  double prev_gap = 1e9;
  for (u64 e = 1; e <= 3000; ++e) {
    partial += r_ab(e, e);
    if (e % 500 == 0) {
      const double gap = target - partial.convert_to<double>() * A2;
      EXPECT_GT(gap, 0.0) << e;
      EXPECT_LT(gap, prev_gap) << e;
      prev_gap = gap;
    }
  }
  EXPECT_LT(prev_gap, 1e-6);
}

TEST(Rab, PrimeSumOracle) {
  // sum over p <= x, a | p-1, b | p-1 of phi((p-1)/a) phi((p-1)/b) / (p-1)^2  ~  r(a,b) A_2 Li(x)
  const double x = 2e6;
  const double A2 = euler_product("A2", kCutoff).value;
  const auto primes = sieve_primes(static_cast<u64>(x));
  for (auto [a, b] : {std::pair<u64, u64>{1, 1}, {2, 2}, {2, 3}, {4, 6}}) {
    double s = 0;
    for (u64 p : primes) {
      const u64 n = p - 1;
      if (n == 0 || n % a || n % b) continue;
      s += static_cast<double>(phi(n / a)) * static_cast<double>(phi(n / b)) / (static_cast<double>(n) * n);
    }
    const double pred = r_ab(a, b).convert_to<double>() * A2 * li(x);
    EXPECT_NEAR(s / pred, 1.0, 0.01) << a << "," << b;
  }
}
