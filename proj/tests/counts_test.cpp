#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "dlcycles/counts.hpp"

using namespace dlc;

namespace {

// Residue-level condition test that uses only mod_pow and gcd, never the tables.
bool holds(Condition c, u64 x, u64 p) {
  const u64 n = p - 1;
  bool pr = true;
  for (const auto& f : factor(n).factors)
    if (mod_pow(x, n / f.prime, p) == 1) pr = false;
  const bool rp = std::gcd(x, n) == 1;
  switch (c) {
    case Condition::Any: return true;
    case Condition::PR: return pr;
    case Condition::RP: return rp;
    case Condition::RPPR: return pr && rp;
  }
  return false;
}

struct Brute {
  Grid fp{}, tc_triv{}, tc_non{}, ha_triv{}, ha_non{};
};

Brute brute(u64 p) {
  const u64 n = p - 1;
  std::vector<std::array<bool, 4>> c(p);
  for (u64 x = 1; x < p; ++x)
    for (auto k : kConditions) c[x][int(k)] = holds(k, x, p);
  Brute b;
  auto bump = [&](Grid& grid, u64 r, u64 col) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (c[r][i] && c[col][j]) ++grid[i][j];
  };
  for (u64 g = 1; g <= n; ++g)
    for (u64 h = 1; h <= n; ++h) {
      const u64 a = mod_pow(g, h, p);
      if (a == h) bump(b.fp, g, h);
      if (mod_pow(g, a, p) == h) bump(a == h ? b.tc_triv : b.tc_non, g, h);
    }
  for (u64 h = 1; h <= n; ++h)
    for (u64 a = 1; a <= n; ++a)
      if (mod_pow(h, h, p) == mod_pow(a, a, p)) bump(h == a ? b.ha_triv : b.ha_non, h, a);
  return b;
}

std::vector<u64> primes_between(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 p : sieve_primes(hi))
    if (p >= lo) out.push_back(p);
  return out;
}

}  // namespace

TEST(CountFp, MatchesDoubleLoop) {
  for (u64 p : primes_between(5, 250)) {
    PrimeContext ctx(p);
    auto b = brute(p);
    auto fp = count_fp(ctx);
    ASSERT_EQ(fp.total(), b.fp) << p;
    auto ha = count_ha(ctx);
    ASSERT_EQ(ha.trivial, b.ha_triv) << p;
    ASSERT_EQ(ha.nontrivial, b.ha_non) << p;
    for (auto m : {TcMethod::Direct, TcMethod::Smith}) {
      auto tc = count_tc(ctx, m);
      ASSERT_EQ(tc.matrix.trivial, b.tc_triv) << p;
      ASSERT_EQ(tc.matrix.nontrivial, b.tc_non) << p;
    }
  }
}

TEST(CountFp, FiveByHand) {
  PrimeContext ctx(5);
  EXPECT_EQ(count_fp(ctx).cell(Condition::Any, Condition::Any), 2u);
  auto ha = count_ha(ctx);
  EXPECT_EQ(at(ha.nontrivial, Condition::Any, Condition::Any), 2u);
  EXPECT_EQ(at(ha.trivial, Condition::Any, Condition::Any), 4u);
  auto tc = count_tc(ctx, TcMethod::Direct);
  EXPECT_EQ(at(tc.matrix.nontrivial, Condition::Any, Condition::Any), 2u);
  EXPECT_EQ(at(tc.matrix.trivial, Condition::Any, Condition::Any), 2u);
}

TEST(Spectrum, SevenAndEleven) {
  PrimeContext ctx(7);
  auto s = count_T_spectrum(ctx);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(spectrum_at(s, 1), 2u);
  EXPECT_EQ(spectrum_at(s, 2), 2u);
  EXPECT_EQ(spectrum_at(s, 3), 0u);
  EXPECT_EQ(spectrum_at(s, 6), 0u);
  EXPECT_EQ(E_of(s), 2u);
  EXPECT_EQ(E_p(PrimeContext(11)), 2u);
}

TEST(Spectrum, BruteForcePowerResidues) {
  for (u64 p : primes_between(5, 400)) {
    PrimeContext ctx(p);
    const u64 n = p - 1;
    std::map<u64, u64> t;
    for (u64 h = 1; h <= n; ++h) {
      const u64 e = std::gcd(h, n);
      if (mod_pow(h, n / e, p) == 1) ++t[e];  // Euler criterion for e-th powers
    }
    u64 sum = 0;
    for (const auto& s : count_T_spectrum(ctx)) {
      ASSERT_EQ(s.t_e, t[s.e]) << p << " e=" << s.e;
      ASSERT_EQ(s.t_e, count_T_e_via_j(ctx, n / s.e)) << p << " e=" << s.e;
      sum += s.contribution;
    }
    ASSERT_EQ(sum, count_fp(ctx).cell(Condition::Any, Condition::Any));
    ASSERT_EQ(spectrum_at(count_T_spectrum(ctx), 1), ctx.phi_pm1());
  }
}

TEST(Spectrum, ViaJExamples) {
  PrimeContext ctx(7);
  EXPECT_EQ(count_T_e_via_j(ctx, 2), 0u);
  EXPECT_EQ(count_T_e_via_j(ctx, 6), 2u);
  EXPECT_THROW(count_T_e_via_j(ctx, 4), DomainError);
}

TEST(Smith, RecoverExamples) {
  PrimeContext ctx(5);
  auto s = recover_g(ctx, 1, 4);
  EXPECT_EQ(s.d, 1u);
  EXPECT_EQ(s.g_list, std::vector<u64>{4});
  EXPECT_EQ(recover_g(ctx, 3, 3).g_list, std::vector<u64>{2});
  EXPECT_THROW(recover_g(ctx, 1, 2), NotACollision);
}

TEST(Smith, RecoverMatchesEnumeration) {
  for (u64 p : primes_between(5, 200)) {
    PrimeContext ctx(p);
    const u64 n = p - 1;
    for (u64 h = 1; h <= n; ++h)
      for (u64 a = 1; a <= n; ++a) {
        const u64 d = std::gcd(std::gcd(h, a), n);
        if (mod_pow(h, h / d, p) != mod_pow(a, a / d, p)) continue;
        auto s = recover_g(ctx, h, a);
        std::vector<u64> want;
        for (u64 g = 1; g <= n; ++g)
          if (mod_pow(g, h, p) == a && mod_pow(g, a, p) == h) want.push_back(g);
        ASSERT_EQ(s.g_list, want) << p << " " << h << " " << a;
        ASSERT_TRUE(s.g_list.empty() || s.g_list.size() == d);
        if (std::gcd(h, n) == 1) {
          ASSERT_EQ(s.g_list.size(), 1u);
        }
        ASSERT_EQ((s.u0 * h + s.v0 * a) % n, d % n);
      }
  }
}

TEST(Smith, HaSmithMatchesBruteForce) {
  for (u64 p : {5ULL, 7ULL, 13ULL, 31ULL, 37ULL, 61ULL}) {
    PrimeContext ctx(p);
    const u64 n = p - 1;
    for (u64 d : ctx.pm1().divisors) {
      Grid triv{}, non{};
      for (u64 h = 1; h <= n; ++h)
        for (u64 a = 1; a <= n; ++a) {
          if (std::gcd(std::gcd(h, a), n) != d) continue;
          if (mod_pow(h, h / d, p) != mod_pow(a, a / d, p)) continue;
          Grid& g = h == a ? triv : non;
          for (auto r : kConditions)
            for (auto c : kConditions)
              if (holds(r, h, p) && holds(c, a, p)) ++g[int(r)][int(c)];
        }
      auto m = count_ha(ctx, d);
      ASSERT_EQ(m.trivial, triv) << p << " d=" << d;
      ASSERT_EQ(m.nontrivial, non) << p << " d=" << d;
    }
  }
}

TEST(TcMethods, AgreeWithOrdCells) {
  for (u64 p : primes_between(5, 400)) {
    PrimeContext ctx(p);
    auto direct = count_tc(ctx, TcMethod::Direct);
    auto smith = count_tc(ctx, TcMethod::Smith);
    ASSERT_EQ(direct.matrix, smith.matrix) << p;
    ASSERT_EQ(direct.ord, smith.ord) << p;
  }
}

TEST(TcMethods, ThreadCountDoesNotChangeResult) {
  PrimeContext ctx(1009);
  CountOptions one{1}, four{4};
  EXPECT_EQ(count_tc(ctx, TcMethod::Smith, one).matrix, count_tc(ctx, TcMethod::Smith, four).matrix);
  EXPECT_EQ(count_fp(ctx, one), count_fp(ctx, four));
}

TEST(Buckets, CapIsEnforced) {
  PrimeContext ctx(101);
  CountOptions tiny{1, 1};
  EXPECT_THROW(count_ha(ctx, std::nullopt, tiny), BucketOverflow);
  EXPECT_THROW(count_tc(ctx, TcMethod::Smith, tiny), BucketOverflow);
}

TEST(GCounts, Examples) {
  auto g5 = count_G(PrimeContext(5));
  EXPECT_EQ(g5.g_any_h_any, 2u);
  EXPECT_EQ(g5.g_pr_h_any, 1u);
  EXPECT_EQ(count_G(PrimeContext(7)).g_any_h_any, 4u);
}

TEST(GCounts, BruteForce) {
  for (u64 p : primes_between(5, 300)) {
    PrimeContext ctx(p);
    u64 any = 0, pr = 0;
    for (u64 h = 1; h < p; ++h) {
      bool found = false, found_pr = false;
      for (u64 g = 1; g < p; ++g)
        if (mod_pow(g, h, p) == h) {
          found = true;
          if (holds(Condition::PR, g, p)) found_pr = true;
        }
      any += found;
      pr += found_pr;
    }
    auto G = count_G(ctx);
    ASSERT_EQ(G.g_any_h_any, any) << p;
    ASSERT_EQ(G.g_pr_h_any, pr) << p;
  }
}

TEST(Structure, MatrixInvariants) {
  for (u64 p : primes_between(5, 600)) {
    PrimeContext ctx(p);
    auto fp = count_fp(ctx).total();
    auto ha = count_ha(ctx);
    auto tc = count_tc(ctx).matrix.total();
    for (const Grid* g : {&fp, &tc}) {
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          ASSERT_LE((*g)[3][c], (*g)[1][c]);
          ASSERT_LE((*g)[3][c], (*g)[2][c]);
          ASSERT_LE((*g)[2][c], (*g)[0][c]);
          ASSERT_LE((*g)[r][3], (*g)[r][1]);
        }
    }
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) ASSERT_EQ(ha.nontrivial[r][c], ha.nontrivial[c][r]);
    ASSERT_EQ(at(fp, Condition::Any, Condition::RP), ctx.phi_pm1());
    ASSERT_EQ(at(ha.trivial, Condition::Any, Condition::Any), p - 1);
  }
}
