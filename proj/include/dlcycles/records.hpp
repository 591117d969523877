#pragma once

// Everything the averages and sweeps need about one prime, in one record.

#include <chrono>
#include <numeric>
#include <vector>

#include "dlcycles/counts.hpp"

namespace dlc {

inline constexpr int kRecordVersion = 1;

struct PrimeRecord {
  int version = kRecordVersion;
  u64 p = 0;
  Grid fp{};
  Grid ha_trivial{}, ha_nontrivial{};
  Grid tc_trivial{}, tc_nontrivial{};
  OrdCells ord{};
  std::vector<SpectrumEntry> spectrum;
  u64 E = 0;
  GCounts g{};
  double wall_seconds = 0;

  /// Equality of the exact content; wall time is ignored.
  bool same_counts(const PrimeRecord& o) const {
    return version == o.version && p == o.p && fp == o.fp && ha_trivial == o.ha_trivial &&
           ha_nontrivial == o.ha_nontrivial && tc_trivial == o.tc_trivial && tc_nontrivial == o.tc_nontrivial &&
           ord == o.ord && spectrum == o.spectrum && E == o.E && g == o.g;
  }
};

inline PrimeRecord compute_record(u64 p, const CountOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  PrimeContext ctx(p);
  PrimeRecord r;
  r.p = p;
  r.fp = count_fp(ctx, opt).total();
  const auto ha = count_ha(ctx, std::nullopt, opt);
  r.ha_trivial = ha.trivial;
  r.ha_nontrivial = ha.nontrivial;
  const auto tc = count_tc(ctx, TcMethod::Smith, opt);
  r.tc_trivial = tc.matrix.trivial;
  r.tc_nontrivial = tc.matrix.nontrivial;
  r.ord = tc.ord;
  r.spectrum = count_T_spectrum(ctx);
  r.E = E_of(r.spectrum);
  r.g = count_G(ctx);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Plain enumeration over residues with no tables and no log coordinates.
/// Works for every prime including 2 and 3 (which the rest of the library
/// rejects); used for the small-prime averaging conventions and as an oracle.
inline PrimeRecord brute_record(u64 p) {
  if (!is_prime(p)) throw NotPrime(p);
  const u64 n = p - 1;
  auto order = [&](u64 x) {
    u64 o = 1, y = x % p;
    while (y != 1) y = y * x % p, ++o;
    return o;
  };
  std::vector<unsigned> cls(p, 0);
  std::vector<u64> ord(p, 0);
  for (u64 x = 1; x <= n; ++x) {
    ord[x] = order(x);
    cls[x] = (ord[x] == n ? 1u : 0u) | (std::gcd(x, n) == 1 ? 2u : 0u);
  }
  auto bump = [&](Grid& grid, u64 r, u64 c) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (satisfies(cls[r], Condition(i)) && satisfies(cls[c], Condition(j))) ++grid[i][j];
  };
  PrimeRecord r;
  r.p = p;
  for (u64 g = 1; g <= n; ++g)
    for (u64 h = 1; h <= n; ++h) {
      const u64 a = mod_pow(g, h, p);
      if (a == h) bump(r.fp, g, h);
      if (mod_pow(g, a, p) != h) continue;
      const bool triv = a == h;
      bump(triv ? r.tc_trivial : r.tc_nontrivial, g, h);
      if (ord[g] == ord[h]) {
        (triv ? r.ord.h_any_trivial : r.ord.h_any_nontrivial)++;
        if (std::gcd(h, n) == 1) (triv ? r.ord.h_rp_trivial : r.ord.h_rp_nontrivial)++;
      }
    }
  for (u64 h = 1; h <= n; ++h)
    for (u64 a = 1; a <= n; ++a)
      if (mod_pow(h, h, p) == mod_pow(a, a, p)) bump(h == a ? r.ha_trivial : r.ha_nontrivial, h, a);
  for (u64 e = 1; e <= n; ++e) {
    if (n % e) continue;
    u64 t = 0;
    for (u64 h = 1; h <= n; ++h) {
      if (std::gcd(h, n) != e) continue;
      bool power = false;
      for (u64 y = 1; y <= n && !power; ++y) power = mod_pow(y, e, p) == h;
      t += power;
    }
    r.spectrum.push_back({e, t, e * t});
    if (t > 0) r.E = e;
  }
  for (u64 h = 1; h <= n; ++h) {
    bool any = false, pr = false;
    for (u64 g = 1; g <= n; ++g)
      if (mod_pow(g, h, p) == h) {
        any = true;
        pr = pr || ord[g] == n;
      }
    r.g.g_any_h_any += any;
    r.g.g_pr_h_any += pr;
  }
  return r;
}

}  // namespace dlc
