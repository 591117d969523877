#pragma once

// Exact counts of fixed points, two-cycles and collisions modulo p.
//
// Everything works in discrete-log coordinates: with x = log_b g, H = log_b h,
// A = log_b a and n = p - 1,
//   g^h == h          <=>  h x == H        (mod n)
//   g^h == a, g^a == h <=>  h x == A, a x == H
//   h^h == a^a        <=>  h H == a A

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlcycles/arith.hpp"
#include "dlcycles/errors.hpp"
#include "dlcycles/parallel.hpp"
#include "dlcycles/prime_context.hpp"

namespace dlc {

enum class Equation { FP, TC, HA, HA_SMITH };

constexpr std::string_view to_string(Equation e) {
  switch (e) {
    case Equation::FP: return "fp";
    case Equation::TC: return "tc";
    case Equation::HA: return "ha";
    case Equation::HA_SMITH: return "ha_smith";
  }
  return "?";
}

/// 4x4 grid indexed [row][col] by static_cast<int>(Condition), i.e. ANY, PR, RP, RPPR.
using Grid = std::array<std::array<u64, 4>, 4>;

inline Grid operator+(Grid a, const Grid& b) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a[r][c] += b[r][c];
  return a;
}

inline u64 at(const Grid& g, Condition r, Condition c) {
  return g[static_cast<int>(r)][static_cast<int>(c)];
}

/// Turns a histogram over (row class mask, col class mask) into condition cells.
inline Grid expand_classes(const Grid& hist) {
  Grid out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (unsigned cr = 0; cr < 4; ++cr)
        for (unsigned cc = 0; cc < 4; ++cc)
          if (satisfies(cr, Condition(r)) && satisfies(cc, Condition(c))) out[r][c] += hist[cr][cc];
  return out;
}

/// Rows are g and columns h for FP and TC; rows h and columns a for HA.
/// FP solutions are exactly the trivial two-cycles, so FP keeps its counts in `trivial`
/// and leaves `nontrivial` zero.
struct CountMatrix {
  Equation equation = Equation::FP;
  u64 p = 0;
  u64 smith_d = 0;  // HA_SMITH only
  Grid trivial{};
  Grid nontrivial{};

  Grid total() const { return trivial + nontrivial; }
  u64 cell(Condition r, Condition c) const { return at(total(), r, c); }
  bool operator==(const CountMatrix&) const = default;
};

struct SpectrumEntry {
  u64 e;
  u64 t_e;
  u64 contribution;  // e * t_e
  bool operator==(const SpectrumEntry&) const = default;
};

/// Two-cycles with ord g == ord h, split like the main matrix.
struct OrdCells {
  u64 h_rp_trivial = 0, h_rp_nontrivial = 0;
  u64 h_any_trivial = 0, h_any_nontrivial = 0;

  u64 h_rp() const { return h_rp_trivial + h_rp_nontrivial; }
  u64 h_any() const { return h_any_trivial + h_any_nontrivial; }
  bool operator==(const OrdCells&) const = default;
};

struct TcResult {
  CountMatrix matrix;
  OrdCells ord;
};

struct SmithSolution {
  u64 h = 0, a = 0;
  u64 d = 0;
  u64 u0 = 0, v0 = 0;
  u64 rhs = 0;
  std::vector<u64> g_list;
};

struct GCounts {
  u64 g_pr_h_any = 0;
  u64 g_any_h_any = 0;
  bool operator==(const GCounts&) const = default;
};

enum class TcMethod { Direct, Smith };

struct CountOptions {
  unsigned threads = 1;
  std::size_t bucket_cap = std::size_t{1} << 16;
};

namespace detail {

inline void require_tables(const PrimeContext& ctx) {
  if (!ctx.tabulated()) {
    throw DomainError("exhaustive counts need residue tables (p = " + std::to_string(ctx.p()) + ")");
  }
}

constexpr std::size_t kChunk = 1 << 14;

struct FpPartial {
  Grid hist{};
  u64 ord_rp = 0, ord_any = 0;
};

inline FpPartial fp_range(const PrimeContext& ctx, u64 lo, u64 hi) {
  const u64 n = ctx.n();
  const auto& log = ctx.log_table();
  const auto& exp = ctx.exp_table();
  const auto& gcd = ctx.gcd_table();
  const auto& cls = ctx.class_table();
  FpPartial out;
  for (u64 h = lo; h < hi; ++h) {
    const u64 H = log[h];
    const u64 e = gcd[h];
    if (H % e != 0) continue;
    const u64 m = n / e;
    const u64 x0 = mul_mod((H / e) % m, inv_mod((h / e) % m, m), m);
    const unsigned ch = cls[h];
    const u64 gh = gcd[H];
    for (u64 x = x0; x < n; x += m) {
      const u64 g = exp[x];
      ++out.hist[cls[g]][ch];
      if (gcd[x] == gh) {
        ++out.ord_any;
        if (ch & 2u) ++out.ord_rp;
      }
    }
  }
  return out;
}

inline FpPartial fp_all(const PrimeContext& ctx, unsigned threads) {
  return chunked_reduce(1, ctx.p(), kChunk, threads, FpPartial{},
                        [&](std::size_t b, std::size_t e) { return fp_range(ctx, b, e); },
                        [](FpPartial acc, const FpPartial& part) {
                          acc.hist = acc.hist + part.hist;
                          acc.ord_rp += part.ord_rp;
                          acc.ord_any += part.ord_any;
                          return acc;
                        });
}

}  // namespace detail

// -----------------------------------------------------------------------------
// Fixed points
// -----------------------------------------------------------------------------

inline CountMatrix count_fp(const PrimeContext& ctx, const CountOptions& opt = {}) {
  detail::require_tables(ctx);
  CountMatrix m;
  m.equation = Equation::FP;
  m.p = ctx.p();
  m.trivial = expand_classes(detail::fp_all(ctx, opt.threads).hist);
  return m;
}

/// T(e,p) for every divisor e of p-1, in increasing e.
inline std::vector<SpectrumEntry> count_T_spectrum(const PrimeContext& ctx) {
  detail::require_tables(ctx);
  const auto& divs = ctx.pm1().divisors;
  std::vector<u64> t(divs.size(), 0);
  const auto& log = ctx.log_table();
  const auto& gcd = ctx.gcd_table();
  for (u64 h = 1; h < ctx.p(); ++h) {
    const u64 e = gcd[h];
    if (log[h] % e == 0) {
      ++t[std::lower_bound(divs.begin(), divs.end(), e) - divs.begin()];
    }
  }
  std::vector<SpectrumEntry> out;
  out.reserve(divs.size());
  for (std::size_t i = 0; i < divs.size(); ++i) out.push_back({divs[i], t[i], divs[i] * t[i]});
  return out;
}

inline u64 E_of(const std::vector<SpectrumEntry>& spectrum) {
  u64 best = 1;
  for (const auto& s : spectrum)
    if (s.t_e > 0) best = std::max(best, s.e);
  return best;
}

inline u64 E_p(const PrimeContext& ctx) { return E_of(count_T_spectrum(ctx)); }

inline u64 spectrum_at(const std::vector<SpectrumEntry>& spectrum, u64 e) {
  for (const auto& s : spectrum)
    if (s.e == e) return s.t_e;
  return 0;
}

/// #{j in [1,k] : gcd(j,k) = 1, (-j)^k == k^k (mod p)}; equals T((p-1)/k, p).
inline u64 count_T_e_via_j(const PrimeContext& ctx, u64 k) {
  if (k == 0 || ctx.n() % k != 0) throw DomainError("k must divide p-1");
  const u64 p = ctx.p();
  const u64 target = mod_pow(k, k, p);
  u64 count = 0;
  for (u64 j = 1; j <= k; ++j) {
    if (std::gcd(j, k) != 1) continue;
    if (mod_pow(p - j, k, p) == target) ++count;
  }
  return count;
}

// -----------------------------------------------------------------------------
// Collisions
// -----------------------------------------------------------------------------

namespace detail {

/// Sorted (key, h) records for h ranging over the multiples of d in [1, p-1],
/// with key = (h/d) * log h mod n.
inline std::vector<std::pair<u64, u64>> smith_keys(const PrimeContext& ctx, u64 d) {
  const u64 n = ctx.n();
  const auto& log = ctx.log_table();
  std::vector<std::pair<u64, u64>> rec;
  rec.reserve(n / d);
  for (u64 h = d; h <= n; h += d) rec.emplace_back(mul_mod(h / d, log[h], n), h);
  std::sort(rec.begin(), rec.end());
  return rec;
}

template <class Visit>
void for_each_bucket(const std::vector<std::pair<u64, u64>>& rec, std::size_t cap, Visit&& visit) {
  std::size_t i = 0;
  while (i < rec.size()) {
    std::size_t j = i + 1;
    while (j < rec.size() && rec[j].first == rec[i].first) ++j;
    if (j - i > cap) {
      throw BucketOverflow("bucket for key " + std::to_string(rec[i].first) + " holds " +
                           std::to_string(j - i) + " residues (cap " + std::to_string(cap) + ")");
    }
    visit(i, j);
    i = j;
  }
}

inline CountMatrix ha_all(const PrimeContext& ctx, const CountOptions& opt) {
  const u64 n = ctx.n();
  const auto& log = ctx.log_table();
  const auto& cls = ctx.class_table();
  // key*4 + class, so one sort groups equal keys and keeps classes adjacent.
  std::vector<u64> rec;
  rec.reserve(n);
  for (u64 h = 1; h <= n; ++h) rec.push_back(mul_mod(h, log[h], n) * 4 + cls[h]);
  std::sort(rec.begin(), rec.end());
  Grid triv{}, non{};
  std::size_t i = 0;
  while (i < rec.size()) {
    const u64 key = rec[i] >> 2;
    std::array<u64, 4> cnt{};
    std::size_t j = i;
    while (j < rec.size() && (rec[j] >> 2) == key) ++cnt[rec[j++] & 3u];
    if (j - i > opt.bucket_cap) {
      throw BucketOverflow("bucket for key " + std::to_string(key) + " holds " +
                           std::to_string(j - i) + " residues (cap " +
                           std::to_string(opt.bucket_cap) + ")");
    }
    for (int a = 0; a < 4; ++a) {
      triv[a][a] += cnt[a];
      for (int b = 0; b < 4; ++b) non[a][b] += cnt[a] * cnt[b] - (a == b ? cnt[a] : 0);
    }
    i = j;
  }
  CountMatrix m;
  m.equation = Equation::HA;
  m.p = ctx.p();
  m.trivial = expand_classes(triv);
  m.nontrivial = expand_classes(non);
  return m;
}

inline CountMatrix ha_smith(const PrimeContext& ctx, u64 d, const CountOptions& opt) {
  const u64 n = ctx.n();
  const u64 nd = n / d;
  const auto& cls = ctx.class_table();
  const auto rec = smith_keys(ctx, d);
  Grid triv{}, non{};
  for_each_bucket(rec, opt.bucket_cap, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const u64 h = rec[i].second;
      if (std::gcd(h / d, nd) == 1) ++triv[cls[h]][cls[h]];
      for (std::size_t j = b; j < e; ++j) {
        if (i == j) continue;
        const u64 a = rec[j].second;
        if (std::gcd(std::gcd(h / d, a / d), nd) == 1) ++non[cls[h]][cls[a]];
      }
    }
  });
  CountMatrix m;
  m.equation = Equation::HA_SMITH;
  m.p = ctx.p();
  m.smith_d = d;
  m.trivial = expand_classes(triv);
  m.nontrivial = expand_classes(non);
  return m;
}

}  // namespace detail

/// Ordered pairs (h, a) with h^h == a^a (d = nullopt), or with h^(h/d) == a^(a/d)
/// and gcd(h, a, p-1) == d exactly.
inline CountMatrix count_ha(const PrimeContext& ctx, std::optional<u64> d = std::nullopt,
                            const CountOptions& opt = {}) {
  detail::require_tables(ctx);
  if (!d) return detail::ha_all(ctx, opt);
  if (*d == 0 || ctx.n() % *d != 0) throw DomainError("d must divide p-1");
  return detail::ha_smith(ctx, *d, opt);
}

// -----------------------------------------------------------------------------
// Smith reduction
// -----------------------------------------------------------------------------

/// All g with (g, h) a two-cycle through a. The log system h x == A, a x == H
/// collapses to d x == u0 A + v0 H; it is solvable exactly when d divides both
/// log h and log a, and then has d solutions spaced (p-1)/d apart.
inline SmithSolution recover_g(const PrimeContext& ctx, u64 h, u64 a) {
  detail::require_tables(ctx);
  const u64 p = ctx.p(), n = ctx.n();
  if (h == 0 || a == 0 || h > n || a > n) throw DomainError("h and a must lie in [1, p-1]");
  const auto bz = bezout_mod(h, a, n);
  const u64 d = bz.d;
  if (mod_pow(h, h / d, p) != mod_pow(a, a / d, p)) {
    throw NotACollision("h^(h/d) != a^(a/d) for h = " + std::to_string(h) +
                        ", a = " + std::to_string(a));
  }
  SmithSolution s;
  s.h = h;
  s.a = a;
  s.d = d;
  s.u0 = bz.u0;
  s.v0 = bz.v0;
  s.rhs = mul_mod(mod_pow(h, bz.v0, p), mod_pow(a, bz.u0, p), p);
  const u64 H = ctx.dlog(h), A = ctx.dlog(a);
  if (H % d != 0 || A % d != 0) return s;
  const u64 R = (mul_mod(bz.u0, A, n) + mul_mod(bz.v0, H, n)) % n;
  const u64 step = n / d;
  for (u64 x = (R / d) % step; x < n; x += step) {
    const u64 g = ctx.dexp(x);
    if (mod_pow(g, h, p) != a || mod_pow(g, a, p) != h) {
      throw std::logic_error("recovered g fails the two-cycle congruences");
    }
    s.g_list.push_back(g);
  }
  std::sort(s.g_list.begin(), s.g_list.end());
  return s;
}

// -----------------------------------------------------------------------------
// Two-cycles
// -----------------------------------------------------------------------------

namespace detail {

struct TcPartial {
  Grid triv{}, non{};
  OrdCells ord;
};

inline TcPartial tc_combine(TcPartial acc, const TcPartial& part) {
  acc.triv = acc.triv + part.triv;
  acc.non = acc.non + part.non;
  acc.ord.h_rp_trivial += part.ord.h_rp_trivial;
  acc.ord.h_rp_nontrivial += part.ord.h_rp_nontrivial;
  acc.ord.h_any_trivial += part.ord.h_any_trivial;
  acc.ord.h_any_nontrivial += part.ord.h_any_nontrivial;
  return acc;
}

// O(p^2): walk every g and h.
inline TcPartial tc_direct_range(const PrimeContext& ctx, u64 glo, u64 ghi) {
  const u64 n = ctx.n();
  const auto& log = ctx.log_table();
  const auto& exp = ctx.exp_table();
  const auto& gcd = ctx.gcd_table();
  const auto& cls = ctx.class_table();
  TcPartial out;
  for (u64 g = glo; g < ghi; ++g) {
    const u64 G = log[g];
    const unsigned cg = cls[g];
    const u64 gg = gcd[G];
    u64 x = 0;  // G*h mod n
    for (u64 h = 1; h <= n; ++h) {
      x += G;
      if (x >= n) x -= n;
      const u64 a = exp[x];
      if (exp[G * a % n] != h) continue;
      const unsigned ch = cls[h];
      const bool same_ord = gcd[log[h]] == gg;
      if (a == h) {
        ++out.triv[cg][ch];
        if (same_ord) {
          ++out.ord.h_any_trivial;
          if (ch & 2u) ++out.ord.h_rp_trivial;
        }
      } else {
        ++out.non[cg][ch];
        if (same_ord) {
          ++out.ord.h_any_nontrivial;
          if (ch & 2u) ++out.ord.h_rp_nontrivial;
        }
      }
    }
  }
  return out;
}

// Nontrivial two-cycles whose collision pair has exact gcd d.
inline TcPartial tc_smith_divisor(const PrimeContext& ctx, u64 d, std::size_t cap) {
  const u64 n = ctx.n();
  const u64 nd = n / d;
  const auto& log = ctx.log_table();
  const auto& exp = ctx.exp_table();
  const auto& gcd = ctx.gcd_table();
  const auto& cls = ctx.class_table();
  TcPartial out;
  const auto rec = smith_keys(ctx, d);
  for_each_bucket(rec, cap, [&](std::size_t b, std::size_t e) {
    if (e - b < 2) return;
    for (std::size_t i = b; i < e; ++i) {
      const u64 h = rec[i].second;
      const u64 H = log[h];
      if (H % d != 0) continue;
      for (std::size_t j = b; j < e; ++j) {
        if (i == j) continue;
        const u64 a = rec[j].second;
        const u64 A = log[a];
        if (A % d != 0) continue;
        if (std::gcd(std::gcd(h / d, a / d), nd) != 1) continue;
        const auto bz = bezout_mod(h, a, n);
        const u64 R = (mul_mod(bz.u0, A, n) + mul_mod(bz.v0, H, n)) % n;
        const unsigned ch = cls[h];
        const u64 gh = gcd[H];
        for (u64 x = (R / d) % nd; x < n; x += nd) {
          ++out.non[cls[exp[x]]][ch];
          if (gcd[x] == gh) {
            ++out.ord.h_any_nontrivial;
            if (ch & 2u) ++out.ord.h_rp_nontrivial;
          }
        }
      }
    }
  });
  return out;
}

}  // namespace detail

inline TcResult count_tc(const PrimeContext& ctx, TcMethod method = TcMethod::Smith,
                         const CountOptions& opt = {}) {
  detail::require_tables(ctx);
  detail::TcPartial acc;
  if (method == TcMethod::Direct) {
    acc = chunked_reduce(1, ctx.p(), 64, opt.threads, detail::TcPartial{},
                         [&](std::size_t b, std::size_t e) { return detail::tc_direct_range(ctx, b, e); },
                         detail::tc_combine);
  } else {
    const auto& divs = ctx.pm1().divisors;
    acc = chunked_reduce(0, divs.size(), 1, opt.threads, detail::TcPartial{},
                         [&](std::size_t b, std::size_t) {
                           return detail::tc_smith_divisor(ctx, divs[b], opt.bucket_cap);
                         },
                         detail::tc_combine);
    // Trivial two-cycles are the fixed points.
    const auto fp = detail::fp_all(ctx, opt.threads);
    acc.triv = fp.hist;
    acc.ord.h_any_trivial = fp.ord_any;
    acc.ord.h_rp_trivial = fp.ord_rp;
  }
  TcResult r;
  r.matrix.equation = Equation::TC;
  r.matrix.p = ctx.p();
  r.matrix.trivial = expand_classes(acc.triv);
  r.matrix.nontrivial = expand_classes(acc.non);
  r.ord = acc.ord;
  return r;
}

// -----------------------------------------------------------------------------
// G counts
// -----------------------------------------------------------------------------

/// g_any_h_any: h admitting some g with g^h == h, i.e. gcd(h, p-1) | log h.
/// g_pr_h_any: h admitting a primitive-root g, i.e. gcd(log h, p-1) == gcd(h, p-1).
inline GCounts count_G(const PrimeContext& ctx) {
  detail::require_tables(ctx);
  const auto& log = ctx.log_table();
  const auto& gcd = ctx.gcd_table();
  GCounts out;
  for (u64 h = 1; h < ctx.p(); ++h) {
    const u64 e = gcd[h];
    const u64 H = log[h];
    if (H % e == 0) ++out.g_any_h_any;
    if (gcd[H] == e) ++out.g_pr_h_any;
  }
  return out;
}

}  // namespace dlc
