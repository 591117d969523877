#pragma once

// Exact per-prime identities between the count matrices, each reported as a
// named check rather than asserted, so drivers can print every outcome.

#include <set>
#include <string>
#include <vector>

#include "dlcycles/counts.hpp"

namespace dlc {

struct IdentityCheck {
  std::string id;
  u64 p = 0;
  bool holds = false;
  std::string detail;  // the two sides, when they differ
};

/// Checks stated as exact equalities that fail for actual primes. They are
/// still computed and reported; drivers treat their failure as expected.
inline const std::set<std::string>& known_false_identities() {
  static const std::set<std::string> ids = {"tc-ord-rp", "tc-ord-any"};
  return ids;
}

namespace detail {

inline IdentityCheck eq_check(std::string id, u64 p, u64 lhs, u64 rhs) {
  IdentityCheck c{std::move(id), p, lhs == rhs, {}};
  if (!c.holds) c.detail = std::to_string(lhs) + " != " + std::to_string(rhs);
  return c;
}

}  // namespace detail

struct IdentityOptions {
  CountOptions count;
  bool direct_oracle = true;  // also run the O(p^2) direct two-cycle count
  bool via_j = true;          // compare count_T_e_via_j with the spectrum
};

inline std::vector<IdentityCheck> identity_suite(const PrimeContext& ctx, const IdentityOptions& opt = {}) {
  using detail::eq_check;
  const u64 p = ctx.p(), n = ctx.n();
  std::vector<IdentityCheck> out;

  const Grid fp = count_fp(ctx, opt.count).total();
  const auto ha = count_ha(ctx, std::nullopt, opt.count);
  const TcResult tc = count_tc(ctx, TcMethod::Smith, opt.count);
  const auto spectrum = count_T_spectrum(ctx);
  constexpr auto A = Condition::Any, PR = Condition::PR, RP = Condition::RP, RPPR = Condition::RPPR;

  if (opt.direct_oracle) {
    const TcResult direct = count_tc(ctx, TcMethod::Direct, opt.count);
    IdentityCheck c{"tc-direct-smith", p, direct.matrix.trivial == tc.matrix.trivial &&
                                              direct.matrix.nontrivial == tc.matrix.nontrivial &&
                                              direct.ord == tc.ord, {}};
    out.push_back(c);
  }

  // FP chain
  const u64 chain = at(fp, PR, RPPR);
  bool chain_ok = true;
  for (auto [r, c] : {std::pair{PR, RP}, {PR, PR}, {A, RPPR}, {A, PR}}) chain_ok = chain_ok && at(fp, r, c) == chain;
  out.push_back({"fp-chain", p, chain_ok, chain_ok ? "" : "cells differ"});
  out.push_back(eq_check("fp-any-rp", p, at(fp, A, RP), ctx.phi_pm1()));
  u64 weighted = 0;
  for (const auto& s : spectrum) weighted += s.contribution;
  out.push_back(eq_check("fp-spectrum", p, at(fp, A, A), weighted));

  bool sym = true;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) sym = sym && ha.nontrivial[r][c] == ha.nontrivial[c][r] && ha.trivial[r][c] == ha.trivial[c][r];
  out.push_back({"ha-symmetry", p, sym, sym ? "" : "not symmetric"});

  // Two-cycle / collision identities, on the nontrivial parts and on the totals.
  for (int part = 0; part < 2; ++part) {
    const Grid T = part ? tc.matrix.total() : tc.matrix.nontrivial;
    const Grid C = part ? ha.total() : ha.nontrivial;
    const std::string sfx = part ? "" : "-nontrivial";
    out.push_back(eq_check("tc-any-rp" + sfx, p, at(T, A, RP), at(C, RP, A)));
    out.push_back(eq_check("tc-pr-rp" + sfx, p, at(T, PR, RP), at(C, RP, PR)));
    out.push_back(eq_check("tc-pr-rppr" + sfx, p, at(T, PR, RPPR), at(T, A, RPPR)));
    for (auto c : kConditions)
      out.push_back(eq_check("tc-rppr-col-" + std::string(to_string(c)) + sfx, p, at(T, A, RPPR), at(C, RPPR, c)));
  }
  out.push_back(eq_check("tc-ord-rp", p, tc.ord.h_rp(), at(ha.total(), RP, RP)));
  out.push_back(eq_check("tc-ord-any", p, tc.ord.h_any(), at(ha.total(), A, RP)));

  // T(e,p) = 0 for e = (p-1)/k once 2 k^k <= p
  bool vanish = true;
  std::string where;
  auto small_k = [p](u64 k) {
    u64 v = 2;
    for (u64 i = 0; i < k; ++i)
      if ((v *= k) > p) return false;
    return true;
  };
  for (u64 k = 1; small_k(k); ++k) {
    if (n % k == 0 && spectrum_at(spectrum, n / k) != 0) vanish = false, where = "k=" + std::to_string(k);
  }
  out.push_back({"T-vanish", p, vanish, where});
  out.push_back({"E-positive", p, E_of(spectrum) >= 1, {}});

  if (opt.via_j) {
    bool ok = true;
    for (u64 k : ctx.pm1().divisors)
      if (count_T_e_via_j(ctx, k) != spectrum_at(spectrum, n / k)) ok = false, where = "k=" + std::to_string(k);
    out.push_back({"T-via-j", p, ok, ok ? "" : where});
  }

  if (p >= 11 && is_prime(n / 2))
    out.push_back(eq_check("sophie-germain-identity", p, at(fp, A, A),
                           spectrum_at(spectrum, 1) + 2 * spectrum_at(spectrum, 2)));
  return out;
}

}  // namespace dlc
