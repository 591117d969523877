#pragma once

// Per-prime substrate: factored p-1, smallest primitive root, and (for
// desk-scale p) the discrete log / exp tables plus a 2-bit class per residue.

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "dlcycles/arith.hpp"
#include "dlcycles/errors.hpp"

namespace dlc {

/// Side conditions. The numeric value doubles as a bit mask:
/// bit 0 = PR (primitive root), bit 1 = RP (coprime to p-1).
enum class Condition : std::uint8_t { Any = 0, PR = 1, RP = 2, RPPR = 3 };

inline constexpr std::array<Condition, 4> kConditions = {Condition::Any, Condition::PR,
                                                         Condition::RP, Condition::RPPR};

constexpr std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::Any: return "ANY";
    case Condition::PR: return "PR";
    case Condition::RP: return "RP";
    case Condition::RPPR: return "RPPR";
  }
  return "?";
}

/// Residue class mask c satisfies condition k iff every bit of k is set in c.
constexpr bool satisfies(unsigned cls, Condition k) {
  const unsigned m = static_cast<unsigned>(k);
  return (cls & m) == m;
}

struct ResidueInfo {
  u64 gcd_with_pm1;  // gcd(x, p-1)
  u64 order;         // ord_p(x)
};

enum class Tabulate { Auto, Always, Never };

class PrimeContext {
 public:
  /// Tables are built automatically below this bound (4 bytes * 3 tables * p).
  static constexpr u64 kAutoTableLimit = u64{1} << 23;

  explicit PrimeContext(u64 p, Tabulate mode = Tabulate::Auto) : p_(p) {
    if (p < 5) throw DomainError("p must be a prime >= 5, got " + std::to_string(p));
    if (!is_prime(p)) throw NotPrime(p);
    n_ = p - 1;
    pm1_ = factor(n_);
    phi_ = phi(pm1_);
    tau_ = num_divisors(pm1_);
    root_ = find_smallest_root();
    const bool build = mode == Tabulate::Always || (mode == Tabulate::Auto && p < kAutoTableLimit);
    if (build) {
      if (p >= (u64{1} << 32)) throw DomainError("tables need p < 2^32");
      build_tables();
    }
  }

  u64 p() const { return p_; }
  u64 n() const { return n_; }  // p - 1
  const FactoredInt& pm1() const { return pm1_; }
  u64 phi_pm1() const { return phi_; }
  u64 dtau_pm1() const { return tau_; }
  u64 base_root() const { return root_; }
  bool tabulated() const { return !log_.empty(); }

  /// log_b x for x in [1, p-1], in [0, p-2].
  u64 dlog(u64 x) const {
    require_tables();
    return log_[x];
  }
  /// b^k for k in [0, p-2].
  u64 dexp(u64 k) const {
    require_tables();
    return exp_[k];
  }
  /// gcd(h, p-1) for h in [0, p-1].
  u64 gcd_pm1(u64 h) const { return tabulated() ? gcd_[h] : std::gcd(h, n_); }
  /// 2-bit class mask of x in [1, p-1].
  unsigned cls(u64 x) const {
    require_tables();
    return cls_[x];
  }

  u64 mod_order(u64 x) const {
    x %= p_;
    if (x == 0) throw DomainError("order of 0 is undefined");
    if (tabulated()) return n_ / gcd_[log_[x]];
    u64 ord = n_;
    for (const auto& [q, e] : pm1_.factors) {
      for (unsigned i = 0; i < e; ++i) {
        if (mod_pow(x, ord / q, p_) != 1) break;
        ord /= q;
      }
    }
    return ord;
  }

  bool is_primitive_root(u64 x) const { return mod_order(x) == n_; }

  ResidueInfo class_of(u64 x) const { return {gcd_pm1(x % p_), mod_order(x)}; }

  const std::vector<std::uint32_t>& log_table() const { return log_; }
  const std::vector<std::uint32_t>& exp_table() const { return exp_; }
  const std::vector<std::uint32_t>& gcd_table() const { return gcd_; }
  const std::vector<std::uint8_t>& class_table() const { return cls_; }

 private:
  void require_tables() const {
    if (!tabulated()) {
      throw DomainError("p = " + std::to_string(p_) + " was built without residue tables");
    }
  }

  u64 find_smallest_root() const {
    for (u64 g = 2; g < p_; ++g) {
      bool ok = true;
      for (const auto& f : pm1_.factors) {
        if (mod_pow(g, n_ / f.prime, p_) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) return g;
    }
    return 1;  // unreachable for prime p >= 5
  }

  void build_tables() {
    log_.assign(p_, 0);
    exp_.assign(n_, 0);
    u64 x = 1;
    for (u64 k = 0; k < n_; ++k) {
      exp_[k] = static_cast<std::uint32_t>(x);
      log_[x] = static_cast<std::uint32_t>(k);
      x = x * root_ % p_;
    }
    // gcd(h, n) = largest divisor of n dividing h; ascending overwrite keeps the largest.
    gcd_.assign(p_, 1);
    for (u64 d : pm1_.divisors) {
      for (u64 h = 0; h <= n_; h += d) gcd_[h] = static_cast<std::uint32_t>(d);
    }
    cls_.assign(p_, 0);
    for (u64 v = 1; v < p_; ++v) {
      unsigned c = 0;
      if (gcd_[log_[v]] == 1) c |= 1u;
      if (gcd_[v] == 1) c |= 2u;
      cls_[v] = static_cast<std::uint8_t>(c);
    }
  }

  u64 p_ = 0;
  u64 n_ = 0;
  FactoredInt pm1_;
  u64 phi_ = 0;
  u64 tau_ = 0;
  u64 root_ = 0;
  std::vector<std::uint32_t> log_, exp_, gcd_;
  std::vector<std::uint8_t> cls_;
};

}  // namespace dlc
