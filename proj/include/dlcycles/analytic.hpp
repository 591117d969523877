#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "dlcycles/errors.hpp"

namespace dlc {

namespace detail {

template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Offset logarithmic integral Li(x) = int_2^x dt / ln t, for x >= 2.
/// Substituting t = e^u gives the smooth integrand e^u / u on [ln 2, ln x].
inline double li(double x) {
  if (!(x >= 2.0)) throw DomainError("li: x must be >= 2");
  if (x == 2.0) return 0.0;
  const double a = std::log(2.0), b = std::log(x);
  auto f = [](double u) { return std::exp(u) / u; };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  // x / ln x is a lower bound on the size of the result; scale the absolute tolerance by it.
  const double tol = 1e-14 * std::max(1.0, x / b);
  return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 60);
}

/// Principal branch W0(x) for x >= 0 by Newton iteration on w e^w - x.
inline double lambert_w(double x) {
  if (!(x >= 0.0)) throw DomainError("lambert_w: x must be >= 0");
  if (x == 0.0) return 0.0;
  // log1p is a good start near 0; ln x - ln ln x for large x.
  double w = x < 3.0 ? std::log1p(x) : std::log(x) - std::log(std::log(x));
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double step = (w * ew - x) / (ew * (w + 1.0));
    w -= step;
    if (std::fabs(step) <= 1e-15 * std::max(1.0, std::fabs(w))) break;
  }
  return w;
}

}  // namespace dlc
