#pragma once

#include <cmath>
#include <utility>

namespace cknsym::detail {

/// Golden-section search for the minimum of a unimodal `fn` on [a, b], stopping
/// once the bracket is narrower than tol_abs + tol_rel * |midpoint|.
/// Returns (x, fn(x)).
template <typename Fn>
std::pair<double, double> golden_minimize(Fn&& fn, double a, double b, double tol_rel,
                                          double tol_abs = 0.0, int max_iterations = 400) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  for (int i = 0; i < max_iterations; ++i) {
    if (std::abs(b - a) <= tol_abs + tol_rel * std::abs(0.5 * (a + b))) break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace cknsym::detail
