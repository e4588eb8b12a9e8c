#pragma once

#include <cmath>
#include <functional>

namespace cknsym_test {

inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Plain bisection on a sign change; independent of the library's Newton solver.
inline double bisect(const std::function<double(double)>& g, double lo, double hi, int iters = 200) {
  double glo = g(lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double gm = g(mid);
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace cknsym_test
