#pragma once

#include <cmath>
#include <utility>

namespace qotto {

struct GoldenSectionResult {
  double lo;
  double hi;
  double x;   // best interior point of the final interval
  double fx;
  int evaluations;
};

// Golden-section search for a maximum of f on [lo, hi], stopping once the
// interval is no wider than tol. Only the final interval is guaranteed to
// hold a local maximum; f need not be unimodal on the starting bracket.
template <typename F>
GoldenSectionResult golden_section_maximize(F&& f, double lo, double hi, double tol) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  int evaluations = 2;
  while (hi - lo > tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    ++evaluations;
  }
  return fc >= fd ? GoldenSectionResult{lo, hi, c, fc, evaluations}
                  : GoldenSectionResult{lo, hi, d, fd, evaluations};
}

// Shrinks [lo, hi] around a sign change of f until hi - lo <= tol.
// Requires !positive(f(lo)) and positive(f(hi)); returns the final bracket.
template <typename F>
std::pair<double, double> bisect_upward_crossing(F&& f, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

}  // namespace qotto
