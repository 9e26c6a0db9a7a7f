#ifndef QTRANS_GOLDEN_SECTION_HPP
#define QTRANS_GOLDEN_SECTION_HPP

#include <cmath>

namespace qtrans {

struct LineOptimum {
  double x;
  double value;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi]; stops
/// once the bracket is narrower than tol.
template <typename F>
LineOptimum golden_section_maximize(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
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
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

template <typename F>
LineOptimum golden_section_minimize(F&& f, double lo, double hi, double tol) {
  auto r = golden_section_maximize([&f](double x) { return -f(x); }, lo, hi, tol);
  return {r.x, -r.value};
}

}  // namespace qtrans

#endif  // QTRANS_GOLDEN_SECTION_HPP
