#ifndef HARDY_OPTIMIZE_HPP
#define HARDY_OPTIMIZE_HPP

#include <cmath>

namespace hardy {

struct OptimumPoint {
  double x;
  double value;
};

// Golden-section maximization of a unimodal function on [lo, hi]. The
// bracket shrinks until hi - lo < x_tol; one function value is reused per
// iteration.
template <class F>
OptimumPoint golden_section_maximize(F&& f, double lo, double hi, double x_tol) {
  constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > x_tol) {
    if (fc > fd) {
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
  const double mid = 0.5 * (lo + hi);
  return OptimumPoint{mid, f(mid)};
}

}  // namespace hardy

#endif  // HARDY_OPTIMIZE_HPP
