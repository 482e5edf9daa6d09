#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace phi4::quad {

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adapt(F& f, double a, double fa, double b, double fb, double m, double fm,
             double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  // keep the per-half target above the roundoff floor or the recursion never ends
  const double half = std::max(0.5 * tol, 1e-16);
  return adapt(f, a, fa, m, fm, lm, flm, left, half, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, half, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with Richardson correction. tol is an absolute target,
// clamped to what binary64 can deliver.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-13, int max_depth = 30) {
  tol = std::max(tol, 1e-15);
  if (!(a < b)) throw std::invalid_argument("adaptive_simpson: need a < b");
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = detail::simpson(a, fa, b, fb, fm);
  return detail::adapt(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace phi4::quad
