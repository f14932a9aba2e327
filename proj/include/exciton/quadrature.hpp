#pragma once

#include <cmath>
#include <cstdlib>
#include <utility>

namespace exciton::quad {

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adapt(F& f, double a, double fa, double b, double fb, double m, double fm,
             double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b].
///
/// `panels` pre-splits the interval; pass roughly one panel per oscillation
/// when the integrand is periodic so the error estimate cannot alias.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-10, int panels = 8) {
  if (a == b) return 0.0;
  if (panels < 1) panels = 1;
  const double h = (b - a) / panels;
  double total = 0.0;
  double x0 = a;
  double f0 = f(x0);
  for (int i = 0; i < panels; ++i) {
    const double x1 = (i + 1 == panels) ? b : a + (i + 1) * h;
    const double m = 0.5 * (x0 + x1);
    const double f1 = f(x1);
    const double fm = f(m);
    const double whole = detail::simpson(x0, x1, f0, fm, f1);
    total += detail::adapt(f, x0, f0, x1, f1, m, fm, whole, tol / panels, 50);
    x0 = x1;
    f0 = f1;
  }
  return total;
}

}  // namespace exciton::quad
