#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "exciton/errors.hpp"

namespace exciton::ode {

struct StepControl {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double first_step = 1e-4;
  double safety = 0.9;
  double min_factor = 0.2;
  double max_factor = 5.0;
};

namespace detail {

inline double mag(double x) { return std::abs(x); }
inline double mag(const std::complex<double>& z) { return std::abs(z); }

}  // namespace detail

/// Integrates dy/dt = rhs(t, y) with the Dormand-Prince 5(4) embedded pair.
///
/// State is a flat std::vector of double or complex<double>. `rhs(t, y, dydt)`
/// writes the derivative; `on_step(t, y)` runs after every accepted step and
/// returns false to stop early. Returns the time reached.
template <class State, class Rhs, class OnStep>
double integrate(Rhs&& rhs, State& y, double t0, double t_end,
                 const StepControl& ctrl, OnStep&& on_step) {
  // Dormand-Prince tableau
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // b - bhat, for the embedded 4th-order error estimate
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;

  const std::size_t n = y.size();
  State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);

  double t = t0;
  double dt = std::min(ctrl.first_step, t_end - t0);
  if (dt <= 0) return t;

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  rhs(t, y, k1);  // FSAL: k1 of the next step reuses k7
  while (t < t_end) {
    const double scale = std::max(1.0, std::abs(t));
    const double remaining = t_end - t;
    if (remaining <= 32.0 * kEps * scale) break;  // within roundoff of t_end
    if (dt < 16.0 * kEps * scale)
      throw StepSizeUnderflow("step size underflow at t = " + std::to_string(t));
    const bool final_step = dt >= remaining;
    const double h = final_step ? remaining : dt;

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a21 * k1[i]);
    rhs(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                           a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                            b5 * k5[i] + b6 * k6[i]);
    rhs(t + h, ynew, k7);

    // weighted RMS error norm (Hairer-Norsett-Wanner)
    double err2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = detail::mag(h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                        e5 * k5[i] + e6 * k6[i] + e7 * k7[i]));
      const double sc = ctrl.abs_tol +
                        ctrl.rel_tol * std::max(detail::mag(y[i]), detail::mag(ynew[i]));
      err2 += (e / sc) * (e / sc);
    }
    const double err = std::sqrt(err2 / static_cast<double>(n));

    if (err <= 1.0) {
      t = final_step ? t_end : t + h;
      y.swap(ynew);
      k1.swap(k7);
      if (!on_step(t, y)) return t;
    }
    double factor = ctrl.max_factor;
    if (err > 0.0)
      factor = ctrl.safety * std::pow(err, -0.2);
    dt = h * std::clamp(factor, ctrl.min_factor, ctrl.max_factor);
  }
  return t;
}

}  // namespace exciton::ode
