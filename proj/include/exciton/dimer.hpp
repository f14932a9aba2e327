#pragma once

#include <utility>

#include "exciton/errors.hpp"

namespace exciton {

/// Two-site chain with sinusoidally modulated coupling.
struct DimerParams {
  double j0 = 1.0;
  double a = 0.0;      ///< relative oscillation amplitude, 0 <= a < 1/2
  double omega = 1.0;
  double phi = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma_sink = 0.0;
};

void validate(const DimerParams& p);

/// Asymptotic sink population of the static dimer with equal site
/// dissipation: gamma_S J^2 / [(2 gamma + gamma_S)(gamma (gamma + gamma_S) + J^2)].
double static_sink_population(double J, double gamma, double gamma_sink);

/// Rabi phase integral of the modulated coupling over [0, t] by adaptive
/// quadrature.
double coupling_phase_integral(const DimerParams& p, double t);

/// Closed-form site populations, valid under the condition
/// gamma_1 = gamma_2 + gamma_sink (with equal site energies):
/// P1 = cos^2(phase) e^(-2 Gamma t), P2 = sin^2(phase) e^(-2 Gamma t).
std::pair<double, double> dimer_populations(const DimerParams& p, double t);

/// Sink population 2 gamma_S int_0^t P2 dt' under the same condition.
double analytic_sink_population(const DimerParams& p, double t);

enum class ExtremumKind { Max, Min };

/// Estimated frequencies of transfer-efficiency extrema:
/// maxima at 2 J_avg / (2m + 1), minima at J_avg / m. These follow the
/// quick-transfer-and-locking picture and are estimates, not ground truth.
double extremal_frequency(double a, ExtremumKind kind, int m, double j0 = 1.0);

}  // namespace exciton
