#include "exciton/dimer.hpp"

#include <cmath>
#include <numbers>

#include "exciton/chain.hpp"
#include "exciton/quadrature.hpp"

namespace exciton {

namespace {

constexpr double kGammaConditionTol = 1e-12;

double coupling(const DimerParams& p, double t) {
  const double s = 1.0 - 2.0 * p.a * std::sin(p.omega * t + p.phi);
  return p.j0 / (s * s * s);
}

void require_gamma_condition(const DimerParams& p) {
  if (std::abs(p.gamma1 - (p.gamma2 + p.gamma_sink)) > kGammaConditionTol)
    throw GammaConditionViolated(
        "closed forms require gamma_1 = gamma_2 + gamma_sink");
}

int oscillation_panels(const DimerParams& p, double t) {
  if (p.a == 0.0 || p.omega == 0.0) return 8;
  const double periods = std::abs(t) * p.omega / (2.0 * std::numbers::pi);
  return static_cast<int>(std::min(4096.0, 8.0 + 4.0 * periods));
}

}  // namespace

void validate(const DimerParams& p) {
  if (p.a < 0.0 || p.a >= 0.5) throw DomainError("dimer amplitude must be in [0, 1/2)");
  if (p.gamma1 < 0.0 || p.gamma2 < 0.0 || p.gamma_sink < 0.0)
    throw DomainError("rates must be >= 0");
  if (!(p.j0 > 0.0)) throw DomainError("j0 must be > 0");
}

double static_sink_population(double J, double gamma, double gamma_sink) {
  if (gamma < 0.0 || gamma_sink < 0.0) throw DomainError("rates must be >= 0");
  if (2.0 * gamma + gamma_sink == 0.0)
    throw DomainError("static dimer asymptotics undefined for gamma = gamma_sink = 0");
  return gamma_sink * J * J /
         ((2.0 * gamma + gamma_sink) * (gamma * (gamma + gamma_sink) + J * J));
}

double coupling_phase_integral(const DimerParams& p, double t) {
  validate(p);
  return quad::integrate([&](double s) { return coupling(p, s); }, 0.0, t,
                         1e-10, oscillation_panels(p, t));
}

std::pair<double, double> dimer_populations(const DimerParams& p, double t) {
  validate(p);
  require_gamma_condition(p);
  const double phase = coupling_phase_integral(p, t);
  const double envelope = std::exp(-2.0 * p.gamma1 * t);
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  return {c * c * envelope, s * s * envelope};
}

double analytic_sink_population(const DimerParams& p, double t) {
  validate(p);
  require_gamma_condition(p);
  if (p.gamma_sink == 0.0 || t == 0.0) return 0.0;
  const auto p2 = [&](double s) { return dimer_populations(p, s).second; };
  return 2.0 * p.gamma_sink *
         quad::integrate(p2, 0.0, t, 1e-9, oscillation_panels(p, t));
}

double extremal_frequency(double a, ExtremumKind kind, int m, double j0) {
  const double j_avg = time_averaged_coupling(a, j0);
  if (kind == ExtremumKind::Max) {
    if (m < 0) throw DomainError("maximum order m must be >= 0");
    return 2.0 * j_avg / (2 * m + 1);
  }
  if (m < 1) throw DomainError("minimum order m must be >= 1");
  return j_avg / m;
}

}  // namespace exciton
