#pragma once

#include <vector>

#include "exciton/chain.hpp"
#include "exciton/dynamics.hpp"

namespace exciton {

/// One experiment setup: chain, motion, channels, integrator and the static
/// baseline the enhancement is measured against.
struct SweepConfig {
  ChainSpec chain;
  MotionProfile profile;
  VibronicCoupling vib;
  ChannelSpec channels;
  IntegratorConfig integrator;
  BaselineKind reference = BaselineKind::JMax;
  int workers = 0;
};

struct EnhancementPoint {
  double param;         ///< swept parameter (omega, omega0, a, ...)
  double p_sink;
  double p_static_ref;
  double delta;         ///< p_sink - p_static_ref
};

/// Asymptotic sink population of the static reference chain for the config's
/// baseline kind, with the same channel rates (including dephasing). Uses the
/// closed form for the uniform-dissipation dimer without dephasing, numeric
/// propagation otherwise.
double static_reference(const SweepConfig& cfg);

double asymptotic_sink(const SweepConfig& cfg);

/// One propagation per frequency (omega for pairwise motion, omega0 for
/// normal modes); the reference baseline is computed once.
std::vector<EnhancementPoint> frequency_sweep(const SweepConfig& cfg,
                                              const std::vector<double>& omega_grid);

struct PhaseEnsemble {
  std::vector<double> phases;                 ///< 2 pi k / n_phases
  std::vector<double> omegas;
  std::vector<std::vector<double>> per_phase; ///< [phase][omega] sink population
  std::vector<double> mean;
  std::vector<double> env_min;
  std::vector<double> env_max;
};

/// Deterministic uniform grid of initial phases; per-phase frequency sweeps
/// aggregated into envelope and mean curves.
PhaseEnsemble phase_ensemble(const SweepConfig& cfg,
                             const std::vector<double>& omega_grid,
                             int n_phases);

struct OptimalFrequency {
  double omega_opt;
  double p_sink;
  double delta_opt;
};

/// Coarse-grid maximum refined by golden-section search to relative width
/// 1e-3. The coarse maximum must be interior to the grid.
OptimalFrequency optimal_frequency(const SweepConfig& cfg,
                                   const std::vector<double>& coarse_grid);

/// Dephasing rate at which the enhancement over the static reference (with
/// the same dephasing) crosses zero, located by bisection to abs tol 1e-4.
double critical_dephasing_rate(const SweepConfig& cfg, double omega,
                               double gamma_max = 10.0, double tol = 1e-4);

struct PulsePoint {
  double v;
  double sigma;
  double p_sink;
  double baseline;
  double delta;
};

/// Delta(v, sigma) surface for a Gaussian pulse against the uniformly
/// coupled static chain at the pulse-peak coupling j0 / (1 - A)^3.
std::vector<PulsePoint> pulse_grid(const SweepConfig& cfg,
                                   const std::vector<double>& v_grid,
                                   const std::vector<double>& sigma_grid);

/// Golden-section coordinate descent (alternating v and sigma) from a grid
/// point; brackets shrink by half each round.
PulsePoint refine_pulse_optimum(const SweepConfig& cfg, const PulsePoint& start,
                                double v_bracket, double sigma_bracket,
                                int rounds = 3);

/// Uniform grid helper: min, min+step, ... while <= max + step/2.
std::vector<double> linear_grid(double min, double max, double step);

}  // namespace exciton
