#include "exciton/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "exciton/dimer.hpp"
#include "exciton/grid.hpp"

namespace exciton {

namespace {

IntegratorConfig lean(const IntegratorConfig& cfg) {
  IntegratorConfig c = cfg;
  c.record_trajectory = false;
  return c;
}

bool uniform_gamma(const ChannelSpec& ch, int n_sites) {
  if (ch.gamma.size() <= 1) return true;
  for (int i = 1; i < n_sites; ++i)
    if (ch.gamma[static_cast<std::size_t>(i)] != ch.gamma[0]) return false;
  return true;
}

MotionProfile with_phase_offset(const MotionProfile& profile, double offset) {
  MotionProfile out = profile;
  if (auto* pw = std::get_if<PairwiseSinusoid>(&out)) {
    for (double& p : pw->phases) p += offset;
    return out;
  }
  if (auto* nm = std::get_if<NormalMode>(&out)) {
    if (nm->mode_phases.empty())
      nm->mode_phases.assign(nm->mode_amplitudes.size(), offset);
    else
      for (double& p : nm->mode_phases) p += offset;
    return out;
  }
  throw NotApplicable("profile has no oscillation phase");
}

// Re-throws library errors with the failing grid point named, so a batch
// failure identifies its coordinates (CLI exit code 3 reports this message).
template <class F>
auto named_point(const char* key, double value, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(std::string(key) + " = " + std::to_string(value) + ": " +
                e.what());
  }
}

// Golden-section maximization to relative bracket width `rel`.
template <class F>
double golden_max(F&& f, double lo, double hi, double rel) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while ((b - a) > rel * std::max({std::abs(a), std::abs(b), 1e-12})) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> linear_grid(double min, double max, double step) {
  if (!(step > 0.0)) throw DomainError("grid step must be > 0");
  if (max < min) throw DomainError("grid max must be >= min");
  std::vector<double> g;
  const int n = static_cast<int>(std::floor((max - min) / step + 0.5)) + 1;
  g.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g.push_back(min + i * step);
  return g;
}

double static_reference(const SweepConfig& cfg) {
  const auto j = baseline_couplings(cfg.profile, cfg.chain, cfg.reference);
  if (cfg.chain.n_sites == 2 && uniform_gamma(cfg.channels, 2) &&
      cfg.channels.gamma_deph == 0.0 && cfg.chain.site_energies.empty()) {
    return static_sink_population(j[0], site_gamma(cfg.channels, 1),
                                  cfg.channels.gamma_sink);
  }
  return propagate_static(cfg.chain, j, cfg.channels, lean(cfg.integrator))
      .asymptotic_sink;
}

double asymptotic_sink(const SweepConfig& cfg) {
  return propagate(cfg.chain, cfg.profile, cfg.vib, cfg.channels,
                   lean(cfg.integrator))
      .asymptotic_sink;
}

std::vector<EnhancementPoint> frequency_sweep(
    const SweepConfig& cfg, const std::vector<double>& omega_grid) {
  if (omega_grid.empty()) throw DomainError("omega grid is empty");
  for (std::size_t i = 1; i < omega_grid.size(); ++i)
    if (omega_grid[i] <= omega_grid[i - 1])
      throw DomainError("omega grid must be strictly increasing");
  const double ref = static_reference(cfg);
  return parallel_map<EnhancementPoint>(
      omega_grid.size(), cfg.workers, [&](std::size_t i) {
        return named_point("omega", omega_grid[i], [&] {
          SweepConfig point = cfg;
          point.profile = with_frequency(cfg.profile, omega_grid[i]);
          const double p = asymptotic_sink(point);
          return EnhancementPoint{omega_grid[i], p, ref, p - ref};
        });
      });
}

PhaseEnsemble phase_ensemble(const SweepConfig& cfg,
                             const std::vector<double>& omega_grid,
                             int n_phases) {
  if (n_phases < 1) throw DomainError("n_phases must be >= 1");
  PhaseEnsemble ens;
  ens.omegas = omega_grid;
  ens.phases.resize(static_cast<std::size_t>(n_phases));
  for (int k = 0; k < n_phases; ++k)
    ens.phases[static_cast<std::size_t>(k)] =
        2.0 * std::numbers::pi * k / n_phases;

  // flatten phases x omegas into one deterministic job grid
  const std::size_t n_jobs = ens.phases.size() * omega_grid.size();
  const auto sink = parallel_map<double>(n_jobs, cfg.workers, [&](std::size_t job) {
    const std::size_t pi = job / omega_grid.size();
    const std::size_t wi = job % omega_grid.size();
    return named_point("omega", omega_grid[wi], [&] {
      SweepConfig point = cfg;
      point.profile = with_frequency(with_phase_offset(cfg.profile, ens.phases[pi]),
                                     omega_grid[wi]);
      return asymptotic_sink(point);
    });
  });

  ens.per_phase.resize(ens.phases.size());
  for (std::size_t pi = 0; pi < ens.phases.size(); ++pi)
    ens.per_phase[pi].assign(sink.begin() + static_cast<std::ptrdiff_t>(pi * omega_grid.size()),
                             sink.begin() + static_cast<std::ptrdiff_t>((pi + 1) * omega_grid.size()));

  ens.mean.resize(omega_grid.size());
  ens.env_min.resize(omega_grid.size());
  ens.env_max.resize(omega_grid.size());
  for (std::size_t wi = 0; wi < omega_grid.size(); ++wi) {
    double lo = ens.per_phase[0][wi], hi = lo, sum = 0.0;
    for (const auto& row : ens.per_phase) {
      lo = std::min(lo, row[wi]);
      hi = std::max(hi, row[wi]);
      sum += row[wi];
    }
    ens.mean[wi] = sum / static_cast<double>(n_phases);
    ens.env_min[wi] = lo;
    ens.env_max[wi] = hi;
  }
  return ens;
}

OptimalFrequency optimal_frequency(const SweepConfig& cfg,
                                   const std::vector<double>& coarse_grid) {
  const auto sweep = frequency_sweep(cfg, coarse_grid);
  std::size_t best = 0;
  for (std::size_t i = 1; i < sweep.size(); ++i)
    if (sweep[i].p_sink > sweep[best].p_sink) best = i;
  if (best == 0 || best + 1 == sweep.size())
    throw NoMaximumInBracket("coarse-grid maximum sits on the grid boundary");

  const double ref = sweep[best].p_static_ref;
  auto objective = [&](double w) {
    SweepConfig point = cfg;
    point.profile = with_frequency(cfg.profile, w);
    return asymptotic_sink(point);
  };
  const double w_opt = golden_max(objective, coarse_grid[best - 1],
                                  coarse_grid[best + 1], 1e-3);
  const double p = objective(w_opt);
  return OptimalFrequency{w_opt, p, p - ref};
}

double critical_dephasing_rate(const SweepConfig& cfg, double omega,
                               double gamma_max, double tol) {
  auto delta = [&](double gamma_deph) {
    SweepConfig point = cfg;
    point.profile = with_frequency(cfg.profile, omega);
    point.channels.gamma_deph = gamma_deph;
    // moving and static reference share the same dephasing rate
    return asymptotic_sink(point) - static_reference(point);
  };
  if (!(delta(0.0) > 0.0))
    throw DomainError("no enhancement at gamma_deph = 0; nothing to destroy");
  if (delta(gamma_max) > 0.0)
    throw NoSignChange("enhancement persists up to gamma_deph = " +
                       std::to_string(gamma_max));
  double lo = 0.0, hi = gamma_max;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (delta(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<PulsePoint> pulse_grid(const SweepConfig& cfg,
                                   const std::vector<double>& v_grid,
                                   const std::vector<double>& sigma_grid) {
  if (v_grid.empty() || sigma_grid.empty())
    throw DomainError("pulse grids must be non-empty");
  const auto* gp = std::get_if<GaussianPulse>(&cfg.profile);
  if (!gp) throw NotApplicable("pulse_grid requires a GaussianPulse profile");

  const auto jmax = baseline_couplings(cfg.profile, cfg.chain, BaselineKind::JMax);
  const double ref =
      propagate_static(cfg.chain, jmax, cfg.channels, lean(cfg.integrator))
          .asymptotic_sink;

  const std::size_t n_jobs = v_grid.size() * sigma_grid.size();
  return parallel_map<PulsePoint>(n_jobs, cfg.workers, [&](std::size_t job) {
    const std::size_t vi = job / sigma_grid.size();
    const std::size_t si = job % sigma_grid.size();
    return named_point("v", v_grid[vi], [&] {
      return named_point("sigma", sigma_grid[si], [&] {
        SweepConfig point = cfg;
        GaussianPulse pulse = *gp;
        pulse.speed = v_grid[vi];
        pulse.width = sigma_grid[si];
        point.profile = pulse;
        const double p = asymptotic_sink(point);
        return PulsePoint{v_grid[vi], sigma_grid[si], p, ref, p - ref};
      });
    });
  });
}

PulsePoint refine_pulse_optimum(const SweepConfig& cfg, const PulsePoint& start,
                                double v_bracket, double sigma_bracket,
                                int rounds) {
  const auto* gp = std::get_if<GaussianPulse>(&cfg.profile);
  if (!gp) throw NotApplicable("refine_pulse_optimum requires a GaussianPulse profile");
  auto sink_at = [&](double v, double sigma) {
    SweepConfig point = cfg;
    GaussianPulse pulse = *gp;
    pulse.speed = v;
    pulse.width = std::max(sigma, 1e-6);
    point.profile = pulse;
    return asymptotic_sink(point);
  };
  double v = start.v, sigma = start.sigma;
  double dv = v_bracket, ds = sigma_bracket;
  for (int r = 0; r < rounds; ++r) {
    v = golden_max([&](double x) { return sink_at(x, sigma); },
                   std::max(v - dv, 0.0), v + dv, 1e-4);
    sigma = golden_max([&](double x) { return sink_at(v, x); },
                       std::max(sigma - ds, 1e-3), sigma + ds, 1e-4);
    dv *= 0.5;
    ds *= 0.5;
  }
  const double p = sink_at(v, sigma);
  return PulsePoint{v, sigma, p, start.baseline, p - start.baseline};
}

}  // namespace exciton
