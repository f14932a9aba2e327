#include "exciton/classical.hpp"

#include <cmath>

#include "exciton/grid.hpp"
#include "exciton/rk.hpp"

namespace exciton {

namespace {

struct ClassicalProblem {
  const ChainSpec& spec;
  const ChannelSpec& ch;
  const IntegratorConfig& cfg;
  int initial_site;
};

// State layout: P_1..P_N, P_sink, loss.
template <class EvalRates>
TransferRecord integrate_rate_equation(const ClassicalProblem& p,
                                       EvalRates&& eval_rates) {
  validate(p.spec);
  validate(p.ch, p.spec.n_sites);
  validate(p.cfg);
  if (p.initial_site < 1 || p.initial_site > p.spec.n_sites)
    throw DomainError("initial site out of range");

  const int n = p.spec.n_sites;
  std::vector<double> y(static_cast<std::size_t>(n) + 2, 0.0);
  y[static_cast<std::size_t>(p.initial_site - 1)] = 1.0;

  std::vector<double> k(static_cast<std::size_t>(n - 1));
  auto rhs = [&](double t, const std::vector<double>& s, std::vector<double>& ds) {
    eval_rates(t, k);
    double loss_rate = 0.0;
    for (int i = 0; i < n; ++i) {
      const double g2 = 2.0 * site_gamma(p.ch, i + 1);
      double d = -g2 * s[static_cast<std::size_t>(i)];
      loss_rate += g2 * s[static_cast<std::size_t>(i)];
      if (i > 0)
        d += k[static_cast<std::size_t>(i - 1)] *
             (s[static_cast<std::size_t>(i - 1)] - s[static_cast<std::size_t>(i)]);
      if (i + 1 < n)
        d += k[static_cast<std::size_t>(i)] *
             (s[static_cast<std::size_t>(i + 1)] - s[static_cast<std::size_t>(i)]);
      ds[static_cast<std::size_t>(i)] = d;
    }
    // irreversible absorption from the last site
    const double sink_flow = 2.0 * p.ch.gamma_sink * s[static_cast<std::size_t>(n - 1)];
    ds[static_cast<std::size_t>(n - 1)] -= sink_flow;
    ds[static_cast<std::size_t>(n)] = sink_flow;
    ds[static_cast<std::size_t>(n) + 1] = loss_rate;
  };

  TransferRecord rec;
  // same noise-aware floor as the quantum propagation
  const double pos_floor =
      -(100.0 * p.cfg.abs_tol + 100.0 * p.cfg.convergence_tol);
  auto sample = [&](double t, const std::vector<double>& s) {
    double sites = 0.0;
    for (int i = 0; i < n; ++i) {
      if (s[static_cast<std::size_t>(i)] < pos_floor)
        throw PositivityViolation("classical population below floor at t = " +
                                  std::to_string(t));
      sites += s[static_cast<std::size_t>(i)];
    }
    if (p.cfg.record_trajectory) {
      rec.times.push_back(t);
      rec.site_populations.emplace_back(s.begin(), s.begin() + n);
      rec.sink_population.push_back(s[static_cast<std::size_t>(n)]);
      rec.loss.push_back(s[static_cast<std::size_t>(n) + 1]);
    }
    return sites;
  };

  sample(0.0, y);
  ode::StepControl ctrl;
  ctrl.rel_tol = p.cfg.rel_tol;
  ctrl.abs_tol = p.cfg.abs_tol;
  bool converged = false;
  const double t_final = ode::integrate(
      rhs, y, 0.0, p.cfg.t_max, ctrl, [&](double t, const std::vector<double>& s) {
        if (sample(t, s) < p.cfg.convergence_tol) {
          converged = true;
          return false;
        }
        return true;
      });

  rec.asymptotic_sink = y[static_cast<std::size_t>(n)];
  rec.asymptotic_loss = y[static_cast<std::size_t>(n) + 1];
  rec.final_time = t_final;
  rec.termination = converged ? Termination::Converged : Termination::TimeCapped;
  return rec;
}

}  // namespace

RateModel make_rate_model(const ChannelSpec& ch, int n_sites, double hop_scale) {
  if (!(hop_scale > 0.0)) throw DomainError("hop_scale must be > 0");
  validate(ch, n_sites);
  RateModel m;
  m.hop_scale = hop_scale;
  m.loss_rates.resize(static_cast<std::size_t>(n_sites));
  for (int i = 0; i < n_sites; ++i)
    m.loss_rates[static_cast<std::size_t>(i)] = 2.0 * site_gamma(ch, i + 1);
  m.sink_rate = 2.0 * ch.gamma_sink;
  return m;
}

double hopping_rate(double J, double hop_scale) {
  if (J < 0.0) throw DomainError("coupling must be >= 0");
  if (!(hop_scale > 0.0)) throw DomainError("hop_scale must be > 0");
  return hop_scale * J * J;
}

TransferRecord propagate_classical(const ChainSpec& spec,
                                   const MotionProfile& profile,
                                   const ChannelSpec& ch, double hop_scale,
                                   const IntegratorConfig& cfg,
                                   int initial_site) {
  validate_motion(profile, spec);
  if (!(hop_scale > 0.0)) throw DomainError("hop_scale must be > 0");
  ClassicalProblem p{spec, ch, cfg, initial_site};
  return integrate_rate_equation(p, [&](double t, std::vector<double>& k) {
    for (std::size_t b = 0; b < k.size(); ++b)
      k[b] = hopping_rate(coupling_at(profile, spec, static_cast<int>(b) + 1, t),
                          hop_scale);
  });
}

TransferRecord propagate_classical_static(const ChainSpec& spec,
                                          const std::vector<double>& couplings,
                                          const ChannelSpec& ch,
                                          double hop_scale,
                                          const IntegratorConfig& cfg,
                                          int initial_site) {
  if (couplings.size() != static_cast<std::size_t>(spec.n_sites - 1))
    throw DimensionMismatch("couplings: expected " +
                            std::to_string(spec.n_sites - 1) + " entries");
  std::vector<double> rates(couplings.size());
  for (std::size_t b = 0; b < couplings.size(); ++b)
    rates[b] = hopping_rate(couplings[b], hop_scale);
  ClassicalProblem p{spec, ch, cfg, initial_site};
  return integrate_rate_equation(
      p, [&](double, std::vector<double>& k) { k = rates; });
}

std::vector<ClassicalEnhancementPoint> classical_enhancement(
    const ChainSpec& spec, const MotionProfile& profile, const ChannelSpec& ch,
    double hop_scale, const IntegratorConfig& cfg,
    const std::vector<double>& omega_grid, int workers) {
  IntegratorConfig lean = cfg;
  lean.record_trajectory = false;
  const auto jmax = baseline_couplings(profile, spec, BaselineKind::JMax);
  const double ref =
      propagate_classical_static(spec, jmax, ch, hop_scale, lean).asymptotic_sink;
  return parallel_map<ClassicalEnhancementPoint>(
      omega_grid.size(), workers, [&](std::size_t i) {
        const double w = omega_grid[i];
        try {
          const double p = propagate_classical(spec, with_frequency(profile, w),
                                               ch, hop_scale, lean)
                               .asymptotic_sink;
          return ClassicalEnhancementPoint{w, p, ref, p - ref};
        } catch (const Error& e) {
          throw Error("omega = " + std::to_string(w) + ": " + e.what());
        }
      });
}

}  // namespace exciton
