#include "exciton/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "exciton/rk.hpp"

namespace exciton {

namespace {

using Complex = std::complex<double>;

// Flat Lindblad RHS over row-major rho of dimension dim = n_sites + 1.
// Writes d(rho)/dt into out and returns the instantaneous loss rate
// 2 sum_n gamma_n rho_nn.
double rhs_flat(const Complex* rho, const HamiltonianSnapshot& h,
                const ChannelSpec& ch, int n_sites, Complex* out) {
  const int dim = n_sites + 1;
  const auto at = [dim](const Complex* m, int i, int j) -> const Complex& {
    return m[i * dim + j];
  };

  // i (rho H - H rho) with H tridiagonal on the site block, zero on the sink
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      Complex rh = 0.0, hr = 0.0;
      if (j < n_sites) {  // column j of H
        rh = at(rho, i, j) * h.diagonal[static_cast<std::size_t>(j)];
        if (j > 0) rh += at(rho, i, j - 1) * h.couplings[static_cast<std::size_t>(j - 1)];
        if (j + 1 < n_sites) rh += at(rho, i, j + 1) * h.couplings[static_cast<std::size_t>(j)];
      }
      if (i < n_sites) {  // row i of H
        hr = h.diagonal[static_cast<std::size_t>(i)] * at(rho, i, j);
        if (i > 0) hr += h.couplings[static_cast<std::size_t>(i - 1)] * at(rho, i - 1, j);
        if (i + 1 < n_sites) hr += h.couplings[static_cast<std::size_t>(i)] * at(rho, i + 1, j);
      }
      out[i * dim + j] = Complex(0.0, 1.0) * (rh - hr);
    }
  }

  // dissipation: rho_jk decays at gamma_j + gamma_k (zero for the sink)
  for (int i = 0; i < dim; ++i) {
    const double gi = (i < n_sites) ? site_gamma(ch, i + 1) : 0.0;
    for (int j = 0; j < dim; ++j) {
      const double gj = (j < n_sites) ? site_gamma(ch, j + 1) : 0.0;
      if (gi + gj != 0.0) out[i * dim + j] -= (gi + gj) * at(rho, i, j);
    }
  }

  // sink fed from the last site
  if (ch.gamma_sink != 0.0) {
    const int last = n_sites - 1;
    const int sink = n_sites;
    out[sink * dim + sink] += 2.0 * ch.gamma_sink * at(rho, last, last);
    // anticommutator -gamma_S {|N><N|, rho}: row and column of the last site,
    // the (N, N) element receives both contributions
    for (int j = 0; j < dim; ++j) {
      out[last * dim + j] -= ch.gamma_sink * at(rho, last, j);
      out[j * dim + last] -= ch.gamma_sink * at(rho, j, last);
    }
  }

  // pure dephasing on the sites: off-diagonals only, populations untouched
  if (ch.gamma_deph != 0.0) {
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        if (i == j) continue;
        const double involved = (i < n_sites ? 1.0 : 0.0) + (j < n_sites ? 1.0 : 0.0);
        out[i * dim + j] -= ch.gamma_deph * involved * at(rho, i, j);
      }
    }
  }

  double loss_rate = 0.0;
  for (int n = 0; n < n_sites; ++n)
    loss_rate += 2.0 * site_gamma(ch, n + 1) * at(rho, n, n).real();
  return loss_rate;
}

struct PropagationProblem {
  const ChainSpec& spec;
  const ChannelSpec& ch;
  const IntegratorConfig& cfg;
  int initial_site;
};

// Shared driver: `eval_h(t, snapshot)` fills the instantaneous Hamiltonian.
template <class EvalH>
TransferRecord integrate_master_equation(const PropagationProblem& p, EvalH&& eval_h) {
  validate(p.spec);
  validate(p.ch, p.spec.n_sites);
  validate(p.cfg);
  if (p.initial_site < 1 || p.initial_site > p.spec.n_sites)
    throw DomainError("initial site out of range");

  const int n = p.spec.n_sites;
  const int dim = n + 1;
  const std::size_t m = static_cast<std::size_t>(dim * dim);

  // state = vectorized rho plus one augmented slot integrating the loss
  std::vector<Complex> y(m + 1, Complex(0.0));
  y[static_cast<std::size_t>((p.initial_site - 1) * dim + (p.initial_site - 1))] = 1.0;

  HamiltonianSnapshot h;
  auto rhs = [&](double t, const std::vector<Complex>& s, std::vector<Complex>& ds) {
    eval_h(t, h);
    const double loss_rate = rhs_flat(s.data(), h, p.ch, n, ds.data());
    ds[m] = Complex(loss_rate, 0.0);
  };

  TransferRecord rec;
  // Guard against genuinely broken dynamics. Populations legitimately pass
  // through the convergence_tol scale before the run terminates, where the
  // integrator's absolute noise lives, so the floor must sit well below it.
  const double pos_floor =
      -(100.0 * p.cfg.abs_tol + 100.0 * p.cfg.convergence_tol);
  auto sample = [&](double t, const std::vector<Complex>& s) {
    double sites = 0.0;
    for (int k = 0; k < n; ++k) {
      const double pop = s[static_cast<std::size_t>(k * dim + k)].real();
      if (pop < pos_floor)
        throw PositivityViolation("site population " + std::to_string(pop) +
                                  " below floor at t = " + std::to_string(t));
      sites += pop;
    }
    if (p.cfg.record_trajectory) {
      rec.times.push_back(t);
      std::vector<double> pops(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k)
        pops[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k * dim + k)].real();
      rec.site_populations.push_back(std::move(pops));
      rec.sink_population.push_back(s[static_cast<std::size_t>(n * dim + n)].real());
      rec.loss.push_back(s[m].real());
    }
    return sites;
  };

  sample(0.0, y);
  ode::StepControl ctrl;
  ctrl.rel_tol = p.cfg.rel_tol;
  ctrl.abs_tol = p.cfg.abs_tol;
  bool converged = false;
  const double t_final = ode::integrate(
      rhs, y, 0.0, p.cfg.t_max, ctrl, [&](double t, const std::vector<Complex>& s) {
        const double sites = sample(t, s);
        if (sites < p.cfg.convergence_tol) {
          converged = true;
          return false;
        }
        return true;
      });

  rec.asymptotic_sink = y[static_cast<std::size_t>(n * dim + n)].real();
  rec.asymptotic_loss = y[m].real();
  rec.final_time = t_final;
  rec.termination = converged ? Termination::Converged : Termination::TimeCapped;
  return rec;
}

}  // namespace

void validate(const ChannelSpec& ch, int n_sites) {
  if (ch.gamma.size() != 1 && ch.gamma.size() != static_cast<std::size_t>(n_sites))
    throw DimensionMismatch("gamma: expected 1 or " + std::to_string(n_sites) +
                            " entries, got " + std::to_string(ch.gamma.size()));
  for (double g : ch.gamma)
    if (g < 0.0) throw DomainError("dissipation rates must be >= 0");
  if (ch.gamma_sink < 0.0) throw DomainError("gamma_sink must be >= 0");
  if (ch.gamma_deph < 0.0) throw DomainError("gamma_deph must be >= 0");
}

double site_gamma(const ChannelSpec& ch, int site) {
  if (ch.gamma.empty()) return 0.0;
  if (ch.gamma.size() == 1) return ch.gamma[0];
  return ch.gamma[static_cast<std::size_t>(site - 1)];
}

void validate(const IntegratorConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
    throw DomainError("integrator tolerances must be > 0");
  if (!(cfg.t_max > 0.0)) throw DomainError("t_max must be > 0");
  if (!(cfg.convergence_tol > 0.0)) throw DomainError("convergence_tol must be > 0");
}

QuantumState QuantumState::site_excitation(int n_sites, int site) {
  if (site < 1 || site > n_sites) throw DomainError("initial site out of range");
  QuantumState s(n_sites);
  s(site - 1, site - 1) = 1.0;
  return s;
}

double QuantumState::total_site_population() const {
  double p = 0.0;
  for (int k = 0; k < n_; ++k) p += (*this)(k, k).real();
  return p;
}

double QuantumState::trace_real() const {
  return total_site_population() + sink_population();
}

double QuantumState::hermiticity_error() const {
  double e = 0.0;
  for (int i = 0; i < dim(); ++i)
    for (int j = i; j < dim(); ++j)
      e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return e;
}

void lindblad_rhs(const QuantumState& rho, const HamiltonianSnapshot& h,
                  const ChannelSpec& ch, QuantumState& drho) {
  const int n = rho.n_sites();
  if (drho.n_sites() != n) throw DimensionMismatch("drho dimension mismatch");
  if (h.diagonal.size() != static_cast<std::size_t>(n) ||
      h.couplings.size() != static_cast<std::size_t>(n - 1))
    throw DimensionMismatch("Hamiltonian snapshot does not match state size");
  validate(ch, n);
  rhs_flat(rho.raw().data(), h, ch, n, drho.raw().data());
}

TransferRecord propagate(const ChainSpec& spec, const MotionProfile& profile,
                         const VibronicCoupling& vib, const ChannelSpec& ch,
                         const IntegratorConfig& cfg, int initial_site) {
  validate_motion(profile, spec);
  PropagationProblem p{spec, ch, cfg, initial_site};
  return integrate_master_equation(
      p, [&](double t, HamiltonianSnapshot& h) {
        hamiltonian_at(profile, spec, vib, t, h);
      });
}

TransferRecord propagate_static(const ChainSpec& spec,
                                const std::vector<double>& couplings,
                                const ChannelSpec& ch,
                                const IntegratorConfig& cfg, int initial_site) {
  if (couplings.size() != static_cast<std::size_t>(spec.n_sites - 1))
    throw DimensionMismatch("couplings: expected " +
                            std::to_string(spec.n_sites - 1) + " entries");
  for (double j : couplings)
    if (!(j > 0.0)) throw PositivityViolation("static couplings must be > 0");
  HamiltonianSnapshot h;
  h.couplings = couplings;
  h.diagonal.assign(static_cast<std::size_t>(spec.n_sites), 0.0);
  for (int s = 0; s < spec.n_sites; ++s)
    if (!spec.site_energies.empty())
      h.diagonal[static_cast<std::size_t>(s)] =
          spec.site_energies.size() == 1
              ? spec.site_energies[0]
              : spec.site_energies[static_cast<std::size_t>(s)];
  PropagationProblem p{spec, ch, cfg, initial_site};
  return integrate_master_equation(p, [&](double, HamiltonianSnapshot& out) {
    if (out.couplings.empty()) out = h;  // time independent
  });
}

double static_sink_population_numeric(const ChainSpec& spec, double scale,
                                      const ChannelSpec& ch,
                                      const IntegratorConfig& cfg) {
  if (!(scale > 0.0)) throw DomainError("coupling scale must be > 0");
  IntegratorConfig lean = cfg;
  lean.record_trajectory = false;
  std::vector<double> j(static_cast<std::size_t>(spec.n_sites - 1),
                        scale * spec.j0);
  return propagate_static(spec, j, ch, lean, 1).asymptotic_sink;
}

}  // namespace exciton
