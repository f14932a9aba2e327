#pragma once

#include <complex>
#include <vector>

#include "exciton/chain.hpp"
#include "exciton/errors.hpp"

namespace exciton {

/// Lindblad channel rates. Conventions follow the generator
/// gamma [2 L rho L+ - {L+L, rho}]: site populations decay at 2 gamma_n,
/// the sink fills at 2 gamma_sink, and a site-site coherence dephases at
/// gamma_deph per involved site.
struct ChannelSpec {
  std::vector<double> gamma;  ///< per-site dissipation, length n_sites or 1
  double gamma_sink = 0.0;
  double gamma_deph = 0.0;
};

void validate(const ChannelSpec& ch, int n_sites);

double site_gamma(const ChannelSpec& ch, int site);  // 1-based

/// Density matrix over {site 1..N, sink}, row-major complex storage.
class QuantumState {
 public:
  explicit QuantumState(int n_sites)
      : n_(n_sites),
        a_(static_cast<std::size_t>((n_sites + 1) * (n_sites + 1))) {}

  static QuantumState site_excitation(int n_sites, int site);

  int n_sites() const { return n_; }
  int dim() const { return n_ + 1; }

  std::complex<double>& operator()(int i, int j) {
    return a_[static_cast<std::size_t>(i * dim() + j)];
  }
  const std::complex<double>& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i * dim() + j)];
  }

  double site_population(int site) const {  // 1-based
    return (*this)(site - 1, site - 1).real();
  }
  double sink_population() const { return (*this)(n_, n_).real(); }
  double total_site_population() const;
  double trace_real() const;
  double hermiticity_error() const;

  std::vector<std::complex<double>>& raw() { return a_; }
  const std::vector<std::complex<double>>& raw() const { return a_; }

 private:
  int n_;
  std::vector<std::complex<double>> a_;
};

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double t_max = 500.0;           ///< in units of 1/j0
  double convergence_tol = 1e-9;  ///< stop once sum_n P_n drops below this
  bool record_trajectory = true;
};

void validate(const IntegratorConfig& cfg);

enum class Termination { Converged, TimeCapped };

/// Time series of one propagation plus its asymptotics. `loss` is the
/// probability dissipated to the environment, integrated alongside the state
/// so that sum_n P_n + P_sink + loss stays 1 within integrator tolerance.
struct TransferRecord {
  std::vector<double> times;
  std::vector<std::vector<double>> site_populations;  ///< per sample, length N
  std::vector<double> sink_population;
  std::vector<double> loss;
  double asymptotic_sink = 0.0;
  double asymptotic_loss = 0.0;
  double final_time = 0.0;
  Termination termination = Termination::TimeCapped;
};

/// Full Lindblad right-hand side: i[rho, H] + dissipation + sink + dephasing.
/// The sink row/column is untouched by H and gains population only from the
/// last site at rate 2 gamma_sink.
void lindblad_rhs(const QuantumState& rho, const HamiltonianSnapshot& h,
                  const ChannelSpec& ch, QuantumState& drho);

/// Integrates the master equation from a single excitation at `initial_site`
/// until the sites have emptied (convergence_tol) or t_max is reached.
TransferRecord propagate(const ChainSpec& spec, const MotionProfile& profile,
                         const VibronicCoupling& vib, const ChannelSpec& ch,
                         const IntegratorConfig& cfg, int initial_site = 1);

/// Same dynamics on a frozen chain with explicit per-bond couplings.
TransferRecord propagate_static(const ChainSpec& spec,
                                const std::vector<double>& couplings,
                                const ChannelSpec& ch,
                                const IntegratorConfig& cfg,
                                int initial_site = 1);

/// Asymptotic sink population of the static chain at coupling scale * j0.
double static_sink_population_numeric(const ChainSpec& spec, double scale,
                                      const ChannelSpec& ch,
                                      const IntegratorConfig& cfg);

}  // namespace exciton
