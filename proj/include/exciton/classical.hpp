#pragma once

#include <vector>

#include "exciton/chain.hpp"
#include "exciton/dynamics.hpp"

namespace exciton {

/// Classical hopping-rate model: nearest-neighbor rates k = hop_scale * J^2
/// (Forster scaling), site loss at 2 gamma_n and sink absorption at
/// 2 gamma_sink, matching the quantum population decay rates.
struct RateModel {
  double hop_scale = 1.0;          ///< c in k = c J^2
  std::vector<double> loss_rates;  ///< 2 gamma_n, length n_sites
  double sink_rate = 0.0;          ///< 2 gamma_sink
  bool detailed_balance = true;    ///< hopping matrix kept symmetric
};

RateModel make_rate_model(const ChannelSpec& ch, int n_sites, double hop_scale);

double hopping_rate(double J, double hop_scale);

/// Integrates the classical rate equation dP/dt = M(t) P with time-dependent
/// nearest-neighbor rates derived from the moving geometry.
TransferRecord propagate_classical(const ChainSpec& spec,
                                   const MotionProfile& profile,
                                   const ChannelSpec& ch, double hop_scale,
                                   const IntegratorConfig& cfg,
                                   int initial_site = 1);

/// Static-rate variant with explicit per-bond couplings.
TransferRecord propagate_classical_static(const ChainSpec& spec,
                                          const std::vector<double>& couplings,
                                          const ChannelSpec& ch,
                                          double hop_scale,
                                          const IntegratorConfig& cfg,
                                          int initial_site = 1);

struct ClassicalEnhancementPoint {
  double omega;
  double p_sink;
  double p_static_ref;
  double delta;
};

/// Delta_cl(omega): classical sink population of the moving chain minus the
/// classical static baseline at the maximal coupling configuration.
std::vector<ClassicalEnhancementPoint> classical_enhancement(
    const ChainSpec& spec, const MotionProfile& profile, const ChannelSpec& ch,
    double hop_scale, const IntegratorConfig& cfg,
    const std::vector<double>& omega_grid, int workers = 0);

}  // namespace exciton
