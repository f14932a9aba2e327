#pragma once

#include <string>
#include <variant>
#include <vector>

#include "exciton/errors.hpp"

namespace exciton {

/// Static description of the molecular chain.
///
/// Energies and rates are expressed in units of j0, lengths in units of d0;
/// the defaults j0 = d0 = 1 realize those units directly.
struct ChainSpec {
  int n_sites = 2;
  double d0 = 1.0;                    ///< equilibrium spacing
  std::vector<double> site_energies;  ///< length n_sites; empty means all zero
  double j0 = 1.0;                    ///< coupling at equilibrium spacing
};

void validate(const ChainSpec& spec);

/// Chain frozen in place. `scale` multiplies j0 directly; the implied
/// distance d0 * scale^(-1/3) is derived from it.
struct StaticProfile {
  double scale = 1.0;
};

/// Neighboring molecules oscillate in antiphase: the distance of bond n is
/// d0 * (1 - 2 a_n sin(omega t + phi_n)).
struct PairwiseSinusoid {
  std::vector<double> amplitudes;  ///< length n_sites-1, or 1 (broadcast)
  double omega = 1.0;
  std::vector<double> phases;      ///< length n_sites-1, or 1 (broadcast)
};

enum class Boundary { Confined, Open };

/// Superposition of normal modes of the spring chain; per-site displacements
/// follow the closed-form mode shapes for the chosen boundary condition.
struct NormalMode {
  Boundary boundary = Boundary::Open;
  double omega0 = 1.0;                  ///< sqrt(K/M)
  std::vector<double> mode_amplitudes;  ///< a_q, length n_sites
  std::vector<double> mode_phases;      ///< phi_q, length n_sites, or 1
};

/// Gaussian compression pulse travelling along the chain at speed v,
/// centered on bond 1 at t = 0.
struct GaussianPulse {
  double strength = 0.0;  ///< A, fractional compression at the peak
  double width = 1.0;     ///< sigma
  double speed = 0.0;     ///< v
};

using MotionProfile =
    std::variant<StaticProfile, PairwiseSinusoid, NormalMode, GaussianPulse>;

/// Detuning of site energies by local bond stretch, chi * (u_{n+1} - u_n).
struct VibronicCoupling {
  double chi = 0.0;
  bool enabled = false;
};

/// Real symmetric tridiagonal Hamiltonian at one instant.
struct HamiltonianSnapshot {
  std::vector<double> diagonal;   ///< length n_sites
  std::vector<double> couplings;  ///< length n_sites-1, all > 0
};

/// Angular frequency of normal mode q (1-based) for a chain of N sites.
double mode_frequency(Boundary boundary, double omega0, int n_sites, int q);

/// Displacement u_n(t) of site n (1-based). Defined for NormalMode profiles
/// only; pairwise, static and pulse profiles fix geometry at the bond level.
double displacement_at(const MotionProfile& profile, const ChainSpec& spec,
                       int site, double t);

/// Bond stretch u_{n+1}(t) - u_n(t) for bond n (1..N-1). Defined for
/// PairwiseSinusoid and NormalMode.
double bond_stretch(const MotionProfile& profile, const ChainSpec& spec,
                    int bond, double t);

/// Instantaneous distance of bond n. Throws PositivityViolation if <= 0.
double pair_distance(const MotionProfile& profile, const ChainSpec& spec,
                     int bond, double t);

/// Dipolar coupling J_n(t) = j0 (d0 / d_n(t))^3.
double coupling_at(const MotionProfile& profile, const ChainSpec& spec,
                   int bond, double t);

HamiltonianSnapshot hamiltonian_at(const MotionProfile& profile,
                                   const ChainSpec& spec,
                                   const VibronicCoupling& vib, double t);

/// In-place variant reusing the snapshot's buffers.
void hamiltonian_at(const MotionProfile& profile, const ChainSpec& spec,
                    const VibronicCoupling& vib, double t,
                    HamiltonianSnapshot& out);

/// Period average of j0 / (1 - 2a sin)^3: j0 (1 + 2a^2)/(1 - 4a^2)^(5/2).
double time_averaged_coupling(double a, double j0 = 1.0);

/// Checks profile invariants against the spec: amplitude bounds, and for
/// normal modes positivity of every bond distance sampled over one period.
void validate_motion(const MotionProfile& profile, const ChainSpec& spec);

/// Copy of the profile with its drive frequency replaced: omega for
/// PairwiseSinusoid, omega0 for NormalMode. Throws NotApplicable otherwise.
MotionProfile with_frequency(const MotionProfile& profile, double omega);

enum class BaselineKind { J0, JAvg, JMax };

const char* baseline_name(BaselineKind kind);

/// Per-bond couplings of the static comparison chain: equilibrium (J0),
/// time-averaged (JAvg) or maximal (JMax) coupling met during the motion.
std::vector<double> baseline_couplings(const MotionProfile& profile,
                                       const ChainSpec& spec,
                                       BaselineKind kind);

}  // namespace exciton
