#include "exciton/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "exciton/quadrature.hpp"

namespace exciton {

namespace {

constexpr double kPi = std::numbers::pi;

double broadcast(const std::vector<double>& v, int idx0, const char* what) {
  if (v.size() == 1) return v[0];
  if (idx0 < 0 || static_cast<std::size_t>(idx0) >= v.size())
    throw DimensionMismatch(std::string(what) + " index out of range");
  return v[static_cast<std::size_t>(idx0)];
}

void check_len(std::size_t got, std::size_t want, const char* what) {
  if (got != want && got != 1)
    throw DimensionMismatch(std::string(what) + ": expected " +
                            std::to_string(want) + " entries, got " +
                            std::to_string(got));
}

// Period average of (1 - k sin)^-3 over one cycle, |k| < 1.
double inverse_cube_period_average(double k) {
  const double k2 = k * k;
  return (1.0 + 0.5 * k2) / std::pow(1.0 - k2, 2.5);
}

// Mode shape of site n (1-based) including the 1/A_q (1/B_q) normalization.
double mode_shape(Boundary boundary, int n_sites, int q, int site) {
  if (boundary == Boundary::Confined) {
    const double norm = std::sin(q * kPi / (n_sites + 1));
    if (std::abs(norm) < 1e-12)
      throw DomainError("confined mode normalization vanishes for q = " +
                        std::to_string(q));
    return std::sin(q * kPi * site / (n_sites + 1)) / norm;
  }
  const double norm = std::cos(q * kPi / (2.0 * n_sites));
  if (std::abs(norm) < 1e-12)
    throw DomainError("open-chain mode q = " + std::to_string(q) +
                      " has vanishing normalization");
  return std::cos(q * kPi / n_sites * (site - 0.5)) / norm;
}

// Bond-stretch amplitudes per active mode: stretch_n(t) = sum_q S[q][n] sin(w_q t + phi_q).
struct ModeTerm {
  double omega;
  double phase;
  std::vector<double> stretch;  // per bond, length N-1
};

std::vector<ModeTerm> active_mode_terms(const NormalMode& nm, const ChainSpec& spec) {
  const int n = spec.n_sites;
  check_len(nm.mode_amplitudes.size(), static_cast<std::size_t>(n), "mode_amplitudes");
  std::vector<ModeTerm> terms;
  for (std::size_t qi = 0; qi < nm.mode_amplitudes.size(); ++qi) {
    const double aq = nm.mode_amplitudes[qi];
    if (aq == 0.0) continue;
    const int q = static_cast<int>(qi) + 1;
    ModeTerm term;
    term.omega = mode_frequency(nm.boundary, nm.omega0, n, q);
    term.phase = nm.mode_phases.empty()
                     ? 0.0
                     : broadcast(nm.mode_phases, static_cast<int>(qi), "mode_phases");
    term.stretch.resize(static_cast<std::size_t>(n - 1));
    for (int b = 1; b < n; ++b) {
      term.stretch[static_cast<std::size_t>(b - 1)] =
          aq * spec.d0 *
          (mode_shape(nm.boundary, n, q, b + 1) - mode_shape(nm.boundary, n, q, b));
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

double pulse_depression(const GaussianPulse& p, const ChainSpec& spec, int bond,
                        double t) {
  const double x = (bond - 1) * spec.d0 - p.speed * t;
  return p.strength * spec.d0 * std::exp(-x * x / (2.0 * p.width * p.width));
}

}  // namespace

void validate(const ChainSpec& spec) {
  if (spec.n_sites < 2) throw DomainError("n_sites must be >= 2");
  if (!(spec.d0 > 0.0)) throw DomainError("d0 must be > 0");
  if (!(spec.j0 > 0.0)) throw DomainError("j0 must be > 0");
  if (!spec.site_energies.empty())
    check_len(spec.site_energies.size(), static_cast<std::size_t>(spec.n_sites),
              "site_energies");
}

double mode_frequency(Boundary boundary, double omega0, int n_sites, int q) {
  if (q < 1 || q > n_sites) throw DomainError("mode index q out of range");
  if (!(omega0 > 0.0)) throw DomainError("omega0 must be > 0");
  if (boundary == Boundary::Confined)
    return 2.0 * omega0 * std::sin(q * kPi / (2.0 * (n_sites + 1)));
  return 2.0 * omega0 * std::sin(q * kPi / (2.0 * n_sites));
}

double displacement_at(const MotionProfile& profile, const ChainSpec& spec,
                       int site, double t) {
  if (site < 1 || site > spec.n_sites) throw DomainError("site index out of range");
  const auto* nm = std::get_if<NormalMode>(&profile);
  if (!nm)
    throw NotApplicable(
        "displacement_at is defined for NormalMode profiles only");
  check_len(nm->mode_amplitudes.size(), static_cast<std::size_t>(spec.n_sites),
            "mode_amplitudes");
  double u = 0.0;
  for (std::size_t qi = 0; qi < nm->mode_amplitudes.size(); ++qi) {
    const double aq = nm->mode_amplitudes[qi];
    if (aq == 0.0) continue;
    const int q = static_cast<int>(qi) + 1;
    const double wq = mode_frequency(nm->boundary, nm->omega0, spec.n_sites, q);
    const double phi = nm->mode_phases.empty()
                           ? 0.0
                           : broadcast(nm->mode_phases, static_cast<int>(qi),
                                       "mode_phases");
    u += aq * spec.d0 * mode_shape(nm->boundary, spec.n_sites, q, site) *
         std::sin(wq * t + phi);
  }
  return u;
}

double bond_stretch(const MotionProfile& profile, const ChainSpec& spec,
                    int bond, double t) {
  if (bond < 1 || bond >= spec.n_sites) throw DomainError("bond index out of range");
  if (const auto* pw = std::get_if<PairwiseSinusoid>(&profile)) {
    const double a = broadcast(pw->amplitudes, bond - 1, "amplitudes");
    const double phi = broadcast(pw->phases, bond - 1, "phases");
    return -2.0 * a * spec.d0 * std::sin(pw->omega * t + phi);
  }
  if (std::holds_alternative<NormalMode>(profile)) {
    return displacement_at(profile, spec, bond + 1, t) -
           displacement_at(profile, spec, bond, t);
  }
  throw NotApplicable("bond_stretch requires per-site displacements");
}

double pair_distance(const MotionProfile& profile, const ChainSpec& spec,
                     int bond, double t) {
  if (bond < 1 || bond >= spec.n_sites) throw DomainError("bond index out of range");
  double d;
  if (const auto* st = std::get_if<StaticProfile>(&profile)) {
    d = spec.d0 * std::pow(st->scale, -1.0 / 3.0);
  } else if (const auto* gp = std::get_if<GaussianPulse>(&profile)) {
    d = spec.d0 - pulse_depression(*gp, spec, bond, t);
  } else {
    d = spec.d0 + bond_stretch(profile, spec, bond, t);
  }
  if (!(d > 0.0))
    throw PositivityViolation("bond " + std::to_string(bond) +
                              " distance non-positive at t = " + std::to_string(t));
  return d;
}

double coupling_at(const MotionProfile& profile, const ChainSpec& spec,
                   int bond, double t) {
  const double r = spec.d0 / pair_distance(profile, spec, bond, t);
  return spec.j0 * r * r * r;
}

void hamiltonian_at(const MotionProfile& profile, const ChainSpec& spec,
                    const VibronicCoupling& vib, double t,
                    HamiltonianSnapshot& out) {
  const int n = spec.n_sites;
  out.diagonal.resize(static_cast<std::size_t>(n));
  out.couplings.resize(static_cast<std::size_t>(n - 1));
  for (int b = 1; b < n; ++b)
    out.couplings[static_cast<std::size_t>(b - 1)] =
        coupling_at(profile, spec, b, t);
  for (int s = 0; s < n; ++s)
    out.diagonal[static_cast<std::size_t>(s)] =
        spec.site_energies.empty()
            ? 0.0
            : broadcast(spec.site_energies, s, "site_energies");
  if (vib.enabled && vib.chi != 0.0) {
    if (std::holds_alternative<StaticProfile>(profile) ||
        std::holds_alternative<GaussianPulse>(profile))
      throw NotApplicable(
          "vibronic detuning needs per-site displacements; static and pulse "
          "profiles define geometry at the bond level only");
    // site n < N uses its own bond stretch; site N replicates the last bond
    for (int s = 1; s <= n; ++s) {
      const int b = (s < n) ? s : n - 1;
      out.diagonal[static_cast<std::size_t>(s - 1)] +=
          vib.chi * bond_stretch(profile, spec, b, t);
    }
  }
}

HamiltonianSnapshot hamiltonian_at(const MotionProfile& profile,
                                   const ChainSpec& spec,
                                   const VibronicCoupling& vib, double t) {
  HamiltonianSnapshot out;
  hamiltonian_at(profile, spec, vib, t, out);
  return out;
}

double time_averaged_coupling(double a, double j0) {
  if (a < 0.0 || a >= 0.5)
    throw DomainError("amplitude must satisfy 0 <= a < 1/2");
  return j0 * inverse_cube_period_average(2.0 * a);
}

void validate_motion(const MotionProfile& profile, const ChainSpec& spec) {
  validate(spec);
  const std::size_t n_bonds = static_cast<std::size_t>(spec.n_sites - 1);
  if (const auto* st = std::get_if<StaticProfile>(&profile)) {
    if (!(st->scale > 0.0)) throw DomainError("static scale must be > 0");
    return;
  }
  if (const auto* pw = std::get_if<PairwiseSinusoid>(&profile)) {
    check_len(pw->amplitudes.size(), n_bonds, "amplitudes");
    check_len(pw->phases.size(), n_bonds, "phases");
    for (double a : pw->amplitudes)
      if (a < 0.0 || a >= 0.5)
        throw DomainError("pairwise amplitude must satisfy 0 <= a < 1/2, got " +
                          std::to_string(a));
    if (!(pw->omega > 0.0)) throw DomainError("omega must be > 0");
    return;
  }
  if (const auto* gp = std::get_if<GaussianPulse>(&profile)) {
    if (gp->strength < 0.0 || gp->strength >= 1.0)
      throw DomainError("pulse strength must satisfy 0 <= A < 1");
    if (!(gp->width > 0.0)) throw DomainError("pulse width must be > 0");
    if (gp->speed < 0.0) throw DomainError("pulse speed must be >= 0");
    return;
  }
  const auto& nm = std::get<NormalMode>(profile);
  if (!(nm.omega0 > 0.0)) throw DomainError("omega0 must be > 0");
  const auto terms = active_mode_terms(nm, spec);
  if (terms.empty()) return;
  // positivity of every bond distance, sampled over one period of the
  // slowest active mode
  double w_min = terms.front().omega;
  for (const auto& term : terms) w_min = std::min(w_min, term.omega);
  const double period = 2.0 * kPi / w_min;
  constexpr int kSamples = 2048;
  for (int b = 0; b < spec.n_sites - 1; ++b) {
    for (int i = 0; i <= kSamples; ++i) {
      const double t = period * i / kSamples;
      double stretch = 0.0;
      for (const auto& term : terms)
        stretch += term.stretch[static_cast<std::size_t>(b)] *
                   std::sin(term.omega * t + term.phase);
      if (!(spec.d0 + stretch > 0.0))
        throw PositivityViolation("bond " + std::to_string(b + 1) +
                                  " distance becomes non-positive during one "
                                  "mode period");
    }
  }
}

MotionProfile with_frequency(const MotionProfile& profile, double omega) {
  MotionProfile out = profile;
  if (auto* pw = std::get_if<PairwiseSinusoid>(&out)) {
    pw->omega = omega;
    return out;
  }
  if (auto* nm = std::get_if<NormalMode>(&out)) {
    nm->omega0 = omega;
    return out;
  }
  throw NotApplicable("profile has no drive frequency to sweep");
}

const char* baseline_name(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::J0: return "J0";
    case BaselineKind::JAvg: return "J_avg";
    case BaselineKind::JMax: return "J_max";
  }
  return "?";
}

std::vector<double> baseline_couplings(const MotionProfile& profile,
                                       const ChainSpec& spec,
                                       BaselineKind kind) {
  const std::size_t n_bonds = static_cast<std::size_t>(spec.n_sites - 1);
  std::vector<double> j(n_bonds, spec.j0);
  if (kind == BaselineKind::J0) return j;

  if (const auto* st = std::get_if<StaticProfile>(&profile)) {
    std::fill(j.begin(), j.end(), st->scale * spec.j0);
    return j;
  }
  if (const auto* pw = std::get_if<PairwiseSinusoid>(&profile)) {
    for (std::size_t b = 0; b < n_bonds; ++b) {
      const double a = broadcast(pw->amplitudes, static_cast<int>(b), "amplitudes");
      j[b] = (kind == BaselineKind::JMax)
                 ? spec.j0 / std::pow(1.0 - 2.0 * a, 3.0)
                 : time_averaged_coupling(a, spec.j0);
    }
    return j;
  }
  if (const auto* gp = std::get_if<GaussianPulse>(&profile)) {
    // pulse-peak coupling, uniform over the chain
    std::fill(j.begin(), j.end(),
              kind == BaselineKind::JMax
                  ? spec.j0 / std::pow(1.0 - gp->strength, 3.0)
                  : spec.j0);
    return j;
  }

  const auto& nm = std::get<NormalMode>(profile);
  const auto terms = active_mode_terms(nm, spec);
  if (terms.empty()) return j;
  if (terms.size() == 1) {
    // single mode: bond distance is d0 + S sin(w t + phi), extrema exact
    for (std::size_t b = 0; b < n_bonds; ++b) {
      const double s = std::abs(terms.front().stretch[b]) / spec.d0;
      if (s >= 1.0)
        throw PositivityViolation("bond " + std::to_string(b + 1) +
                                  " closes completely");
      j[b] = (kind == BaselineKind::JMax)
                 ? spec.j0 / std::pow(1.0 - s, 3.0)
                 : spec.j0 * inverse_cube_period_average(s);
    }
    return j;
  }
  // superposition: dense sampling over one period of the slowest mode
  double w_min = terms.front().omega;
  for (const auto& term : terms) w_min = std::min(w_min, term.omega);
  const double period = 2.0 * kPi / w_min;
  constexpr int kSamples = 16384;
  for (std::size_t b = 0; b < n_bonds; ++b) {
    double jmax = 0.0, jsum = 0.0;
    for (int i = 0; i < kSamples; ++i) {
      const double t = period * i / kSamples;
      const double c = coupling_at(profile, spec, static_cast<int>(b) + 1, t);
      jmax = std::max(jmax, c);
      jsum += c;
    }
    j[b] = (kind == BaselineKind::JMax) ? jmax : jsum / kSamples;
  }
  return j;
}

}  // namespace exciton
