#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "exciton/chain.hpp"
#include "exciton/quadrature.hpp"

using namespace exciton;

namespace {

constexpr double kPi = std::numbers::pi;

ChainSpec dimer_spec() {
  ChainSpec s;
  s.n_sites = 2;
  return s;
}

PairwiseSinusoid sinusoid(double a, double omega, double phi) {
  return PairwiseSinusoid{{a}, omega, {phi}};
}

}  // namespace

TEST_CASE("chain spec validation") {
  ChainSpec s;
  s.n_sites = 1;
  CHECK_THROWS_AS(validate(s), DomainError);
  s.n_sites = 3;
  s.d0 = 0.0;
  CHECK_THROWS_AS(validate(s), DomainError);
  s.d0 = 1.0;
  s.site_energies = {1.0, 2.0};  // wrong length for 3 sites
  CHECK_THROWS_AS(validate(s), DimensionMismatch);
  s.site_energies = {1.0, 2.0, 3.0};
  CHECK_NOTHROW(validate(s));
}

TEST_CASE("mode frequencies") {
  // confined dimer: omega_1 = 2 w0 sin(pi/6) = w0
  CHECK(mode_frequency(Boundary::Confined, 3.7, 2, 1) == doctest::Approx(3.7).epsilon(1e-14));
  // open chain q = N is the null mode with frequency 2 w0
  CHECK(mode_frequency(Boundary::Open, 1.0, 4, 4) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(mode_frequency(Boundary::Open, 1.0, 4, 5), DomainError);
}

TEST_CASE("displacement: zero amplitudes vanish") {
  ChainSpec spec;
  spec.n_sites = 5;
  NormalMode nm;
  nm.boundary = Boundary::Confined;
  nm.omega0 = 2.0;
  nm.mode_amplitudes.assign(5, 0.0);
  nm.mode_phases.assign(5, 0.0);
  MotionProfile p = nm;
  for (int n = 1; n <= 5; ++n)
    for (double t : {0.0, 0.9, 7.3}) CHECK(displacement_at(p, spec, n, t) == 0.0);
}

TEST_CASE("displacement: open-chain q=1 mode is antisymmetric about the center") {
  ChainSpec spec;
  spec.n_sites = 13;
  NormalMode nm;
  nm.boundary = Boundary::Open;
  nm.omega0 = 1.3;
  nm.mode_amplitudes.assign(13, 0.0);
  nm.mode_amplitudes[0] = 0.05;
  nm.mode_phases.assign(13, 0.7);
  MotionProfile p = nm;
  for (double t : {0.0, 0.37, 2.9, 11.1}) {
    for (int n = 1; n <= 13; ++n) {
      const double u = displacement_at(p, spec, n, t);
      const double mirror = displacement_at(p, spec, 13 + 1 - n, t);
      CHECK(u == doctest::Approx(-mirror).epsilon(1e-12));
    }
  }
}

TEST_CASE("displacement: confined mode shapes carry the expected parity") {
  ChainSpec spec;
  spec.n_sites = 7;
  auto confined = [&](int q) {
    NormalMode nm;
    nm.boundary = Boundary::Confined;
    nm.omega0 = 1.0;
    nm.mode_amplitudes.assign(7, 0.0);
    nm.mode_amplitudes[static_cast<std::size_t>(q - 1)] = 0.08;
    nm.mode_phases.assign(7, 0.4);
    return MotionProfile{nm};
  };
  // q = 1 is symmetric about the chain center, q = 2 antisymmetric
  const auto p1 = confined(1);
  const auto p2 = confined(2);
  for (double t : {0.2, 1.8, 6.3}) {
    for (int n = 1; n <= 7; ++n) {
      CHECK(displacement_at(p1, spec, n, t) ==
            doctest::Approx(displacement_at(p1, spec, 8 - n, t)).epsilon(1e-12));
      CHECK(displacement_at(p2, spec, n, t) ==
            doctest::Approx(-displacement_at(p2, spec, 8 - n, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("displacement is not defined for bond-level profiles") {
  const ChainSpec spec = dimer_spec();
  CHECK_THROWS_AS(displacement_at(StaticProfile{1.0}, spec, 1, 0.0), NotApplicable);
  CHECK_THROWS_AS(displacement_at(sinusoid(0.1, 1, 0), spec, 1, 0.0), NotApplicable);
  CHECK_THROWS_AS(displacement_at(GaussianPulse{0.1, 1, 1}, spec, 1, 0.0), NotApplicable);
}

TEST_CASE("pair distance") {
  const ChainSpec spec = dimer_spec();
  SUBCASE("zero amplitude keeps the equilibrium distance") {
    const MotionProfile p = sinusoid(0.0, 3.0, 0.3);
    for (double t : {0.0, 1.0, 5.5}) CHECK(pair_distance(p, spec, 1, t) == doctest::Approx(1.0));
  }
  SUBCASE("a=1/4 at the sine maximum halves the distance") {
    const MotionProfile p = sinusoid(0.25, 1.0, kPi / 2);
    CHECK(pair_distance(p, spec, 1, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("pulse peak compresses by the pulse strength") {
    // center of the pulse sits on bond n when (n-1) d0 = v t
    const MotionProfile p = GaussianPulse{1.0 / 6.0, 2.0, 1.5};
    ChainSpec chain;
    chain.n_sites = 13;
    const int bond = 4;
    const double t = (bond - 1) / 1.5;
    CHECK(pair_distance(p, chain, bond, t) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  }
  SUBCASE("static scale implies d0 scale^(-1/3)") {
    CHECK(pair_distance(StaticProfile{8.0}, spec, 1, 0.0) ==
          doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("coupling extrema for a = 1/4") {
  const ChainSpec spec = dimer_spec();
  const MotionProfile p = sinusoid(0.25, 1.0, kPi / 2);
  // closest approach at t = 0, farthest at t = pi
  CHECK(coupling_at(p, spec, 1, 0.0) == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(coupling_at(p, spec, 1, kPi) == doctest::Approx(8.0 / 27.0).epsilon(1e-13));
  CHECK(coupling_at(StaticProfile{1.0}, spec, 1, 3.3) == doctest::Approx(1.0));
}

TEST_CASE("coupling is periodic in the drive period") {
  const ChainSpec spec = dimer_spec();
  const double omega = 2.7;
  const MotionProfile p = sinusoid(0.2, omega, 0.4);
  const double period = 2.0 * kPi / omega;
  for (double t : {0.0, 0.31, 1.9, 4.4}) {
    const double j0 = coupling_at(p, spec, 1, t);
    const double j1 = coupling_at(p, spec, 1, t + period);
    CHECK(j1 == doctest::Approx(j0).epsilon(1e-12));
  }
}

TEST_CASE("hamiltonian snapshot") {
  ChainSpec spec;
  spec.n_sites = 3;
  spec.site_energies = {0.5, 0.5, 0.5};

  SUBCASE("vibronic disabled keeps the bare energies") {
    const auto h = hamiltonian_at(sinusoid(0.2, 1.0, 0.0), spec, {}, 0.7);
    CHECK(h.diagonal == std::vector<double>{0.5, 0.5, 0.5});
    CHECK(h.couplings.size() == 2);
    for (double j : h.couplings) CHECK(j > 0.0);
  }

  SUBCASE("vibronic with zero displacement keeps the bare energies") {
    NormalMode nm;
    nm.boundary = Boundary::Confined;
    nm.omega0 = 1.0;
    nm.mode_amplitudes.assign(3, 0.0);
    nm.mode_phases.assign(3, 0.0);
    const auto h = hamiltonian_at(nm, spec, VibronicCoupling{10.0, true}, 1.3);
    for (double e : h.diagonal) CHECK(e == doctest::Approx(0.5).epsilon(1e-15));
  }

  SUBCASE("vibronic detuning is rejected for bond-level geometry") {
    const VibronicCoupling vib{10.0, true};
    CHECK_THROWS_AS(hamiltonian_at(StaticProfile{1.0}, spec, vib, 0.0), NotApplicable);
    CHECK_THROWS_AS(hamiltonian_at(GaussianPulse{0.1, 1.0, 1.0}, spec, vib, 0.0),
                    NotApplicable);
  }

  SUBCASE("chi = 10 detuning is of the same order as the coupling (dimer, a = 1/4)") {
    const ChainSpec dimer = dimer_spec();
    const MotionProfile p = sinusoid(0.25, 1.0, kPi / 2);
    const VibronicCoupling vib{10.0, true};
    double max_detuning = 0.0, max_coupling = 0.0;
    for (int i = 0; i < 256; ++i) {
      const double t = 2.0 * kPi * i / 256;
      const auto h = hamiltonian_at(p, dimer, vib, t);
      max_detuning = std::max(max_detuning, std::abs(h.diagonal[0]));
      max_coupling = std::max(max_coupling, h.couplings[0]);
    }
    CHECK(max_detuning / max_coupling > 0.1);
    CHECK(max_detuning / max_coupling < 10.0);
  }

  SUBCASE("last site replicates the last bond's stretch") {
    NormalMode nm;
    nm.boundary = Boundary::Open;
    nm.omega0 = 1.0;
    nm.mode_amplitudes = {0.05, 0.0, 0.0};
    nm.mode_phases = {0.3, 0.0, 0.0};
    const MotionProfile p = nm;
    const double t = 0.9;
    const auto h = hamiltonian_at(p, spec, VibronicCoupling{7.0, true}, t);
    CHECK(h.diagonal[0] == doctest::Approx(0.5 + 7.0 * bond_stretch(p, spec, 1, t)));
    CHECK(h.diagonal[1] == doctest::Approx(0.5 + 7.0 * bond_stretch(p, spec, 2, t)));
    CHECK(h.diagonal[2] == doctest::Approx(0.5 + 7.0 * bond_stretch(p, spec, 2, t)));
  }
}

TEST_CASE("time-averaged coupling") {
  CHECK(time_averaged_coupling(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(time_averaged_coupling(0.25) == doctest::Approx(2.309401076758503).epsilon(1e-12));
  CHECK(time_averaged_coupling(0.25, 2.0) == doctest::Approx(4.618802153517006).epsilon(1e-12));
  CHECK_THROWS_AS(time_averaged_coupling(0.5), DomainError);
  CHECK_THROWS_AS(time_averaged_coupling(-0.1), DomainError);

  // closed form equals the period average of the modulated coupling
  const ChainSpec spec = dimer_spec();
  for (double a : {0.05, 0.1, 0.2, 0.25}) {
    const double omega = 2.0 * kPi;  // period 1
    const MotionProfile p = sinusoid(a, omega, 0.0);
    const double avg = quad::integrate(
        [&](double t) { return coupling_at(p, spec, 1, t); }, 0.0, 1.0, 1e-12, 16);
    CHECK(time_averaged_coupling(a) == doctest::Approx(avg).epsilon(1e-9));
  }
}

TEST_CASE("motion validation") {
  ChainSpec spec;
  spec.n_sites = 4;

  CHECK_THROWS_AS(validate_motion(sinusoid(0.6, 1.0, 0.0), spec), DomainError);
  CHECK_THROWS_AS(validate_motion(GaussianPulse{1.2, 1.0, 1.0}, spec), DomainError);
  CHECK_THROWS_AS(validate_motion(GaussianPulse{0.1, -1.0, 1.0}, spec), DomainError);
  CHECK_NOTHROW(validate_motion(GaussianPulse{1.0 / 6.0, 1.0, 2.5}, spec));

  NormalMode nm;
  nm.boundary = Boundary::Open;
  nm.omega0 = 1.0;
  nm.mode_amplitudes = {3.5, 0.0, 0.0, 0.0};  // bond 2-3 would close completely
  nm.mode_phases = {0.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(validate_motion(nm, spec), PositivityViolation);
  nm.mode_amplitudes[0] = 0.3;
  CHECK_NOTHROW(validate_motion(nm, spec));

  // excited open-chain null mode has a singular normalization
  nm.mode_amplitudes = {0.0, 0.0, 0.0, 0.1};
  CHECK_THROWS_AS(validate_motion(nm, spec), DomainError);
}

TEST_CASE("geometry stays positive over a period") {
  ChainSpec spec;
  spec.n_sites = 13;
  NormalMode nm;
  nm.boundary = Boundary::Open;
  nm.omega0 = 0.8;
  nm.mode_amplitudes.assign(13, 0.0);
  nm.mode_amplitudes[0] = 13.0 / 12.0;  // largest amplitude used in the scans
  nm.mode_phases.assign(13, 0.0);
  const MotionProfile p = nm;
  CHECK_NOTHROW(validate_motion(p, spec));
  const double period = 2.0 * kPi / mode_frequency(Boundary::Open, 0.8, 13, 1);
  for (int b = 1; b < 13; ++b)
    for (int i = 0; i < 128; ++i) {
      CHECK(pair_distance(p, spec, b, period * i / 128) > 0.0);
      CHECK(coupling_at(p, spec, b, period * i / 128) > 0.0);
    }
}

TEST_CASE("gaussian pulse leaves far bonds at the equilibrium coupling") {
  ChainSpec spec;
  spec.n_sites = 13;
  const MotionProfile p = GaussianPulse{1.0 / 6.0, 1.0, 0.0};
  for (int bond = 8; bond < 13; ++bond) {  // (n-1) d0 > 6 sigma
    const double j = coupling_at(p, spec, bond, 0.0);
    CHECK(std::abs(j - 1.0) < 1e-6);
  }
}

TEST_CASE("baseline couplings") {
  const ChainSpec spec = dimer_spec();
  const MotionProfile p = sinusoid(0.25, 4.54, kPi / 2);
  CHECK(baseline_couplings(p, spec, BaselineKind::J0) == std::vector<double>{1.0});
  CHECK(baseline_couplings(p, spec, BaselineKind::JMax)[0] == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(baseline_couplings(p, spec, BaselineKind::JAvg)[0] ==
        doctest::Approx(2.309401076758503).epsilon(1e-12));

  // single-mode closed form agrees with dense sampling of the coupling
  ChainSpec chain;
  chain.n_sites = 6;
  NormalMode nm;
  nm.boundary = Boundary::Open;
  nm.omega0 = 1.7;
  nm.mode_amplitudes.assign(6, 0.0);
  nm.mode_amplitudes[0] = 0.4;
  nm.mode_phases.assign(6, 0.9);
  const MotionProfile mode = nm;
  const auto jmax = baseline_couplings(mode, chain, BaselineKind::JMax);
  const double period = 2.0 * kPi / mode_frequency(Boundary::Open, 1.7, 6, 1);
  for (int b = 1; b < 6; ++b) {
    double sampled = 0.0;
    for (int i = 0; i < 20000; ++i)
      sampled = std::max(sampled, coupling_at(mode, chain, b, period * i / 20000));
    CHECK(jmax[static_cast<std::size_t>(b - 1)] ==
          doctest::Approx(sampled).epsilon(1e-6));
  }
}

TEST_CASE("with_frequency") {
  const MotionProfile p = sinusoid(0.2, 1.0, 0.0);
  const auto moved = with_frequency(p, 3.5);
  CHECK(std::get<PairwiseSinusoid>(moved).omega == 3.5);
  NormalMode nm;
  nm.omega0 = 1.0;
  nm.mode_amplitudes = {0.1, 0.0};
  const auto nm2 = with_frequency(nm, 2.2);
  CHECK(std::get<NormalMode>(nm2).omega0 == 2.2);
  CHECK_THROWS_AS(with_frequency(StaticProfile{1.0}, 2.0), NotApplicable);
  CHECK_THROWS_AS(with_frequency(GaussianPulse{0.1, 1, 1}, 2.0), NotApplicable);
}
