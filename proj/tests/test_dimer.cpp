#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "exciton/dimer.hpp"
#include "exciton/dynamics.hpp"

using namespace exciton;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("static sink population closed form") {
  CHECK(static_sink_population(0.0, 0.1, 0.5) == 0.0);
  // without dissipation everything is eventually trapped
  CHECK(static_sink_population(1.0, 0.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(static_sink_population(1.0, 0.1, 0.5) ==
        doctest::Approx(0.6738544474393531).epsilon(1e-14));
  CHECK(static_sink_population(8.0, 0.1, 0.5) ==
        doctest::Approx(0.713616698630748).epsilon(1e-14));
  CHECK_THROWS_AS(static_sink_population(1.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(static_sink_population(1.0, -0.1, 0.5), DomainError);
}

TEST_CASE("dimer populations") {
  SUBCASE("initial condition") {
    DimerParams p;
    p.a = 0.25;
    p.omega = 4.54;
    p.phi = kPi / 2;
    p.gamma1 = 0.6;
    p.gamma2 = 0.1;
    p.gamma_sink = 0.5;
    const auto [p1, p2] = dimer_populations(p, 0.0);
    CHECK(p1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p2 == doctest::Approx(0.0));
  }
  SUBCASE("quarter Rabi cycle of the lossless static dimer") {
    DimerParams p;  // a = 0, all rates 0: Gamma condition holds trivially
    const auto [p1, p2] = dimer_populations(p, kPi / 2);
    CHECK(p1 == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(p2 == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("total population decays exactly as exp(-2 Gamma t)") {
    DimerParams p;
    p.a = 0.25;
    p.omega = 2.2;
    p.phi = 0.7;
    p.gamma1 = 0.45;
    p.gamma2 = 0.15;
    p.gamma_sink = 0.3;
    for (double t : {0.0, 0.4, 1.3, 3.7, 8.0}) {
      const auto [p1, p2] = dimer_populations(p, t);
      CHECK(p1 + p2 == doctest::Approx(std::exp(-2.0 * 0.45 * t)).epsilon(1e-12));
    }
  }
  SUBCASE("the Gamma condition is enforced") {
    DimerParams p;
    p.gamma1 = 0.2;
    p.gamma2 = 0.1;
    p.gamma_sink = 0.5;
    CHECK_THROWS_AS(dimer_populations(p, 1.0), GammaConditionViolated);
    CHECK_THROWS_AS(analytic_sink_population(p, 1.0), GammaConditionViolated);
  }
}

TEST_CASE("analytic sink population") {
  DimerParams p;
  p.gamma1 = 0.6;
  p.gamma2 = 0.1;
  p.gamma_sink = 0.5;

  CHECK(analytic_sink_population(p, 0.0) == 0.0);

  SUBCASE("no sink rate, no sink population") {
    DimerParams q;
    q.gamma1 = 0.2;
    q.gamma2 = 0.2;
    q.gamma_sink = 0.0;
    for (double t : {0.5, 2.0, 9.0}) CHECK(analytic_sink_population(q, t) == 0.0);
  }

  SUBCASE("static long-time limit matches the rate-balance closed form") {
    // Under the Gamma condition the asymptotic value is
    // gamma_S J^2 / (2 Gamma (Gamma^2 + J^2)); for J = 1, Gamma = 0.6,
    // gamma_S = 0.5 this evaluates to 0.5/1.632.
    const double expected = 0.5 / 1.632;
    CHECK(analytic_sink_population(p, 60.0) == doctest::Approx(expected).epsilon(1e-8));
  }

  SUBCASE("long-time limit agrees with numeric propagation") {
    IntegratorConfig cfg;
    cfg.record_trajectory = false;
    ChainSpec spec;
    spec.n_sites = 2;
    ChannelSpec ch;
    ch.gamma = {0.6, 0.1};
    ch.gamma_sink = 0.5;
    const double numeric =
        propagate_static(spec, {1.0}, ch, cfg).asymptotic_sink;
    CHECK(analytic_sink_population(p, 60.0) == doctest::Approx(numeric).epsilon(1e-5));
  }
}

TEST_CASE("moving-dimer analytic sink agrees with numerics") {
  DimerParams p;
  p.a = 0.25;
  p.omega = 4.54;
  p.phi = kPi / 2;
  p.gamma1 = 0.6;
  p.gamma2 = 0.1;
  p.gamma_sink = 0.5;

  ChainSpec spec;
  spec.n_sites = 2;
  ChannelSpec ch;
  ch.gamma = {0.6, 0.1};
  ch.gamma_sink = 0.5;
  IntegratorConfig cfg;
  cfg.record_trajectory = false;
  cfg.t_max = 25.0;
  cfg.convergence_tol = 1e-30;
  const auto rec = propagate(spec, PairwiseSinusoid{{0.25}, 4.54, {kPi / 2}}, {},
                             ch, cfg);
  CHECK(analytic_sink_population(p, 25.0) ==
        doctest::Approx(rec.asymptotic_sink).epsilon(1e-5));
}

TEST_CASE("extremal frequency estimates") {
  CHECK(extremal_frequency(0.25, ExtremumKind::Max, 0) ==
        doctest::Approx(4.618802153517006).epsilon(1e-12));
  CHECK(extremal_frequency(0.25, ExtremumKind::Min, 1) ==
        doctest::Approx(2.309401076758503).epsilon(1e-12));
  CHECK(extremal_frequency(0.25, ExtremumKind::Max, 1) ==
        doctest::Approx(1.5396007178390019).epsilon(1e-12));
  CHECK_THROWS_AS(extremal_frequency(0.25, ExtremumKind::Min, 0), DomainError);
  CHECK_THROWS_AS(extremal_frequency(0.6, ExtremumKind::Max, 0), DomainError);
}

TEST_CASE("phase integral reduces to J t for a static coupling") {
  DimerParams p;
  p.j0 = 1.3;
  for (double t : {0.5, 2.0, 11.0})
    CHECK(coupling_phase_integral(p, t) == doctest::Approx(1.3 * t).epsilon(1e-10));
}

TEST_CASE("dimer parameter validation") {
  DimerParams p;
  p.a = 0.5;
  CHECK_THROWS_AS(validate(p), DomainError);
  p.a = 0.25;
  p.gamma2 = -0.1;
  CHECK_THROWS_AS(validate(p), DomainError);
}
