#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "exciton/classical.hpp"
#include "exciton/quadrature.hpp"

using namespace exciton;

namespace {

constexpr double kPi = std::numbers::pi;

ChainSpec chain_of(int n) {
  ChainSpec s;
  s.n_sites = n;
  return s;
}

ChannelSpec rates(double gamma, double gamma_sink) {
  return ChannelSpec{{gamma}, gamma_sink, 0.0};
}

IntegratorConfig lean_cfg(double t_max = 500.0) {
  IntegratorConfig cfg;
  cfg.t_max = t_max;
  cfg.record_trajectory = false;
  return cfg;
}

}  // namespace

TEST_CASE("hopping rate") {
  CHECK(hopping_rate(0.0, 1.0) == 0.0);
  CHECK(hopping_rate(1.0, 1.0) == 1.0);
  CHECK(hopping_rate(2.0, 1.0) == doctest::Approx(4.0));  // quadratic in J
  CHECK(hopping_rate(3.0, 0.5) == doctest::Approx(4.5));
  CHECK_THROWS_AS(hopping_rate(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(hopping_rate(1.0, 0.0), DomainError);
}

TEST_CASE("rate model mirrors the quantum decay rates") {
  const auto m = make_rate_model(ChannelSpec{{0.1, 0.2, 0.3}, 0.5, 0.0}, 3, 2.0);
  CHECK(m.hop_scale == 2.0);
  CHECK(m.loss_rates == std::vector<double>{0.2, 0.4, 0.6});
  CHECK(m.sink_rate == doctest::Approx(1.0));
  CHECK(m.detailed_balance);
}

TEST_CASE("diffusive equilibration without losses reaches 1/N") {
  // uniform static rates, no dissipation, no sink
  IntegratorConfig cfg;
  cfg.t_max = 60.0;
  const int n = 4;
  const auto rec = propagate_classical_static(chain_of(n), {1.0, 1.0, 1.0},
                                              rates(0, 0), 1.0, cfg);
  CHECK(rec.termination == Termination::TimeCapped);
  for (double p : rec.site_populations.back())
    CHECK(p == doctest::Approx(1.0 / n).epsilon(1e-8));
}

TEST_CASE("population stays put when every rate vanishes") {
  IntegratorConfig cfg;
  cfg.t_max = 10.0;
  const auto rec =
      propagate_classical_static(chain_of(3), {0.0, 0.0}, rates(0, 0), 1.0, cfg);
  CHECK(rec.site_populations.back()[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rec.asymptotic_sink == 0.0);
}

TEST_CASE("classical sink population is monotone in the static hopping rate") {
  double previous = -1.0;
  for (double j : {0.2, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double p = propagate_classical_static(chain_of(2), {j}, rates(0.1, 0.5),
                                                1.0, lean_cfg())
                         .asymptotic_sink;
    CHECK(p >= previous);
    previous = p;
  }
}

TEST_CASE("uniform chain is mirror symmetric") {
  IntegratorConfig cfg;
  cfg.t_max = 3.0;
  const auto fwd = propagate_classical_static(chain_of(3), {1.0, 1.0},
                                              rates(0, 0), 1.0, cfg, 1);
  const auto bwd = propagate_classical_static(chain_of(3), {1.0, 1.0},
                                              rates(0, 0), 1.0, cfg, 3);
  const auto& pf = fwd.site_populations.back();
  const auto& pb = bwd.site_populations.back();
  CHECK(pf[0] == doctest::Approx(pb[2]).epsilon(1e-9));
  CHECK(pf[1] == doctest::Approx(pb[1]).epsilon(1e-9));
}

TEST_CASE("probability bookkeeping holds for moving classical chains") {
  IntegratorConfig cfg;
  const MotionProfile motion = PairwiseSinusoid{{0.25}, 4.54, {kPi / 2}};
  const auto rec =
      propagate_classical(chain_of(2), motion, rates(0.1, 0.5), 1.0, cfg);
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    double total = rec.sink_population[i] + rec.loss[i];
    for (double p : rec.site_populations[i]) {
      CHECK(p >= -1e-8);
      total += p;
    }
    CHECK(std::abs(total - 1.0) < 1e-7);
  }
}

TEST_CASE("moving chains never beat the maximally coupled static chain") {
  const MotionProfile motion = PairwiseSinusoid{{0.25}, 1.0, {kPi / 2}};
  std::vector<double> grid;
  for (double w = 0.3; w < 20.0; w += 0.8) grid.push_back(w);
  grid.push_back(4.54);
  std::sort(grid.begin(), grid.end());
  const auto points = classical_enhancement(chain_of(2), motion, rates(0.1, 0.5),
                                            1.0, lean_cfg(), grid, 1);
  for (const auto& p : points) {
    CHECK(p.delta == p.p_sink - p.p_static_ref);
    CHECK(p.delta <= 1e-6);
  }
}

TEST_CASE("zero amplitude yields zero classical enhancement") {
  // a = 0 makes J_max = J0, so the moving chain and its reference coincide
  const MotionProfile motion = PairwiseSinusoid{{0.0}, 1.0, {0.0}};
  const auto points = classical_enhancement(chain_of(2), motion, rates(0.1, 0.5),
                                            1.0, lean_cfg(), {1.0, 3.0}, 1);
  for (const auto& p : points) CHECK(std::abs(p.delta) < 1e-9);
}

TEST_CASE("fast driving approaches the time-averaged rate") {
  // k_avg = c <J^2> over one period; at omega >> J the moving chain behaves
  // like a static chain with that rate, which can never exceed c J_max^2
  const double a = 0.25;
  const MotionProfile motion = PairwiseSinusoid{{a}, 400.0, {0.0}};
  const double mean_j2 =
      quad::integrate(
          [&](double th) {
            const double s = 1.0 - 2.0 * a * std::sin(th);
            return 1.0 / std::pow(s, 6.0);
          },
          0.0, 2.0 * kPi, 1e-12, 16) /
      (2.0 * kPi);
  const double fast =
      propagate_classical(chain_of(2), motion, rates(0.1, 0.5), 1.0, lean_cfg())
          .asymptotic_sink;
  const double averaged =
      propagate_classical_static(chain_of(2), {std::sqrt(mean_j2)},
                                 rates(0.1, 0.5), 1.0, lean_cfg())
          .asymptotic_sink;
  CHECK(fast == doctest::Approx(averaged).epsilon(1e-3));
  const double max_rate =
      propagate_classical_static(chain_of(2), {8.0}, rates(0.1, 0.5), 1.0,
                                 lean_cfg())
          .asymptotic_sink;
  CHECK(averaged <= max_rate);
}
