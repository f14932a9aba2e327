// Compares the serial reference grid evaluation against the OpenMP path on a
// dimer frequency sweep. Both must produce identical numbers; only the wall
// time differs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "exciton/grid.hpp"
#include "exciton/sweeps.hpp"

namespace {

exciton::SweepConfig dimer_config() {
  exciton::SweepConfig cfg;
  cfg.chain.n_sites = 2;
  cfg.profile = exciton::PairwiseSinusoid{{0.25}, 4.54, {1.5707963267948966}};
  cfg.channels.gamma = {0.1};
  cfg.channels.gamma_sink = 0.5;
  cfg.integrator.record_trajectory = false;
  return cfg;
}

double time_sweep(const exciton::SweepConfig& cfg,
                  const std::vector<double>& grid, double* checksum) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto points = exciton::frequency_sweep(cfg, grid);
  const auto t1 = std::chrono::steady_clock::now();
  double sum = 0.0;
  for (const auto& p : points) sum += p.p_sink;
  *checksum = sum;
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const double omega_max = argc > 1 ? std::stod(argv[1]) : 12.0;
  const auto grid = exciton::linear_grid(0.5, omega_max, 0.05);

  exciton::SweepConfig cfg = dimer_config();
  std::printf("dimer frequency sweep, %zu grid points\n", grid.size());

  cfg.workers = 1;
  double serial_sum = 0.0;
  const double serial = time_sweep(cfg, grid, &serial_sum);
  std::printf("%-10s %8.3f s   checksum %.12g\n", "serial", serial, serial_sum);

  for (int workers : {2, 4, exciton::default_workers()}) {
    if (workers <= 1) continue;
    cfg.workers = workers;
    double sum = 0.0;
    const double t = time_sweep(cfg, grid, &sum);
    std::printf("%-2d workers %8.3f s   checksum %.12g   speedup %.2fx%s\n",
                workers, t, sum, serial / t,
                sum == serial_sum ? "" : "   MISMATCH");
  }
  return 0;
}
