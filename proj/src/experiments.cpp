#include "exciton/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>

#include "exciton/classical.hpp"
#include "exciton/csv.hpp"
#include "exciton/dimer.hpp"
#include "exciton/grid.hpp"

namespace exciton {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string>& all_experiments() {
  static const std::vector<std::string> names = {
      "dimer-sweep",      "dimer-phase-ensemble", "dimer-amplitude",
      "chain-modes",      "chain-length-scan",    "dephasing-scan",
      "pulse-grid",       "classical-compare",    "trajectory"};
  return names;
}

void set_common_defaults(Config& c) {
  c.set("chain.n_sites", "2");
  c.set("chain.d0", "1");
  c.set("chain.j0", "1");
  c.set("chain.site_energies", "0");
  c.set("channels.gamma", "0.1");
  c.set("channels.gamma_sink", "0.5");
  c.set("channels.gamma_deph", "0");
  c.set("vibronic.enabled", "false");
  c.set("vibronic.chi", "0");
  c.set("integrator.rel_tol", "1e-8");
  c.set("integrator.abs_tol", "1e-10");
  c.set("integrator.t_max", "500");
  c.set("integrator.convergence_tol", "1e-9");
}

void set_dimer_motion(Config& c) {
  c.set("motion.kind", "pairwise_sinusoid");
  c.set("motion.amplitudes", "0.25");
  c.set("motion.omega", "4.54");
  c.set("motion.phases", "1.5707963267948966");  // pi/2, closest at t = 0
}

Config make_default(const std::string& experiment) {
  Config c;
  c.set("experiment", experiment);
  set_common_defaults(c);
  if (experiment == "dimer-sweep") {
    set_dimer_motion(c);
    c.set("sweep.omega_min", "0.5");
    c.set("sweep.omega_max", "20");
    c.set("sweep.omega_step", "0.02");
    c.set("sweep.reference", "j_max");
  } else if (experiment == "dimer-phase-ensemble") {
    set_dimer_motion(c);
    c.set("sweep.omega_min", "0.5");
    c.set("sweep.omega_max", "20");
    c.set("sweep.omega_step", "0.1");
    c.set("ensemble.n_phases", "50");
  } else if (experiment == "dimer-amplitude") {
    set_dimer_motion(c);
    c.set("amp.values", "0.02,0.04,0.07,0.1,0.14,0.18,0.22,0.25");
    c.set("amp.grid_points", "41");
    c.set("sweep.reference", "j_max");
  } else if (experiment == "chain-modes") {
    c.set("chain.n_sites", "13");
    c.set("motion.kind", "normal_mode");
    c.set("motion.boundary", "confined");
    c.set("motion.omega0", "1");
    c.set("motion.mode", "1");
    c.set("motion.mode_amplitude", "0.041666666666666664");  // 1/24
    c.set("motion.mode_phase", "3.141592653589793");
    c.set("modes.q_values", "1,2,13");
    c.set("sweep.omega0_min", "0.1");
    c.set("sweep.omega0_max", "4");
    c.set("sweep.omega0_step", "0.05");
    c.set("sweep.reference", "j0");
  } else if (experiment == "chain-length-scan") {
    c.set("chain.n_sites", "13");  // overridden per scan point
    c.set("motion.kind", "normal_mode");
    c.set("motion.boundary", "open");
    c.set("motion.omega0", "1");
    c.set("motion.mode", "1");
    c.set("motion.mode_amplitude", "0.25");  // overridden per scan point
    c.set("motion.mode_phase", "0");
    c.set("scan.n_min", "4");
    c.set("scan.n_max", "13");
    c.set("scan.amplitude_factor", "0.020833333333333332");  // a = N/48
    c.set("scan.mode_freq_min", "0.2");
    c.set("scan.mode_freq_max", "4");
    c.set("scan.mode_freq_step", "0.05");
    c.set("sweep.reference", "j_max");
  } else if (experiment == "dephasing-scan") {
    c.set("chain.n_sites", "13");
    c.set("motion.kind", "normal_mode");
    c.set("motion.boundary", "open");
    c.set("motion.omega0", "1");
    c.set("motion.mode", "1");
    c.set("motion.mode_amplitude", "0.25");
    c.set("motion.mode_phase", "0");
    c.set("scan.n_values", "4,5,6,7,8,9,10");
    c.set("scan.amplitude_factor", "0.020833333333333332");
    c.set("scan.mode_freq_min", "0.2");
    c.set("scan.mode_freq_max", "4");
    c.set("scan.mode_freq_step", "0.05");
    c.set("deph.gamma_values", "0,0.005,0.01,0.02,0.05,0.1,0.2,0.5,1");
    c.set("deph.gamma_max", "10");
    c.set("sweep.reference", "j_max");
  } else if (experiment == "pulse-grid") {
    c.set("chain.n_sites", "13");
    c.set("motion.kind", "gaussian_pulse");
    c.set("motion.strength", "0.16666666666666666");  // A = 1/6
    c.set("motion.width", "1");
    c.set("motion.speed", "0");
    c.set("pulse.v_min", "0.5");
    c.set("pulse.v_max", "6");
    c.set("pulse.v_step", "0.25");
    c.set("pulse.sigma_min", "0.5");
    c.set("pulse.sigma_max", "8");
    c.set("pulse.sigma_step", "0.5");
    c.set("pulse.refine_rounds", "3");
  } else if (experiment == "classical-compare") {
    set_dimer_motion(c);
    c.set("classical.hop_scale", "1");
    c.set("sweep.omega_min", "0.5");
    c.set("sweep.omega_max", "20");
    c.set("sweep.omega_step", "0.02");
    c.set("sweep.reference", "j_max");
  } else if (experiment == "trajectory") {
    set_dimer_motion(c);
    c.set("trajectory.initial_site", "1");
    c.set("trajectory.kind", "quantum");
    c.set("classical.hop_scale", "1");
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  return c;
}

Boundary parse_boundary(const Config& c) {
  const std::string b = c.get_str("motion.boundary");
  if (b == "confined") return Boundary::Confined;
  if (b == "open") return Boundary::Open;
  throw ConfigError("motion.boundary must be 'confined' or 'open'");
}

BaselineKind parse_reference(const Config& c) {
  if (!c.has("sweep.reference")) return BaselineKind::JMax;
  const std::string r = c.get_str("sweep.reference");
  if (r == "j0") return BaselineKind::J0;
  if (r == "j_avg") return BaselineKind::JAvg;
  if (r == "j_max") return BaselineKind::JMax;
  throw ConfigError("sweep.reference must be one of j0, j_avg, j_max");
}

MotionProfile parse_motion(const Config& c, int n_sites) {
  const std::string kind = c.get_str("motion.kind");
  if (kind == "static") {
    return StaticProfile{c.get_double("motion.scale")};
  }
  if (kind == "pairwise_sinusoid") {
    PairwiseSinusoid pw;
    pw.amplitudes = c.get_list("motion.amplitudes");
    pw.omega = c.get_double("motion.omega");
    pw.phases = c.get_list("motion.phases");
    return pw;
  }
  if (kind == "normal_mode") {
    NormalMode nm;
    nm.boundary = parse_boundary(c);
    nm.omega0 = c.get_double("motion.omega0");
    const int q = c.get_int("motion.mode");
    if (q < 1 || q > n_sites)
      throw ConfigError("motion.mode must be in [1, n_sites]");
    nm.mode_amplitudes.assign(static_cast<std::size_t>(n_sites), 0.0);
    nm.mode_amplitudes[static_cast<std::size_t>(q - 1)] =
        c.get_double("motion.mode_amplitude");
    nm.mode_phases.assign(static_cast<std::size_t>(n_sites), 0.0);
    nm.mode_phases[static_cast<std::size_t>(q - 1)] =
        c.get_double("motion.mode_phase");
    return nm;
  }
  if (kind == "gaussian_pulse") {
    GaussianPulse gp;
    gp.strength = c.get_double("motion.strength");
    gp.width = c.get_double("motion.width");
    gp.speed = c.get_double("motion.speed");
    return gp;
  }
  throw ConfigError(
      "motion.kind must be one of static, pairwise_sinusoid, normal_mode, "
      "gaussian_pulse");
}

std::set<std::string> motion_keys(const std::string& kind) {
  if (kind == "static") return {"motion.kind", "motion.scale"};
  if (kind == "pairwise_sinusoid")
    return {"motion.kind", "motion.amplitudes", "motion.omega", "motion.phases"};
  if (kind == "normal_mode")
    return {"motion.kind",           "motion.boundary", "motion.omega0",
            "motion.mode",           "motion.mode_amplitude",
            "motion.mode_phase"};
  if (kind == "gaussian_pulse")
    return {"motion.kind", "motion.strength", "motion.width", "motion.speed"};
  throw ConfigError("motion.kind must be one of static, pairwise_sinusoid, "
                    "normal_mode, gaussian_pulse");
}

std::set<std::string> allowed_keys(const std::string& experiment,
                                   const std::string& motion_kind) {
  std::set<std::string> keys = {
      "experiment",
      "chain.n_sites", "chain.d0", "chain.j0", "chain.site_energies",
      "channels.gamma", "channels.gamma_sink", "channels.gamma_deph",
      "vibronic.enabled", "vibronic.chi",
      "integrator.rel_tol", "integrator.abs_tol", "integrator.t_max",
      "integrator.convergence_tol"};
  const auto mk = motion_keys(motion_kind);
  keys.insert(mk.begin(), mk.end());
  if (experiment == "dimer-sweep") {
    keys.insert({"sweep.omega_min", "sweep.omega_max", "sweep.omega_step",
                 "sweep.reference"});
  } else if (experiment == "dimer-phase-ensemble") {
    keys.insert({"sweep.omega_min", "sweep.omega_max", "sweep.omega_step",
                 "ensemble.n_phases"});
  } else if (experiment == "dimer-amplitude") {
    keys.insert({"amp.values", "amp.grid_points", "sweep.reference"});
  } else if (experiment == "chain-modes") {
    keys.insert({"modes.q_values", "sweep.omega0_min", "sweep.omega0_max",
                 "sweep.omega0_step", "sweep.reference"});
  } else if (experiment == "chain-length-scan") {
    keys.insert({"scan.n_min", "scan.n_max", "scan.amplitude_factor",
                 "scan.mode_freq_min", "scan.mode_freq_max",
                 "scan.mode_freq_step", "sweep.reference"});
  } else if (experiment == "dephasing-scan") {
    keys.insert({"scan.n_values", "scan.amplitude_factor",
                 "scan.mode_freq_min", "scan.mode_freq_max",
                 "scan.mode_freq_step", "deph.gamma_values", "deph.gamma_max",
                 "sweep.reference"});
  } else if (experiment == "pulse-grid") {
    keys.insert({"pulse.v_min", "pulse.v_max", "pulse.v_step",
                 "pulse.sigma_min", "pulse.sigma_max", "pulse.sigma_step",
                 "pulse.refine_rounds"});
  } else if (experiment == "classical-compare") {
    keys.insert({"classical.hop_scale", "sweep.omega_min", "sweep.omega_max",
                 "sweep.omega_step", "sweep.reference"});
  } else if (experiment == "trajectory") {
    keys.insert({"trajectory.initial_site", "trajectory.kind",
                 "classical.hop_scale"});
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  return keys;
}

// Chain scans vary n_sites, so per-site vectors must be uniform.
double uniform_entry(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (x != v.front())
      throw ConfigError(std::string("chain-length scans need a uniform ") + what);
  return v.empty() ? 0.0 : v.front();
}

SweepConfig resized_chain(const SweepConfig& s, int n) {
  SweepConfig point = s;
  point.chain.n_sites = n;
  if (!s.chain.site_energies.empty())
    point.chain.site_energies.assign(
        static_cast<std::size_t>(n),
        uniform_entry(s.chain.site_energies, "chain.site_energies"));
  point.channels.gamma.assign(
      static_cast<std::size_t>(n),
      uniform_entry(s.channels.gamma, "channels.gamma"));
  return point;
}

// Breathing-mode profile for the length and dephasing scans.
NormalMode breathing_profile(int n, double amplitude, double phase) {
  NormalMode nm;
  nm.boundary = Boundary::Open;
  nm.omega0 = 1.0;
  nm.mode_amplitudes.assign(static_cast<std::size_t>(n), 0.0);
  nm.mode_amplitudes[0] = amplitude;
  nm.mode_phases.assign(static_cast<std::size_t>(n), 0.0);
  nm.mode_phases[0] = phase;
  return nm;
}

std::vector<std::string> sweep_row(double param, double p_sink,
                                   BaselineKind kind, double baseline) {
  return {csv::format_double(param), csv::format_double(p_sink),
          baseline_name(kind), csv::format_double(baseline),
          csv::format_double(p_sink - baseline)};
}

const std::vector<std::string> kSweepHeader = {"param", "p_sink",
                                               "baseline_kind",
                                               "baseline_value", "delta"};

}  // namespace

std::vector<std::string> experiment_names() { return all_experiments(); }

Config default_config(const std::string& experiment) {
  return make_default(experiment);
}

Config resolve_config(const std::string& experiment, const Config& overrides) {
  if (overrides.has("experiment") &&
      overrides.get_str("experiment") != experiment)
    throw ConfigError("config is for experiment '" +
                      overrides.get_str("experiment") +
                      "', requested '" + experiment + "'");
  const Config preset = make_default(experiment);
  Config c = preset;
  c.merge(overrides);
  c.set("experiment", experiment);
  // switching motion.kind strands the preset's keys for the old kind; drop
  // any motion key that is not valid for the new kind and still carries its
  // preset value (user-supplied stale keys stay and are rejected)
  if (c.has("motion.kind")) {
    try {
      const auto valid = motion_keys(c.get_str("motion.kind"));
      std::vector<std::string> stale;
      for (const auto& [key, value] : c.entries())
        if (key.rfind("motion.", 0) == 0 && !valid.count(key) &&
            preset.has(key) && preset.get_str(key) == value &&
            !overrides.has(key))
          stale.push_back(key);
      for (const auto& key : stale) c.erase(key);
    } catch (const ConfigError&) {
      // invalid kind: leave everything for validate_config to report
    }
  }
  return c;
}

SweepConfig build_sweep_config(const Config& c) {
  SweepConfig s;
  s.chain.n_sites = c.get_int("chain.n_sites");
  s.chain.d0 = c.get_double("chain.d0");
  s.chain.j0 = c.get_double("chain.j0");
  // single values broadcast over the chain
  s.chain.site_energies = c.get_list("chain.site_energies");
  if (s.chain.site_energies.size() == 1) {
    if (s.chain.site_energies[0] == 0.0)
      s.chain.site_energies.clear();
    else
      s.chain.site_energies.assign(static_cast<std::size_t>(s.chain.n_sites),
                                   s.chain.site_energies[0]);
  }
  s.channels.gamma = c.get_list("channels.gamma");
  if (s.channels.gamma.size() == 1 && s.chain.n_sites > 1)
    s.channels.gamma.assign(static_cast<std::size_t>(s.chain.n_sites),
                            s.channels.gamma[0]);
  s.channels.gamma_sink = c.get_double("channels.gamma_sink");
  s.channels.gamma_deph = c.get_double("channels.gamma_deph");
  s.vib.enabled = c.get_bool("vibronic.enabled");
  s.vib.chi = c.get_double("vibronic.chi");
  s.integrator.rel_tol = c.get_double("integrator.rel_tol");
  s.integrator.abs_tol = c.get_double("integrator.abs_tol");
  s.integrator.t_max = c.get_double("integrator.t_max");
  s.integrator.convergence_tol = c.get_double("integrator.convergence_tol");
  s.profile = parse_motion(c, s.chain.n_sites);
  s.reference = parse_reference(c);
  return s;
}

std::vector<std::string> validate_config(const std::string& experiment,
                                         const Config& config) {
  std::vector<std::string> problems;
  const auto found = std::find(all_experiments().begin(),
                               all_experiments().end(), experiment);
  if (found == all_experiments().end()) {
    problems.push_back("unknown experiment '" + experiment + "'");
    return problems;
  }
  std::string kind = "pairwise_sinusoid";
  try {
    kind = config.get_str("motion.kind");
    motion_keys(kind);
  } catch (const Error& e) {
    problems.push_back(e.what());
  }
  std::set<std::string> allowed;
  try {
    allowed = allowed_keys(experiment, kind);
  } catch (const Error& e) {
    problems.push_back(e.what());
    return problems;
  }
  for (const auto& [key, value] : config.entries())
    if (!allowed.count(key))
      problems.push_back("unknown key '" + key + "' for experiment " + experiment);
  for (const auto& key : allowed)
    if (!config.has(key))
      problems.push_back("missing key '" + key + "'");
  if (!problems.empty()) return problems;

  try {
    SweepConfig s = build_sweep_config(config);
    validate(s.chain);
    validate(s.channels, s.chain.n_sites);
    validate(s.integrator);
    validate_motion(s.profile, s.chain);
    if (experiment == "trajectory") {
      const int site = config.get_int("trajectory.initial_site");
      if (site < 1 || site > s.chain.n_sites)
        problems.push_back("trajectory.initial_site out of range");
      const std::string kind = config.get_str("trajectory.kind");
      if (kind != "quantum" && kind != "classical")
        problems.push_back("trajectory.kind must be 'quantum' or 'classical'");
      if (!(config.get_double("classical.hop_scale") > 0.0))
        problems.push_back("classical.hop_scale must be > 0");
    }
    if (config.has("sweep.omega_min"))
      linear_grid(config.get_double("sweep.omega_min"),
                  config.get_double("sweep.omega_max"),
                  config.get_double("sweep.omega_step"));
    if (config.has("sweep.omega0_min"))
      linear_grid(config.get_double("sweep.omega0_min"),
                  config.get_double("sweep.omega0_max"),
                  config.get_double("sweep.omega0_step"));
    if (config.has("scan.mode_freq_min"))
      linear_grid(config.get_double("scan.mode_freq_min"),
                  config.get_double("scan.mode_freq_max"),
                  config.get_double("scan.mode_freq_step"));
    if (config.has("pulse.v_min")) {
      linear_grid(config.get_double("pulse.v_min"),
                  config.get_double("pulse.v_max"),
                  config.get_double("pulse.v_step"));
      linear_grid(config.get_double("pulse.sigma_min"),
                  config.get_double("pulse.sigma_max"),
                  config.get_double("pulse.sigma_step"));
    }
    if (config.has("ensemble.n_phases") &&
        config.get_int("ensemble.n_phases") < 1)
      problems.push_back("ensemble.n_phases must be >= 1");
    if (config.has("classical.hop_scale") &&
        !(config.get_double("classical.hop_scale") > 0.0))
      problems.push_back("classical.hop_scale must be > 0");
  } catch (const Error& e) {
    problems.push_back(e.what());
  }
  return problems;
}

namespace {

struct Emitter {
  fs::path dir;
  std::vector<std::string> files;

  void write(const std::string& name, const csv::Table& table) {
    table.write_file((dir / name).string());
    files.push_back(name);
  }
};

void run_dimer_sweep(const Config& c, SweepConfig s, Emitter& out) {
  const auto grid = linear_grid(c.get_double("sweep.omega_min"),
                                c.get_double("sweep.omega_max"),
                                c.get_double("sweep.omega_step"));
  const auto points = frequency_sweep(s, grid);
  csv::Table t(kSweepHeader);
  for (const auto& p : points)
    t.add_row(sweep_row(p.param, p.p_sink, s.reference, p.p_static_ref));
  out.write("dimer_sweep.csv", t);
}

void run_phase_ensemble(const Config& c, SweepConfig s, Emitter& out) {
  const auto grid = linear_grid(c.get_double("sweep.omega_min"),
                                c.get_double("sweep.omega_max"),
                                c.get_double("sweep.omega_step"));
  const auto ens = phase_ensemble(s, grid, c.get_int("ensemble.n_phases"));
  csv::Table t({"omega", "mean", "env_min", "env_max"});
  for (std::size_t i = 0; i < ens.omegas.size(); ++i)
    t.add_row(std::vector<double>{ens.omegas[i], ens.mean[i], ens.env_min[i],
                                  ens.env_max[i]});
  out.write("phase_ensemble.csv", t);
}

void run_dimer_amplitude(const Config& c, SweepConfig s, Emitter& out) {
  const auto amplitudes = c.get_list("amp.values");
  const int grid_points = c.get_int("amp.grid_points");
  if (grid_points < 5) throw ConfigError("amp.grid_points must be >= 5");
  csv::Table t(kSweepHeader);
  for (double a : amplitudes) {
    SweepConfig point = s;
    auto& pw = std::get<PairwiseSinusoid>(point.profile);
    pw.amplitudes.assign(1, a);
    // bracket the m = 0 resonance predicted by the locking estimate
    const double est = 2.0 * time_averaged_coupling(a, s.chain.j0);
    const auto grid = linear_grid(0.5 * est, 1.6 * est,
                                  1.1 * est / (grid_points - 1));
    const auto opt = optimal_frequency(point, grid);
    const double ref = static_reference(point);
    t.add_row(sweep_row(a, opt.p_sink, point.reference, ref));
  }
  out.write("amplitude_scan.csv", t);
}

void run_chain_modes(const Config& c, SweepConfig s, Emitter& out) {
  const auto q_values = c.get_list("modes.q_values");
  const auto grid = linear_grid(c.get_double("sweep.omega0_min"),
                                c.get_double("sweep.omega0_max"),
                                c.get_double("sweep.omega0_step"));
  const double amplitude = c.get_double("motion.mode_amplitude");
  const double phase = c.get_double("motion.mode_phase");
  for (double qv : q_values) {
    const int q = static_cast<int>(qv);
    SweepConfig point = s;
    auto& nm = std::get<NormalMode>(point.profile);
    nm.mode_amplitudes.assign(static_cast<std::size_t>(s.chain.n_sites), 0.0);
    nm.mode_phases.assign(static_cast<std::size_t>(s.chain.n_sites), 0.0);
    if (q < 1 || q > s.chain.n_sites)
      throw ConfigError("modes.q_values entry out of range");
    nm.mode_amplitudes[static_cast<std::size_t>(q - 1)] = amplitude;
    nm.mode_phases[static_cast<std::size_t>(q - 1)] = phase;
    const auto points = frequency_sweep(point, grid);
    csv::Table t(kSweepHeader);
    for (const auto& p : points)
      t.add_row(sweep_row(p.param, p.p_sink, s.reference, p.p_static_ref));
    out.write("chain_modes_q" + std::to_string(q) + ".csv", t);
  }
}

void run_chain_length_scan(const Config& c, SweepConfig s, Emitter& out) {
  const int n_min = c.get_int("scan.n_min");
  const int n_max = c.get_int("scan.n_max");
  if (n_min < 2 || n_max < n_min) throw ConfigError("invalid scan.n_min/n_max");
  const double factor = c.get_double("scan.amplitude_factor");
  const auto freq_grid = linear_grid(c.get_double("scan.mode_freq_min"),
                                     c.get_double("scan.mode_freq_max"),
                                     c.get_double("scan.mode_freq_step"));
  const double phase = c.get_double("motion.mode_phase");
  csv::Table summary(
      {"n", "omega_opt", "delta_opt", "p_sink", "baseline_value"});
  for (int n = n_min; n <= n_max; ++n) {
    SweepConfig point = resized_chain(s, n);
    point.profile = breathing_profile(n, factor * n, phase);
    // sweep runs over omega0; the mode frequency omega_1 is reported
    const double scale = mode_frequency(Boundary::Open, 1.0, n, 1);
    std::vector<double> omega0_grid(freq_grid.size());
    for (std::size_t i = 0; i < freq_grid.size(); ++i)
      omega0_grid[i] = freq_grid[i] / scale;
    const auto points = frequency_sweep(point, omega0_grid);
    csv::Table t(kSweepHeader);
    for (std::size_t i = 0; i < points.size(); ++i)
      t.add_row(sweep_row(freq_grid[i], points[i].p_sink, s.reference,
                          points[i].p_static_ref));
    out.write("length_scan_N" + std::to_string(n) + ".csv", t);

    const auto opt = optimal_frequency(point, omega0_grid);
    summary.add_row(std::vector<double>{
        static_cast<double>(n), opt.omega_opt * scale, opt.delta_opt,
        opt.p_sink, opt.p_sink - opt.delta_opt});
  }
  out.write("length_scan_summary.csv", summary);
}

void run_dephasing_scan(const Config& c, SweepConfig s, Emitter& out) {
  const auto n_values = c.get_list("scan.n_values");
  const double factor = c.get_double("scan.amplitude_factor");
  const auto freq_grid = linear_grid(c.get_double("scan.mode_freq_min"),
                                     c.get_double("scan.mode_freq_max"),
                                     c.get_double("scan.mode_freq_step"));
  const auto gamma_values = c.get_list("deph.gamma_values");
  const double gamma_max = c.get_double("deph.gamma_max");
  const double phase = c.get_double("motion.mode_phase");
  csv::Table summary({"n", "gamma_c"});
  for (double nv : n_values) {
    const int n = static_cast<int>(nv);
    if (n < 2) throw ConfigError("scan.n_values entries must be >= 2");
    SweepConfig point = resized_chain(s, n);
    point.profile = breathing_profile(n, factor * n, phase);
    const double scale = mode_frequency(Boundary::Open, 1.0, n, 1);
    std::vector<double> omega0_grid(freq_grid.size());
    for (std::size_t i = 0; i < freq_grid.size(); ++i)
      omega0_grid[i] = freq_grid[i] / scale;
    const auto opt = optimal_frequency(point, omega0_grid);

    csv::Table t(kSweepHeader);
    for (double g : gamma_values) {
      SweepConfig run = point;
      run.profile = with_frequency(point.profile, opt.omega_opt);
      run.channels.gamma_deph = g;
      const double ref = static_reference(run);
      const double p = asymptotic_sink(run);
      t.add_row(sweep_row(g, p, s.reference, ref));
    }
    out.write("dephasing_N" + std::to_string(n) + ".csv", t);

    const double gamma_c =
        critical_dephasing_rate(point, opt.omega_opt, gamma_max);
    summary.add_row(std::vector<double>{static_cast<double>(n), gamma_c});
  }
  out.write("dephasing_summary.csv", summary);
}

void run_pulse_grid(const Config& c, SweepConfig s, Emitter& out) {
  const auto v_grid = linear_grid(c.get_double("pulse.v_min"),
                                  c.get_double("pulse.v_max"),
                                  c.get_double("pulse.v_step"));
  const auto s_grid = linear_grid(c.get_double("pulse.sigma_min"),
                                  c.get_double("pulse.sigma_max"),
                                  c.get_double("pulse.sigma_step"));
  const auto points = pulse_grid(s, v_grid, s_grid);
  csv::Table t({"v", "sigma", "p_sink", "baseline_value", "delta"});
  for (const auto& p : points)
    t.add_row(std::vector<double>{p.v, p.sigma, p.p_sink, p.baseline, p.delta});
  out.write("pulse_grid.csv", t);

  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].p_sink > points[best].p_sink) best = i;
  const auto opt = refine_pulse_optimum(
      s, points[best], c.get_double("pulse.v_step"),
      c.get_double("pulse.sigma_step"), c.get_int("pulse.refine_rounds"));
  csv::Table summary({"v_opt", "sigma_opt", "p_sink", "baseline_value", "delta"});
  summary.add_row(
      std::vector<double>{opt.v, opt.sigma, opt.p_sink, opt.baseline, opt.delta});
  out.write("pulse_optimum.csv", summary);
}

void run_classical_compare(const Config& c, SweepConfig s, Emitter& out) {
  const auto grid = linear_grid(c.get_double("sweep.omega_min"),
                                c.get_double("sweep.omega_max"),
                                c.get_double("sweep.omega_step"));
  const auto quantum = frequency_sweep(s, grid);
  csv::Table tq(kSweepHeader);
  for (const auto& p : quantum)
    tq.add_row(sweep_row(p.param, p.p_sink, s.reference, p.p_static_ref));
  out.write("quantum_sweep.csv", tq);

  const double hop_scale = c.get_double("classical.hop_scale");
  const auto classical =
      classical_enhancement(s.chain, s.profile, s.channels, hop_scale,
                            s.integrator, grid, s.workers);
  csv::Table tc(kSweepHeader);
  for (const auto& p : classical)
    tc.add_row(sweep_row(p.omega, p.p_sink, BaselineKind::JMax, p.p_static_ref));
  out.write("classical_sweep.csv", tc);
}

void run_trajectory(const Config& c, SweepConfig s, Emitter& out) {
  const int initial = c.get_int("trajectory.initial_site");
  const std::string kind = c.get_str("trajectory.kind");
  TransferRecord rec;
  if (kind == "quantum") {
    rec = propagate(s.chain, s.profile, s.vib, s.channels, s.integrator,
                    initial);
  } else if (kind == "classical") {
    rec = propagate_classical(s.chain, s.profile, s.channels,
                              c.get_double("classical.hop_scale"),
                              s.integrator, initial);
  } else {
    throw ConfigError("trajectory.kind must be 'quantum' or 'classical'");
  }
  std::vector<std::string> header = {"t"};
  for (int n = 1; n <= s.chain.n_sites; ++n)
    header.push_back("p" + std::to_string(n));
  header.push_back("p_sink");
  header.push_back("loss");
  csv::Table t(header);
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    std::vector<double> row;
    row.reserve(header.size());
    row.push_back(rec.times[i]);
    for (double p : rec.site_populations[i]) row.push_back(p);
    row.push_back(rec.sink_population[i]);
    row.push_back(rec.loss[i]);
    t.add_row(row);
  }
  out.write("trajectory.csv", t);
}

}  // namespace

RunResult run_experiment(const std::string& experiment, const Config& config,
                         const std::string& out_dir, int workers, bool quiet,
                         std::ostream& log) {
  const auto problems = validate_config(experiment, config);
  if (!problems.empty()) {
    std::string msg = "invalid config:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
  SweepConfig s = build_sweep_config(config);
  s.workers = workers > 0 ? workers : default_workers();

  fs::create_directories(out_dir);
  Emitter out{fs::path(out_dir), {}};
  const auto t0 = std::chrono::steady_clock::now();

  if (experiment == "dimer-sweep") run_dimer_sweep(config, s, out);
  else if (experiment == "dimer-phase-ensemble") run_phase_ensemble(config, s, out);
  else if (experiment == "dimer-amplitude") run_dimer_amplitude(config, s, out);
  else if (experiment == "chain-modes") run_chain_modes(config, s, out);
  else if (experiment == "chain-length-scan") run_chain_length_scan(config, s, out);
  else if (experiment == "dephasing-scan") run_dephasing_scan(config, s, out);
  else if (experiment == "pulse-grid") run_pulse_grid(config, s, out);
  else if (experiment == "classical-compare") run_classical_compare(config, s, out);
  else if (experiment == "trajectory") run_trajectory(config, s, out);
  else throw ConfigError("unknown experiment '" + experiment + "'");

  const auto t1 = std::chrono::steady_clock::now();
  RunResult result;
  result.files = out.files;
  result.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

  // manifest: header comments plus the resolved config, itself re-runnable
  const fs::path manifest_path = out.dir / "manifest.txt";
  std::ofstream manifest(manifest_path, std::ios::binary);
  if (!manifest) throw Error("cannot write " + manifest_path.string());
  manifest << "# exciton run manifest\n";
  manifest << "# version = " << kVersion << "\n";
  manifest << "# workers = " << s.workers << "\n";
  manifest << "# wall_seconds = " << result.wall_seconds << "\n";
  for (const auto& f : result.files) manifest << "# output = " << f << "\n";
  manifest << config.serialize();
  result.manifest = manifest_path.string();

  if (!quiet) {
    log << experiment << ": wrote";
    for (const auto& f : result.files) log << ' ' << f;
    log << " and manifest.txt to " << out_dir << " ("
        << result.wall_seconds << " s)\n";
  }
  return result;
}

}  // namespace exciton
