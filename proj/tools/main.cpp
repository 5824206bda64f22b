// main.cpp — dstirap command-line tool: one subcommand per study, each
// emitting a CSV and a JSON run manifest into the output directory.
#include "CLI11.hpp"

#include "dstirap/analysis.hpp"
#include "dstirap/config.hpp"
#include "dstirap/grover.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace dstirap;
namespace fs = std::filesystem;

struct CliOverrides {
  std::string config_path;
  std::optional<double> t_total, sigma_frac, delta_frac, delta_ratio, omega_c_ratio;
  std::optional<double> t_min, t_max, v_min, v_max, omega_c_min, omega_c_max;
  std::optional<double> error_min, error_max, l_min, l_max, n_principal, l_um;
  std::optional<int> qubits, threads, points, iterations;
  std::optional<std::string> engine, output_dir;
  std::vector<double> omega_c_ratios;  // blockade sweep curves
  bool ideal = false;
  std::string axis = "omega_c";
};

RunConfig resolve(const CliOverrides& o) {
  RunConfig cfg = o.config_path.empty() ? default_config() : load_config(o.config_path);
  if (o.t_total) cfg.t_total_us = *o.t_total;
  if (o.sigma_frac) cfg.sigma_frac = *o.sigma_frac;
  if (o.delta_frac) cfg.delta_frac = *o.delta_frac;
  if (o.delta_ratio) cfg.delta_ratio = *o.delta_ratio;
  if (o.omega_c_ratio) cfg.omega_c_ratio = *o.omega_c_ratio;
  if (o.t_min) cfg.t_min_us = *o.t_min;
  if (o.t_max) cfg.t_max_us = *o.t_max;
  if (o.v_min) cfg.v_min_ratio = *o.v_min;
  if (o.v_max) cfg.v_max_ratio = *o.v_max;
  if (o.omega_c_min) cfg.omega_c_min_ratio = *o.omega_c_min;
  if (o.omega_c_max) cfg.omega_c_max_ratio = *o.omega_c_max;
  if (o.error_min) cfg.error_min = *o.error_min;
  if (o.error_max) cfg.error_max = *o.error_max;
  if (o.l_min) cfg.l_min_um = *o.l_min;
  if (o.l_max) cfg.l_max_um = *o.l_max;
  if (o.n_principal) cfg.n_principal = *o.n_principal;
  if (o.l_um) cfg.spacing_um = *o.l_um;
  if (o.qubits) cfg.qubits = *o.qubits;
  if (o.threads) cfg.threads = *o.threads;
  if (o.points) cfg.points = *o.points;
  if (o.engine) {
    cfg.engine = *o.engine;
    if (cfg.engine != "auto" && cfg.engine != "dense" && cfg.engine != "factorized")
      throw ConfigError("--engine must be auto, dense, or factorized");
  }
  if (o.output_dir) cfg.output_dir = *o.output_dir;
  if (cfg.t_total_us <= 0.0) throw ConfigError("--t-total must be positive");
  if (cfg.points < 1) throw ConfigError("--points must be at least 1");
  if (cfg.qubits < 2 || cfg.qubits > 4) throw ConfigError("--qubits must be 2, 3, or 4");
  if (cfg.threads < 1) throw ConfigError("--threads must be at least 1");
  return cfg;
}

// Writes the CSV and manifest for one run and reports where they went.
void emit(const RunConfig& cfg, const std::string& name, const SweepResult& result,
          double wall_seconds, std::vector<std::pair<std::string, double>> numbers = {}) {
  fs::create_directories(cfg.output_dir);
  const fs::path csv_path = fs::path(cfg.output_dir) / (name + ".csv");
  const fs::path man_path = fs::path(cfg.output_dir) / (name + "_manifest.json");
  write_csv(result, csv_path.string());
  numbers.emplace_back("rows", static_cast<double>(result.rows.size()));
  write_text_file(
      manifest_json(cfg, name, wall_seconds, numbers, {{"csv", csv_path.string()}}),
      man_path.string());
  std::cout << "wrote " << csv_path.string() << " (" << result.rows.size() << " rows) and "
            << man_path.string() << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_c6(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const double c6_au = c6_atomic_units(cfg.n_principal);
  const double c6_freq = c6_to_freq_units(c6_au);
  const double v = interaction_strength(cfg.n_principal, cfg.spacing_um);
  const double v_over_omega_c = v / (cfg.omega_c_ratio * cfg.omega0);
  std::printf("C6(n=%g) = %.6g a.u. = %.6g GHz um^6\n", cfg.n_principal, c6_au, c6_freq);
  std::printf("V(l=%g um) = %.6g rad/us\n", cfg.spacing_um, v);
  std::printf("V/Omega_c = %.6g   V/Omega_0 = %.6g\n", v_over_omega_c,
              v / cfg.omega0);
  SweepResult r;
  r.columns = {"n_principal", "l_um", "c6_au", "c6_ghz_um6", "v_rad_per_us", "v_over_omega_c"};
  r.rows = {{cfg.n_principal, cfg.spacing_um, c6_au, c6_freq, v, v_over_omega_c}};
  emit(cfg, "c6", r, seconds_since(t0),
       {{"v_rad_per_us", v}, {"v_over_omega_c", v_over_omega_c}});
  return 0;
}

int run_amplitudes(const RunConfig& cfg, const std::string& axis) {
  const auto t0 = std::chrono::steady_clock::now();
  const PhysicsParams phys = cfg.physics(1);
  SweepResult r;
  std::string name;
  if (axis == "v") {
    name = "amplitudes_v";
    r = amplitude_vs_v(phys, cfg.t_total_us,
                       linspace(cfg.v_min_ratio, cfg.v_max_ratio, cfg.points), cfg.integrator);
  } else {
    name = "amplitudes_omega_c";
    r = amplitude_vs_omega_c(
        phys, cfg.t_total_us,
        linspace(cfg.omega_c_min_ratio, cfg.omega_c_max_ratio, cfg.points), cfg.integrator);
  }
  emit(cfg, name, r, seconds_since(t0));
  return 0;
}

int run_fidelity_vs_time(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto provider = [&cfg](int n_controls) { return cfg.physics(n_controls); };
  const SweepResult r =
      fidelity_vs_gate_time(provider, {cfg.qubits},
                            linspace(cfg.t_min_us, cfg.t_max_us, cfg.points), cfg.extraction());
  emit(cfg, "fidelity_vs_time", r, seconds_since(t0));
  return 0;
}

int run_rabi_sweep(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto grid = linspace(cfg.error_min, cfg.error_max, cfg.points);
  const SweepResult r = rabi_error_sweep(cfg.physics(cfg.qubits - 1), cfg.qubits - 1,
                                         cfg.t_total_us, grid, grid, cfg.extraction());
  emit(cfg, "rabi_sweep", r, seconds_since(t0));
  return 0;
}

int run_blockade_sweep(const RunConfig& cfg, const std::vector<double>& omega_c_ratios) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> curves =
      omega_c_ratios.empty() ? std::vector<double>{cfg.omega_c_ratio} : omega_c_ratios;
  const SweepResult r =
      blockade_sweep(cfg.physics(cfg.qubits - 1), cfg.qubits - 1, cfg.t_total_us, curves,
                     linspace(cfg.v_min_ratio, cfg.v_max_ratio, cfg.points), cfg.extraction());
  emit(cfg, "blockade_sweep", r, seconds_since(t0));
  return 0;
}

int run_position_sweep(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult r =
      position_sweep(cfg.physics(cfg.qubits - 1), cfg.qubits - 1, cfg.t_total_us,
                     linspace(cfg.l_min_um, cfg.l_max_um, cfg.points), cfg.n_principal,
                     cfg.extraction());
  emit(cfg, "position_sweep", r, seconds_since(t0));
  return 0;
}

int run_grover(const RunConfig& cfg, bool ideal, std::optional<int> iter_override) {
  const auto t0 = std::chrono::steady_clock::now();
  const int iters = iter_override.value_or(optimal_iterations(cfg.qubits));
  if (iters < 0) throw ConfigError("--iterations must be non-negative");
  if (ideal) {
    const double p = run_grover_ideal(cfg.qubits, iters);
    std::printf("ideal Grover success probability (n=%d, %d iterations): %.6f\n", cfg.qubits,
                iters, p);
    SweepResult r;
    r.columns = {"n_qubits", "iterations", "success_probability"};
    r.rows = {{static_cast<double>(cfg.qubits), static_cast<double>(iters), p}};
    emit(cfg, "grover_ideal", r, seconds_since(t0), {{"success_probability", p}});
    return 0;
  }
  const SweepResult r = grover_vs_gate_time(cfg.physics(cfg.qubits - 1), cfg.qubits,
                                            linspace(cfg.t_min_us, cfg.t_max_us, cfg.points),
                                            cfg.extraction());
  emit(cfg, "grover", r, seconds_since(t0));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double-STIRAP geometric phase-gate simulator"};
  app.set_version_flag("--version", dstirap::kToolVersion);
  app.require_subcommand(1);

  CliOverrides o;
  auto add_common = [&o](CLI::App* s) {
    s->add_option("--config", o.config_path, "configuration file (strict key/value tables)");
    s->add_option("--t-total", o.t_total, "total gate time in us");
    s->add_option("--qubits", o.qubits, "qubit count (controls + target)")
        ->check(CLI::Range(2, 4));
    s->add_option("--threads", o.threads, "worker threads for dense extraction")
        ->check(CLI::PositiveNumber);
    s->add_option("--points", o.points, "grid point count")->check(CLI::PositiveNumber);
    s->add_option("--engine", o.engine, "evolution engine: auto | dense | factorized");
    s->add_option("--output-dir", o.output_dir, "directory for CSV and manifest outputs");
    s->add_option("--sigma-frac", o.sigma_frac, "Gaussian width as a fraction of the window");
    s->add_option("--delta-frac", o.delta_frac, "pulse-pair offset as a fraction of sigma");
    s->add_option("--delta-over-omega0", o.delta_ratio, "intermediate-state detuning ratio");
    s->add_option("--omega-c-over-omega0", o.omega_c_ratio, "always-on coupling ratio");
  };

  auto* c6 = app.add_subcommand("c6", "C6 coefficient and blockade strength");
  add_common(c6);
  c6->add_option("--n", o.n_principal, "principal quantum number")->check(CLI::PositiveNumber);
  c6->add_option("--l", o.l_um, "interatomic distance in um")->check(CLI::PositiveNumber);

  auto* amps = app.add_subcommand("amplitudes", "unitary transfer amplitudes of the protocol");
  add_common(amps);
  amps->add_option("--axis", o.axis, "sweep axis: omega_c (control |0>) or v (control |1>)")
      ->check(CLI::IsMember({"omega_c", "v"}));
  amps->add_option("--v-min", o.v_min, "minimum V/Omega_0");
  amps->add_option("--v-max", o.v_max, "maximum V/Omega_0");
  amps->add_option("--omega-c-min", o.omega_c_min, "minimum Omega_c/Omega_0");
  amps->add_option("--omega-c-max", o.omega_c_max, "maximum Omega_c/Omega_0");

  auto* fvt = app.add_subcommand("fidelity-vs-time", "average gate fidelity vs gate time");
  add_common(fvt);
  fvt->add_option("--t-min", o.t_min, "minimum gate time in us")->check(CLI::PositiveNumber);
  fvt->add_option("--t-max", o.t_max, "maximum gate time in us")->check(CLI::PositiveNumber);

  auto* rabi = app.add_subcommand("rabi-sweep", "fidelity vs drive-amplitude errors (xi, zeta)");
  add_common(rabi);
  rabi->add_option("--error-min", o.error_min, "minimum relative amplitude error");
  rabi->add_option("--error-max", o.error_max, "maximum relative amplitude error");

  auto* blk = app.add_subcommand("blockade-sweep", "fidelity vs blockade strength V");
  add_common(blk);
  blk->add_option("--v-min", o.v_min, "minimum V/Omega_0");
  blk->add_option("--v-max", o.v_max, "maximum V/Omega_0");
  blk->add_option("--omega-c-ratios", o.omega_c_ratios,
                  "Omega_c/Omega_0 values, one fidelity curve each");

  auto* pos = app.add_subcommand("position-sweep", "fidelity vs interatomic distance");
  add_common(pos);
  pos->add_option("--l-min", o.l_min, "minimum distance in um")->check(CLI::PositiveNumber);
  pos->add_option("--l-max", o.l_max, "maximum distance in um")->check(CLI::PositiveNumber);

  auto* grv = app.add_subcommand("grover", "Grover search with the extracted gate channel");
  add_common(grv);
  grv->add_flag("--ideal", o.ideal, "use the ideal gate channel instead of simulating");
  grv->add_option("--iterations", o.iterations, "iteration count (default: optimal)");
  grv->add_option("--t-min", o.t_min, "minimum gate time in us")->check(CLI::PositiveNumber);
  grv->add_option("--t-max", o.t_max, "maximum gate time in us")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const RunConfig cfg = resolve(o);
    if (c6->parsed()) return run_c6(cfg);
    if (amps->parsed()) return run_amplitudes(cfg, o.axis);
    if (fvt->parsed()) return run_fidelity_vs_time(cfg);
    if (rabi->parsed()) return run_rabi_sweep(cfg);
    if (blk->parsed()) return run_blockade_sweep(cfg, o.omega_c_ratios);
    if (pos->parsed()) return run_position_sweep(cfg);
    if (grv->parsed()) return run_grover(cfg, o.ideal, o.iterations);
    return 1;
  } catch (const dstirap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
