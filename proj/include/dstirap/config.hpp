// config.hpp — run configuration: file loading (strict key→value tables),
// unit conversion, parameter assembly, and run-manifest emission.
#pragma once

#include "dstirap/analysis.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dstirap {

inline constexpr char kToolVersion[] = "0.1.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All knobs of a run.  Frequencies are entered in ordinary MHz and stored
// converted to angular rad/μs; times in μs, lengths in μm.
struct RunConfig {
  // [physics]
  double omega0 = 0.0;          // from omega0_mhz
  double omega_r = 0.0;         // from omega_r_mhz (defaults to omega0)
  double omega_c_ratio = 3.0;   // Ω_c/Ω0
  double delta_ratio = kDefaultDeltaOverOmega0;  // Δ/Ω0
  double lifetime_r_us = 540.0;
  double lifetime_big_r_us = 540.0;
  double lifetime_e1_us = 0.13754;
  double lifetime_e2_us = 0.16521;
  double gamma_phase = 0.0;  // from gamma_phase_over_pi
  double xi = 0.0;
  double zeta = 0.0;
  bool include_decay = true;
  bool include_cc = false;

  // [geometry]
  double n_principal = kCs126Principal;
  double spacing_um = kDefaultSpacingUm;

  // [pulse]
  double t_total_us = 0.6;
  double sigma_frac = kDefaultSigmaFrac;
  double delta_frac = kDefaultDeltaFrac;

  // [integrator]
  IntegratorConfig integrator;
  std::string engine = "auto";

  // [run]
  int qubits = 2;
  int threads = 1;
  std::string output_dir = ".";

  // [sweep] grid bounds/counts shared across the sweep subcommands
  double t_min_us = 0.2;
  double t_max_us = 1.0;
  int points = 9;
  double omega_c_min_ratio = 2.5;
  double omega_c_max_ratio = 5.0;
  double v_min_ratio = 0.0;
  double v_max_ratio = 20.0;
  double error_min = -0.1;
  double error_max = 0.1;
  double l_min_um = 5.4;
  double l_max_um = 6.6;

  // Assembled physics for a control count: geometry preset at spacing_um,
  // decay rates 1/lifetime (zero when include_decay is off).
  PhysicsParams physics(int n_controls) const;
  Engine engine_enum() const;
  ExtractionOptions extraction() const;
};

// Built-in defaults (Cs baseline; no file needed).
RunConfig default_config();

// Parse configuration text: [section] headers, key = value lines, # comments;
// values are numbers, "strings", booleans, or [numeric, arrays].  Unknown
// sections or keys, malformed values, and out-of-range settings raise
// ConfigError naming the offending key.
RunConfig parse_config(const std::string& text);

// Load and parse a configuration file.  Throws ConfigError (also for I/O).
RunConfig load_config(const std::string& path);

// JSON run manifest: resolved configuration, tool version, subcommand, wall
// time, plus caller-supplied numeric/string results.
std::string manifest_json(const RunConfig& cfg, const std::string& subcommand,
                          double wall_seconds,
                          const std::vector<std::pair<std::string, double>>& numbers = {},
                          const std::vector<std::pair<std::string, std::string>>& strings = {});

// Write a manifest string to a file.  Throws on I/O failure.
void write_text_file(const std::string& text, const std::string& path);

}  // namespace dstirap
