// analysis.hpp — deterministic parameter sweeps over the gate protocol and
// byte-reproducible CSV emission.
#pragma once

#include "dstirap/gateproto.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dstirap {

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // one row per grid point, grid order
};

// Evenly spaced grid of n points from lo to hi inclusive (n == 1 → {lo}).
// Throws for n < 1.
std::vector<double> linspace(double lo, double hi, int n);

// Physics parameters as a function of the control-atom count (sweeps over
// qubit numbers need per-count interaction geometry).
using PhysicsProvider = std::function<PhysicsParams(int n_controls)>;

// Unitary transfer amplitude of |0A> (single control in |0>) vs Ω_c/Ω0.
// Columns: omega_c_over_omega0, re_amplitude, abs_amplitude.
SweepResult amplitude_vs_omega_c(const PhysicsParams& base, double t_total,
                                 const std::vector<double>& omega_c_ratios,
                                 const IntegratorConfig& cfg = {});

// Unitary amplitude of |1A> (single control in |1>) vs V/Ω0 at the configured
// Ω_c.  Columns: v_over_omega0, re_amplitude, abs_amplitude.
SweepResult amplitude_vs_v(const PhysicsParams& base, double t_total,
                           const std::vector<double>& v_ratios,
                           const IntegratorConfig& cfg = {});

// Average gate fidelity vs total gate time, one column per qubit count.
// Columns: t_total_us, fbar_{q}q for each entry of qubit_counts.
SweepResult fidelity_vs_gate_time(const PhysicsProvider& phys_for,
                                  const std::vector<int>& qubit_counts,
                                  const std::vector<double>& t_totals,
                                  const ExtractionOptions& opts = {});

// Fidelity surface over drive-amplitude errors (ξ outer loop, ζ inner).
// Columns: xi, zeta, fbar.
SweepResult rabi_error_sweep(const PhysicsParams& base, int n_controls, double t_total,
                             const std::vector<double>& xis, const std::vector<double>& zetas,
                             const ExtractionOptions& opts = {});

// Fidelity vs uniform blockade strength V, per Ω_c setting (Ω_c outer loop).
// Columns: omega_c_over_omega0, v_over_omega0, fbar.
SweepResult blockade_sweep(const PhysicsParams& base, int n_controls, double t_total,
                           const std::vector<double>& omega_c_ratios,
                           const std::vector<double>& v_ratios,
                           const ExtractionOptions& opts = {});

// Fidelity vs interatomic distance; interactions recomputed per distance from
// the geometry preset for n_controls.  Columns: l_um, v_over_omega0, fbar.
SweepResult position_sweep(const PhysicsParams& base, int n_controls, double t_total,
                           const std::vector<double>& l_um_values, double n_principal,
                           const ExtractionOptions& opts = {});

// Grover success probability using the channel extracted at each gate time,
// at the optimal iteration count.  Columns: t_total_us, success_probability,
// ideal_probability.
SweepResult grover_vs_gate_time(const PhysicsParams& base, int n_qubits,
                                const std::vector<double>& t_totals,
                                const ExtractionOptions& opts = {});

// Geometry preset name used for a control count (pair / chain3 / star4).
std::string geometry_preset_name(int n_controls);

// CSV with a header row and one data row per grid point; doubles printed with
// 17 significant digits so a read-back reproduces them bit-exactly.
std::string format_csv(const SweepResult& result);

// Write format_csv(result) to path.  Throws on I/O failure.
void write_csv(const SweepResult& result, const std::string& path);

}  // namespace dstirap
