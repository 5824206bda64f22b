// analysis.cpp — sweep drivers and CSV formatting.
#include "dstirap/analysis.hpp"

#include "dstirap/grover.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace dstirap {

namespace {

// Final-state amplitude at the initial computational basis state under pure
// Schrödinger evolution of the full protocol.
Complex protocol_amplitude(const PhysicsParams& phys, double t_total, int control_level,
                           const IntegratorConfig& cfg) {
  const HamiltonianSpec spec = make_protocol_spec(phys, 1, t_total);
  const int idx = spec.space.index({control_level}, kTgtA);
  ComplexVector psi0 = ComplexVector::Zero(spec.space.dim());
  psi0(idx) = 1.0;
  const ComplexVector psi = run_protocol_state(spec, psi0, cfg);
  return psi(idx);
}

double sweep_fidelity(const PhysicsParams& phys, int n_controls, double t_total,
                      const ExtractionOptions& opts) {
  return protocol_gate_fidelity(phys, n_controls, t_total, opts).average_fidelity;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("linspace: need at least one point");
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return v;
}

SweepResult amplitude_vs_omega_c(const PhysicsParams& base, double t_total,
                                 const std::vector<double>& omega_c_ratios,
                                 const IntegratorConfig& cfg) {
  SweepResult r;
  r.columns = {"omega_c_over_omega0", "re_amplitude", "abs_amplitude"};
  for (double ratio : omega_c_ratios) {
    PhysicsParams phys = base;
    phys.omega_c = ratio * base.omega0;
    const Complex amp = protocol_amplitude(phys, t_total, kCtrl0, cfg);
    r.rows.push_back({ratio, amp.real(), std::abs(amp)});
  }
  return r;
}

SweepResult amplitude_vs_v(const PhysicsParams& base, double t_total,
                           const std::vector<double>& v_ratios, const IntegratorConfig& cfg) {
  SweepResult r;
  r.columns = {"v_over_omega0", "re_amplitude", "abs_amplitude"};
  for (double ratio : v_ratios) {
    PhysicsParams phys = base;
    phys.v_ct.assign(1, ratio * base.omega0);
    const Complex amp = protocol_amplitude(phys, t_total, kCtrl1, cfg);
    r.rows.push_back({ratio, amp.real(), std::abs(amp)});
  }
  return r;
}

SweepResult fidelity_vs_gate_time(const PhysicsProvider& phys_for,
                                  const std::vector<int>& qubit_counts,
                                  const std::vector<double>& t_totals,
                                  const ExtractionOptions& opts) {
  SweepResult r;
  r.columns = {"t_total_us"};
  for (int q : qubit_counts) r.columns.push_back("fbar_" + std::to_string(q) + "q");
  for (double t : t_totals) {
    std::vector<double> row{t};
    for (int q : qubit_counts) {
      const int n_controls = q - 1;
      row.push_back(sweep_fidelity(phys_for(n_controls), n_controls, t, opts));
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

SweepResult rabi_error_sweep(const PhysicsParams& base, int n_controls, double t_total,
                             const std::vector<double>& xis, const std::vector<double>& zetas,
                             const ExtractionOptions& opts) {
  SweepResult r;
  r.columns = {"xi", "zeta", "fbar"};
  for (double xi : xis) {
    for (double zeta : zetas) {
      PhysicsParams phys = base;
      phys.xi = xi;
      phys.zeta = zeta;
      r.rows.push_back({xi, zeta, sweep_fidelity(phys, n_controls, t_total, opts)});
    }
  }
  return r;
}

SweepResult blockade_sweep(const PhysicsParams& base, int n_controls, double t_total,
                           const std::vector<double>& omega_c_ratios,
                           const std::vector<double>& v_ratios,
                           const ExtractionOptions& opts) {
  SweepResult r;
  r.columns = {"omega_c_over_omega0", "v_over_omega0", "fbar"};
  for (double rc : omega_c_ratios) {
    for (double rv : v_ratios) {
      PhysicsParams phys = base;
      phys.omega_c = rc * base.omega0;
      phys.v_ct.assign(n_controls, rv * base.omega0);
      r.rows.push_back({rc, rv, sweep_fidelity(phys, n_controls, t_total, opts)});
    }
  }
  return r;
}

SweepResult position_sweep(const PhysicsParams& base, int n_controls, double t_total,
                           const std::vector<double>& l_um_values, double n_principal,
                           const ExtractionOptions& opts) {
  SweepResult r;
  r.columns = {"l_um", "v_over_omega0", "fbar"};
  for (double l : l_um_values) {
    PhysicsParams phys = base;
    phys.set_interactions_from_geometry(Geometry::preset(geometry_preset_name(n_controls), l),
                                        n_principal);
    r.rows.push_back(
        {l, phys.v_ct.at(0) / phys.omega0, sweep_fidelity(phys, n_controls, t_total, opts)});
  }
  return r;
}

SweepResult grover_vs_gate_time(const PhysicsParams& base, int n_qubits,
                                const std::vector<double>& t_totals,
                                const ExtractionOptions& opts) {
  SweepResult r;
  r.columns = {"t_total_us", "success_probability", "ideal_probability"};
  const int iters = optimal_iterations(n_qubits);
  const double ideal = ideal_success_probability(n_qubits, iters);
  for (double t : t_totals) {
    const HamiltonianSpec spec = make_protocol_spec(base, n_qubits - 1, t);
    const GateChannel chan = extract_channel(spec, opts);
    r.rows.push_back({t, run_grover(chan, iters), ideal});
  }
  return r;
}

std::string geometry_preset_name(int n_controls) {
  switch (n_controls) {
    case 1:
      return "pair";
    case 2:
      return "chain3";
    case 3:
      return "star4";
    default:
      throw std::invalid_argument("no geometry preset for this control count");
  }
}

std::string format_csv(const SweepResult& result) {
  std::string out;
  for (std::size_t c = 0; c < result.columns.size(); ++c) {
    if (c) out += ',';
    out += result.columns[c];
  }
  out += '\n';
  char buf[64];
  for (const auto& row : result.rows) {
    if (row.size() != result.columns.size())
      throw std::invalid_argument("format_csv: row width does not match header");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      std::snprintf(buf, sizeof(buf), "%.17g", row[c]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_csv(const SweepResult& result, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_csv: cannot open " + path);
  const std::string body = format_csv(result);
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!f) throw std::runtime_error("write_csv: write failed for " + path);
}

}  // namespace dstirap
