// hamiltonian.cpp — composite-system Hamiltonian assembly.
#include "dstirap/hamiltonian.hpp"

#include <stdexcept>

namespace dstirap {

namespace detail {

ComplexMatrix3 control_block(double t, const PhysicsParams& phys, const PulseSchedule& sched,
                             int pulse_sign) {
  ComplexMatrix3 h = ComplexMatrix3::Zero();
  // Both π-pulse windows share one envelope shape; map protocol time onto the
  // local pulse time of whichever window contains t.
  double t_local = -1.0;
  if (t >= 0.0 && t <= sched.t_pi) {
    t_local = t;
  } else if (t >= sched.window_end() && t <= sched.total()) {
    t_local = t - sched.window_end();
  }
  if (t_local < 0.0) return h;
  const double amp = soft_pi_amplitude(t_local, phys.omega_r, sched.t_pi, pulse_sign);
  const double coupling = (1.0 + phys.xi) * 0.5 * amp;
  h(kCtrl1, kCtrlR) = coupling;
  h(kCtrlR, kCtrl1) = coupling;
  return h;
}

ComplexMatrix6 target_block(double t_local, const PhysicsParams& phys, const PulseSchedule& sched,
                            Manifold manifold, double v_shift) {
  ComplexMatrix6 h = ComplexMatrix6::Zero();
  const double scale = 1.0 + phys.zeta;
  const double pump = scale * dstirap_pump(t_local, sched, phys.omega0);
  const Complex stokes = scale * dstirap_stokes(t_local, sched, phys.omega0, phys.gamma_phase);
  const bool use_a = manifold != Manifold::kB;
  const bool use_b = manifold != Manifold::kA;
  if (use_a) {
    h(kTgtE1, kTgtA) = pump;
    h(kTgtA, kTgtE1) = pump;
    h(kTgtE1, kTgtC) = stokes;
    h(kTgtC, kTgtE1) = std::conj(stokes);
  }
  if (use_b) {
    h(kTgtE2, kTgtB) = pump;
    h(kTgtB, kTgtE2) = pump;
    h(kTgtE2, kTgtC) = stokes;
    h(kTgtC, kTgtE2) = std::conj(stokes);
  }
  // The e1↔R coupling laser is always on during the d-STIRAP window, and the
  // detunings sit on the intermediate levels regardless of manifold choice.
  const double omega_c = scale * 0.5 * phys.omega_c;
  h(kTgtR, kTgtE1) = omega_c;
  h(kTgtE1, kTgtR) = omega_c;
  h(kTgtE1, kTgtE1) = -phys.delta;
  h(kTgtE2, kTgtE2) = -phys.delta;
  h(kTgtR, kTgtR) = v_shift;
  return h;
}

}  // namespace detail

ComplexMatrix control_hamiltonian(double t, const HamiltonianSpec& spec, int pulse_sign) {
  const ComplexMatrix3 block = detail::control_block(t, spec.phys, spec.sched, pulse_sign);
  const int d = spec.space.dim();
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < spec.space.n_controls; ++i)
    h += embed_single_atom_op(spec.space, i, block);
  return h;
}

ComplexMatrix target_hamiltonian(double t, const HamiltonianSpec& spec, Manifold manifold) {
  const int d = spec.space.dim();
  if (t < spec.sched.window_start() || t > spec.sched.window_end())
    return ComplexMatrix::Zero(d, d);
  const ComplexMatrix6 block =
      detail::target_block(t - spec.sched.window_start(), spec.phys, spec.sched, manifold, 0.0);
  return embed_single_atom_op(spec.space, spec.space.n_controls, block);
}

ComplexMatrix interaction_hamiltonian(const HamiltonianSpec& spec) {
  const int d = spec.space.dim();
  const int nc = spec.space.n_controls;
  if (static_cast<int>(spec.phys.v_ct.size()) != nc)
    throw std::invalid_argument("interaction_hamiltonian: v_ct size mismatch");
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (int idx = 0; idx < d; ++idx) {
    double shift = 0.0;
    const bool target_r = spec.space.target_level(idx) == kTgtR;
    for (int i = 0; i < nc; ++i) {
      if (spec.space.control_level(idx, i) != kCtrlR) continue;
      if (target_r) shift += spec.phys.v_ct[i];
      if (spec.phys.include_cc)
        for (int j = i + 1; j < nc; ++j)
          if (spec.space.control_level(idx, j) == kCtrlR) shift += spec.phys.v_cc(i, j);
    }
    h(idx, idx) = shift;
  }
  return h;
}

ComplexMatrix full_hamiltonian(double t, const HamiltonianSpec& spec, Manifold manifold) {
  if (t < 0.0 || t > spec.sched.total())
    throw std::invalid_argument("full_hamiltonian: time outside the protocol");
  ComplexMatrix h = interaction_hamiltonian(spec);
  if (t < spec.sched.window_start()) {
    h += control_hamiltonian(t, spec, +1);
  } else if (t <= spec.sched.window_end()) {
    h += target_hamiltonian(t, spec, manifold);
  } else {
    h += control_hamiltonian(t, spec, -1);
  }
  return h;
}

Manifold manifold_for_target_level(int target_level) {
  switch (target_level) {
    case kTgtB:
    case kTgtE2:
      return Manifold::kB;
    default:
      return Manifold::kA;
  }
}

}  // namespace dstirap
