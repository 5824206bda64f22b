// hamiltonian.hpp — time-dependent Hamiltonian of the composite system for the
// three protocol steps, including drive-amplitude error scaling and the
// Rydberg–Rydberg interaction terms.
#pragma once

#include "dstirap/atom_model.hpp"
#include "dstirap/numerics.hpp"
#include "dstirap/pulse.hpp"

namespace dstirap {

// Which intermediate-state manifold of the target is active.  The A manifold
// couples {A, C, e1, R} (pump1, Stokes1, Ω_c), the B manifold couples
// {B, C, e2} (pump2, Stokes2).  Zeeman-selective beams address one manifold
// per run; kBoth drives all couplings simultaneously (research flag).
enum class Manifold { kA, kB, kBoth };

struct HamiltonianSpec {
  CompositeSpace space;
  PhysicsParams phys;
  PulseSchedule sched;
  // When true, the evolution of an initial state whose target component is
  // |A> (resp. |B>) uses only the A-manifold (resp. B-manifold) couplings.
  bool manifold_isolation = true;
};

namespace detail {

// 3×3 control-atom drive block at protocol time t: (1+ξ)(Ω_r(t)/2)(|1><r| + h.c.)
// with the soft π envelope of the requested step sign; zero outside the window.
ComplexMatrix3 control_block(double t, const PhysicsParams& phys, const PulseSchedule& sched,
                             int pulse_sign);

// 6×6 target-atom block at local d-STIRAP window time t_local, including the
// (1+ζ)-scaled drive couplings of the selected manifold, the −Δ terms on the
// populated intermediate levels, and an additional energy v_shift on |R>.
// Couplings: pump on |e1><A| / |e2><B|, Stokes (complex, phase e^{-iφ(t)}) on
// |e1><C| / |e2><C|, Ω_c/2 on |R><e1|; plus Hermitian conjugates.
ComplexMatrix6 target_block(double t_local, const PhysicsParams& phys, const PulseSchedule& sched,
                            Manifold manifold, double v_shift);

}  // namespace detail

// Control-drive part at protocol time t (both π-pulse windows map onto the
// same envelope; pulse_sign = +1 for step 1, −1 for step 3), summed over all
// control atoms and embedded in the composite space.
ComplexMatrix control_hamiltonian(double t, const HamiltonianSpec& spec, int pulse_sign);

// Target-drive part at protocol time t (nonzero only inside the d-STIRAP
// window), embedded in the composite space.
ComplexMatrix target_hamiltonian(double t, const HamiltonianSpec& spec, Manifold manifold);

// Time-independent diagonal interaction: Σ_i v_ct[i] |r><r|_i ⊗ |R><R|_target,
// plus Σ_{i<j} v_cc(i,j) |r><r|_i ⊗ |r><r|_j when include_cc is set.
ComplexMatrix interaction_hamiltonian(const HamiltonianSpec& spec);

// Full Hamiltonian at protocol time t: π-pulse drive (sign +1) before the
// d-STIRAP window, target drive inside it, π-pulse drive (sign −1) after,
// always plus the interaction term.  Throws for t outside [0, total].
ComplexMatrix full_hamiltonian(double t, const HamiltonianSpec& spec, Manifold manifold);

// Manifold carrying a given target level under isolation: A for {A, C, e1, R},
// B for {B, e2}.
Manifold manifold_for_target_level(int target_level);

}  // namespace dstirap
