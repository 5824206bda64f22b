// atom_model.hpp — level structure, geometry presets, van der Waals interaction
// strengths, and the composite control⊗target Hilbert space bookkeeping.
#pragma once

#include "dstirap/numerics.hpp"

#include <array>
#include <string>
#include <vector>

namespace dstirap {

// Control-atom levels: qubit states |0>, |1> plus the Rydberg state |r>.
enum ControlLevel : int { kCtrl0 = 0, kCtrl1 = 1, kCtrlR = 2 };
inline constexpr int kControlLevels = 3;

// Target-atom levels: qubit states |A>, |B>, the shared auxiliary ground state
// |C>, two excited intermediates |e1>, |e2>, and the Rydberg state |R>.
enum TargetLevel : int { kTgtA = 0, kTgtB = 1, kTgtC = 2, kTgtE1 = 3, kTgtE2 = 4, kTgtR = 5 };
inline constexpr int kTargetLevels = 6;

// --- Cs van der Waals interaction ------------------------------------------

// C6 dispersion coefficient for Cs nS Rydberg pairs in atomic units (signed);
// fit in the principal quantum number n.  Throws for n <= 0.
double c6_atomic_units(double n_principal);

// Convert a C6 value from atomic units to ordinary-frequency GHz·μm⁶ (signed).
double c6_to_freq_units(double c6_au);

// Interaction shift V = 2π·|C6|/l⁶ in angular rad/μs for two atoms a distance
// l_um apart.  Throws for non-positive distance.
double interaction_strength(double n_principal, double l_um);

// --- Geometry ----------------------------------------------------------------

// Atom layout: the target sits at the origin, controls at fixed 2-D positions.
struct Geometry {
  std::vector<std::array<double, 2>> control_positions_um;

  // Presets: "pair" (one control at distance l), "chain3" (two controls
  // collinear with the target, control–target–control), "star4" (three
  // controls at radius l, 120° apart).  Throws on unknown names.
  static Geometry preset(const std::string& kind, double l_um);

  int n_controls() const { return static_cast<int>(control_positions_um.size()); }
  double control_target_distance(int i) const;
  double control_control_distance(int i, int j) const;
};

// --- Physical parameters -----------------------------------------------------

// Tuned defaults for the pulse/detuning knobs the underlying model leaves free.
// sigma_frac is the Gaussian width as a fraction of the d-STIRAP window and
// delta_frac the pulse-pair half-separation in units of sigma; both sets keep
// 1/(4·sigma_frac) − delta_frac ≥ 3.53 so the envelopes stay < 1e-3·Ω0 at the
// phase jump and at the window edges.
//
// The defaults favor wide pulse separation: the residual rotation of the
// blocked state (a geometric effect, independent of duration and detuning)
// shrinks with pulse overlap, giving Re⟨0A|ψ⟩ ≥ 0.996 across Ω_c/Ω0 ∈
// [2.5, 5] while the conditional transfer still converges to −1 for adiabatic
// durations.  The short-gate set trades some of that margin for a larger
// transfer gap so that 0.6 μs gates stay in the 98–99% fidelity range; runs
// that use it record the values in their output manifests.  Zero single-photon
// detuning maximizes the adiabatic gap (the gap falls off like Ω²/Δ once Δ
// dominates); nonzero Δ remains available through configuration.
inline constexpr double kDefaultSigmaFrac = 1.0 / 21.0;
inline constexpr double kDefaultDeltaFrac = 1.5;
inline constexpr double kDefaultDeltaOverOmega0 = 0.0;
inline constexpr double kShortGateSigmaFrac = 1.0 / 17.0;
inline constexpr double kShortGateDeltaFrac = 0.6;
inline constexpr double kCs126Principal = 126.0;
inline constexpr double kDefaultSpacingUm = 6.0;

// All frequencies/rates angular (rad/μs resp. 1/μs); times μs; lengths μm.
struct PhysicsParams {
  double omega0 = 0.0;       // d-STIRAP peak Rabi scale Ω0
  double omega_r = 0.0;      // control π-pulse Rabi Ω_r
  double omega_c = 0.0;      // always-on e1↔R coupling Ω_c
  double delta = 0.0;        // single-photon detuning Δ on e1 and e2
  double gamma_r = 0.0;      // control Rydberg decay rate
  double gamma_big_r = 0.0;  // target Rydberg decay rate (|R> → |e1>)
  double gamma_e1 = 0.0;     // |e1> decay rate scale (γ/2 per ground channel)
  double gamma_e2 = 0.0;     // |e2> decay rate scale
  double gamma_phase = 0.0;  // geometric phase Γ imprinted by the Stokes phase jump
  double xi = 0.0;           // control-drive relative amplitude error ξ
  double zeta = 0.0;         // target-drive relative amplitude error ζ
  double sigma_frac = kDefaultSigmaFrac;  // Gaussian width / window duration
  double delta_frac = kDefaultDeltaFrac;  // pulse-pair half-separation / sigma
  std::vector<double> v_ct;  // control–target interaction shifts, one per control
  Eigen::MatrixXd v_cc;      // control–control shifts (symmetric, zero diagonal)
  bool include_cc = false;   // include control–control shifts in the Hamiltonian

  void set_interactions_from_geometry(const Geometry& g, double n_principal);
};

// Cs baseline parameters: Ω0/2π = 44 MHz, Ω_r = Ω0, Ω_c = 3Ω0, 126S lifetimes
// 540 μs, intermediate lifetimes 137.54 ns / 165.21 ns, Γ = π, interactions
// from the geometry preset for the requested number of controls at l = 6 μm.
PhysicsParams cesium_defaults(int n_controls);

// --- Composite Hilbert space -------------------------------------------------

// Tensor space (3 levels per control) ⊗ (6-level target); control 0 is the
// most significant factor, the target the least significant.
struct CompositeSpace {
  int n_controls = 1;

  int dim() const;
  // Index of |c_0 … c_{nc-1}; t>.
  int index(const std::vector<int>& controls, int target) const;
  int target_level(int idx) const { return idx % kTargetLevels; }
  int control_level(int idx, int i) const;
  int n_qubits() const { return n_controls + 1; }
};

// Embed a single-atom operator (3×3 for a control atom index < n_controls,
// 6×6 for the target at index n_controls) into the composite space.
ComplexMatrix embed_single_atom_op(const CompositeSpace& space, int atom, const ComplexMatrix& op);

// Indices of the 2^(n_controls+1) computational basis states
// |b_0 … b_{nc-1}; b_t> with controls mapped to |0>/|1>, target to |A>/|B>;
// ordered with the first control as the most significant bit (so the list is
// strictly increasing and starts at |0…0, A>).
std::vector<int> computational_embedding(const CompositeSpace& space);

}  // namespace dstirap
