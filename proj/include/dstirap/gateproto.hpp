// gateproto.hpp — the protocol as a qubit gate: spec assembly, ideal gate
// unitary, noisy-channel extraction, and average gate fidelity.
#pragma once

#include "dstirap/dynamics.hpp"

#include <vector>

namespace dstirap {

// Assemble the full protocol spec for n controls and total gate time t_total,
// with the pulse shape taken from phys.sigma_frac / phys.delta_frac.  Throws
// when phys.v_ct is not sized to n_controls or the schedule is infeasible.
HamiltonianSpec make_protocol_spec(const PhysicsParams& phys, int n_controls, double t_total);

// Ideal gate on n qubits: +1 on |0…0>, e^{iΓ} on every other computational
// state (diag(1, e^{iΓ}, …, e^{iΓ})); at Γ = π this equals C^{n-1}Z up to
// local Z's and a global sign.
ComplexMatrix ideal_gate_unitary(int n_qubits, double gamma_phase);

// A qubit channel as a d²×d² superoperator acting on column-stacked matrices:
// vec(ε(X)) = superop · vec(X).
struct GateChannel {
  int n_qubits = 0;
  ComplexMatrix superop;

  int dim() const { return 1 << n_qubits; }
  ComplexMatrix apply(const ComplexMatrix& x) const;
};

// Conjugation by a unitary as a channel: ε(X) = U X U†.
GateChannel unitary_channel(const ComplexMatrix& u);

struct ExtractionOptions {
  Engine engine = Engine::kAuto;
  IntegratorConfig integrator;
  int threads = 1;  // dense path only; the factorized batch is serial by design
};

// Extract the qubit channel realized by the protocol: evolve the
// computational matrix units |m><n| through the full protocol with decay and
// project back onto the computational subspace.  Only units with m <= n are
// integrated; ε(|n><m|) = ε(|m><n|)† fills the rest.  The result is
// trace-decreasing whenever population leaks out of the computational
// subspace.
GateChannel extract_channel(const HamiltonianSpec& spec, const ExtractionOptions& opts = {});

// Average gate fidelity of a channel against an ideal unitary, by direct
// summation over the n-qubit Pauli operator basis:
// F̄ = [Σ_j Tr(U P_j U† ε(P_j)) + d²] / [d²(d+1)].
double average_gate_fidelity(const GateChannel& channel, const ComplexMatrix& u_ideal);

// Closed form when the actual gate is itself a unitary V:
// F̄ = (d + |Tr(U†V)|²) / (d² + d).
double average_gate_fidelity_unitary(const ComplexMatrix& v_actual, const ComplexMatrix& u_ideal);

// The 4^n Pauli strings (Kronecker products of I, X, Y, Z) on n qubits.
std::vector<ComplexMatrix> pauli_basis(int n_qubits);

struct GateFidelityResult {
  double average_fidelity = 0.0;
  GateChannel channel;
};

// Convenience: assemble the spec, extract the channel, and score it against
// the ideal gate at phys.gamma_phase.
GateFidelityResult protocol_gate_fidelity(const PhysicsParams& phys, int n_controls,
                                          double t_total, const ExtractionOptions& opts = {});

}  // namespace dstirap
