// grover.hpp — density-matrix Grover search targeting |1…1>, built from ideal
// single-qubit gates and a supplied multi-qubit phase-gate channel.
#pragma once

#include "dstirap/gateproto.hpp"

namespace dstirap {

// Standard amplitude-amplification count round(π/(4θ) − 1/2), θ = asin(2^{-n/2}).
// Throws for n < 2.
int optimal_iterations(int n_qubits);

// Closed-form ideal success probability sin²((2k+1)θ) after k iterations.
double ideal_success_probability(int n_qubits, int iterations);

// Run Grover search with the gate channel 𝒢 (ideally diag(1, −1, …, −1)):
// start |0…0>, apply H⊗n, then per iteration the oracle X⊗n∘𝒢∘X⊗n followed
// by the diffusion H⊗n∘𝒢∘H⊗n; 𝒢 enters both.  Single-qubit H and X are
// ideal.  Returns ⟨1…1|ρ|1…1⟩.  iterations = 0 returns the uniform 2^{-n}.
double run_grover(const GateChannel& gate, int iterations);

// Grover with the ideal gate channel at Γ = π.
double run_grover_ideal(int n_qubits, int iterations);

}  // namespace dstirap
