// factorized_api.hpp — entry points of the factorized block-evolution engine.
// During the d-STIRAP window the controls are drive-free, so the composite
// evolution splits over frozen control configurations into 6×6 target blocks;
// the π-pulse windows factor into per-atom control channels and a target
// decay semigroup.  Valid only with manifold isolation on and without
// control–control interaction terms; see factorized.cpp for the bounds.
#pragma once

#include "dstirap/dynamics.hpp"

#include <vector>

namespace dstirap::detail {

// True when the factorized engine reproduces the dense dynamics for this
// spec (manifold isolation on; no active control–control shifts).
bool factorized_supported(const HamiltonianSpec& spec);

ComplexVector run_protocol_state_factorized(const HamiltonianSpec& spec,
                                            const ComplexVector& psi0,
                                            const IntegratorConfig& cfg);

// Evolve many initial matrices through the full protocol in one sweep so the
// per-step 6×6 propagator exponentials are shared across all inputs (the
// dominant saving for channel extraction).  Outputs match input order.
std::vector<ComplexMatrix> run_protocol_density_factorized_batch(
    const HamiltonianSpec& spec, const std::vector<ComplexMatrix>& inputs,
    const IntegratorConfig& cfg);

ComplexMatrix run_protocol_density_factorized(const HamiltonianSpec& spec,
                                              const ComplexMatrix& x0,
                                              const IntegratorConfig& cfg);

}  // namespace dstirap::detail
