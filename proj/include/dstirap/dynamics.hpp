// dynamics.hpp — time evolution: Schrödinger propagation of kets, Lindblad
// propagation of density operators (and of arbitrary matrices, as needed for
// channel extraction), and the full three-step protocol runners.
#pragma once

#include "dstirap/detail/dopri5.hpp"
#include "dstirap/hamiltonian.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dstirap {

// One spontaneous-decay channel L = sqrt(rate) |to><from| on a single atom
// (atom == n_controls addresses the target).
struct DecayChannel {
  std::string label;
  int atom = 0;
  int from = 0;
  int to = 0;
  double rate = 0.0;  // 1/μs
};

struct DecayChannelSet {
  std::vector<DecayChannel> channels;

  // Rate-scaled dense jump operators sqrt(rate)·|to><from| embedded in the
  // composite space, with their labels.
  std::vector<std::pair<std::string, ComplexMatrix>> dense_operators(
      const CompositeSpace& space) const;
};

// The full decay-channel set: per control atom sqrt(γ_r/2)|0><r| and
// sqrt(γ_r/2)|1><r|; on the target sqrt(γ_R)|e1><R|, sqrt(γ_e1/2)|j><e1| for
// j ∈ {A,B,C}, and sqrt(γ_e2/2)|k><e2| for k ∈ {B,C}.  Channels with zero
// rate are omitted.
DecayChannelSet standard_decay_channels(const CompositeSpace& space, const PhysicsParams& phys);

// Integration controls.  The adaptive tolerances drive the dense
// Dormand–Prince propagators; fixed_step drives the factorized block engine
// (halve it to check convergence).
struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  double max_step = 0.0;       // μs; 0 = uncapped
  double fixed_step = 1.0e-4;  // μs
  std::int64_t max_steps = 50'000'000;

  detail::AdaptiveOptions adaptive() const { return {rel_tol, abs_tol, max_step, max_steps}; }
};

// Callback filling h with H(t) (size fixed by the caller's workspace).
using HamiltonianFn = std::function<void(double, ComplexMatrix&)>;

namespace detail {

// Precomputed fast dissipator application for a fixed channel set:
// dissipator(X) = Σ_k L_k X L_k† − ½(Q X + X Q), Q = Σ_k L_k†L_k.
// Structured single-atom channels use index-mapped gathers; arbitrary dense
// operators fall back to matrix products.
class LindbladApplier {
 public:
  LindbladApplier() = default;
  static LindbladApplier from_structured(const CompositeSpace& space,
                                         const DecayChannelSet& set);
  static LindbladApplier from_dense(const std::vector<ComplexMatrix>& rate_scaled_ops);

  // out += Σ_k L_k x L_k†  (the jump feed alone).
  void add_jump(const ComplexMatrix& x, ComplexMatrix& out) const;
  // out += full dissipator of x.
  void add_dissipator(const ComplexMatrix& x, ComplexMatrix& out) const;

  bool empty() const { return feeds_.empty() && dense_ops_.empty(); }

 private:
  struct Feed {
    double rate = 0.0;
    std::vector<int> from, to;  // aligned index lists over the composite space
  };
  std::vector<Feed> feeds_;
  ComplexVector q_half_;  // Q/2 diagonal for structured channels

  std::vector<ComplexMatrix> dense_ops_;
  ComplexMatrix q_dense_;
};

}  // namespace detail

// Solve i dψ/dt = H(t)ψ from t0 to t1 with the adaptive integrator,
// restarting at each interior point of `breakpoints` (drive discontinuities).
ComplexVector propagate_state(const HamiltonianFn& h_of_t, const ComplexVector& psi0, double t0,
                              double t1, const IntegratorConfig& cfg,
                              const std::vector<double>& breakpoints = {});

// Solve dX/dt = −i[H(t),X] + dissipator(X).  X0 may be any complex matrix
// (channel extraction feeds non-Hermitian matrix units); for a density matrix
// the evolution preserves trace, Hermiticity, and positivity up to tolerance.
ComplexMatrix propagate_lindblad(const HamiltonianFn& h_of_t, const detail::LindbladApplier& diss,
                                 const ComplexMatrix& x0, double t0, double t1,
                                 const IntegratorConfig& cfg,
                                 const std::vector<double>& breakpoints = {});

// Two-sided variant dX/dt = −i(H_L(t) X − X H_R(t)) + dissipator(X), used
// when the left and right factors of an operator evolve under different
// manifold selections.  With h_left == h_right this is propagate_lindblad.
ComplexMatrix propagate_lindblad_two_sided(const HamiltonianFn& h_left,
                                           const HamiltonianFn& h_right,
                                           const detail::LindbladApplier& diss,
                                           const ComplexMatrix& x0, double t0, double t1,
                                           const IntegratorConfig& cfg,
                                           const std::vector<double>& breakpoints = {});

// Which evolution engine the protocol runners use.  kAuto picks the
// factorized block engine when manifold isolation is on (its domain of
// validity) and the dense integrator otherwise.
enum class Engine { kAuto, kDense, kFactorized };

// Interior protocol breakpoints: π-pulse/window edges and the phase jump.
std::vector<double> protocol_breakpoints(const PulseSchedule& sched);

// Run the full three-step protocol on a ket (unitary; decay ignored).  Under
// manifold isolation the A/B target components are evolved in separate runs
// and recombined linearly.
ComplexVector run_protocol_state(const HamiltonianSpec& spec, const ComplexVector& psi0,
                                 const IntegratorConfig& cfg, Engine engine = Engine::kAuto);

// Run the full protocol on a matrix with the standard decay channels derived
// from spec.phys.  Under manifold isolation X0 is split into the four
// initial-sector blocks, each evolved with its (left, right) manifold pair.
ComplexMatrix run_protocol_density(const HamiltonianSpec& spec, const ComplexMatrix& x0,
                                   const IntegratorConfig& cfg, Engine engine = Engine::kAuto);

}  // namespace dstirap
