#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "dstirap/dynamics.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "support.hpp"

using namespace dstirap;
using dstirap::testing::rng;

namespace {
HamiltonianSpec gentle_spec(double t_total) {
  PhysicsParams phys = dstirap::testing::gentle_params();
  HamiltonianSpec spec;
  spec.space = CompositeSpace{1};
  spec.phys = phys;
  spec.sched = build_schedule(t_total, phys.omega_r, phys.sigma_frac, phys.delta_frac);
  return spec;
}
}  // namespace

TEST_CASE("soft pi pulse maps |1> to -i|r> and the inverted pulse returns +|1>") {
  const PhysicsParams p = cesium_defaults(1);
  const PulseSchedule sched = build_schedule(0.6, p.omega_r, p.sigma_frac, p.delta_frac);
  const IntegratorConfig cfg;
  auto drive = [&](int sign) {
    return [&p, &sched, sign](double t, ComplexMatrix& h) {
      h = detail::control_block(t, p, sched, sign);
    };
  };

  ComplexVector psi0 = ComplexVector::Zero(3);
  psi0(kCtrl1) = 1.0;
  const ComplexVector up = propagate_state(drive(+1), psi0, 0.0, sched.t_pi, cfg);
  ComplexVector want = ComplexVector::Zero(3);
  want(kCtrlR) = -kI;
  CHECK((up - want).norm() <= 1e-8);

  // The inverted pulse runs in the final window of the protocol clock.
  const ComplexVector back =
      propagate_state(drive(-1), up, sched.window_end(), sched.total(), cfg);
  CHECK((back - psi0).norm() <= 1e-8);

  ComplexVector ground = ComplexVector::Zero(3);
  ground(kCtrl0) = 1.0;
  const ComplexVector still = propagate_state(drive(+1), ground, 0.0, sched.t_pi, cfg);
  CHECK((still - ground).norm() <= 1e-10);
}

TEST_CASE("piecewise-constant drive honors breakpoints") {
  const double a = 3.0, b = 5.0, tau = 0.5;
  auto h_of_t = [&](double t, ComplexMatrix& h) {
    h.setZero();
    if (t < tau) {
      h(0, 1) = a;
      h(1, 0) = a;
    } else {
      h(0, 0) = b;
      h(1, 1) = -b;
    }
  };
  ComplexVector psi0 = ComplexVector::Zero(2);
  psi0(0) = 1.0;
  const IntegratorConfig cfg;
  const ComplexVector out = propagate_state(h_of_t, psi0, 0.0, 2.0 * tau, cfg, {tau});

  // exp(-i b sigma_z tau) * exp(-i a sigma_x tau) |0>
  ComplexVector mid(2);
  mid(0) = std::cos(a * tau);
  mid(1) = -kI * std::sin(a * tau);
  ComplexVector want(2);
  want(0) = std::exp(-kI * b * tau) * mid(0);
  want(1) = std::exp(kI * b * tau) * mid(1);
  CHECK((out - want).norm() <= 1e-8);
}

TEST_CASE("spontaneous decay matches the analytic exponential") {
  const double gamma = 2.4, t1 = 0.7;
  ComplexMatrix jump = ComplexMatrix::Zero(2, 2);
  jump(0, 1) = std::sqrt(gamma);
  const auto diss = detail::LindbladApplier::from_dense({jump});
  auto h_zero = [](double, ComplexMatrix& h) { h.setZero(); };

  ComplexMatrix rho0(2, 2);
  rho0 << 0.5, 0.5, 0.5, 0.5;  // (|0>+|1>)/sqrt(2)
  const ComplexMatrix rho = propagate_lindblad(h_zero, diss, rho0, 0.0, t1, IntegratorConfig{});

  const double ee = 0.5 * std::exp(-gamma * t1);
  const double coh = 0.5 * std::exp(-gamma * t1 / 2.0);
  CHECK(std::abs(rho(1, 1) - Complex{ee, 0.0}) <= 1e-8);
  CHECK(std::abs(rho(0, 0) - Complex{1.0 - ee, 0.0}) <= 1e-8);
  CHECK(std::abs(rho(0, 1) - Complex{coh, 0.0}) <= 1e-8);
  CHECK(std::abs(rho(1, 0) - Complex{coh, 0.0}) <= 1e-8);
}

namespace {
// Shared small open system for the linearity / two-sided checks.
struct SmallSystem {
  ComplexMatrix h0, h1;
  detail::LindbladApplier diss;
  HamiltonianFn fn;

  SmallSystem() {
    using dstirap::testing::random_matrix;
    const ComplexMatrix a = random_matrix(3, 3);
    const ComplexMatrix b = random_matrix(3, 3);
    h0 = a + a.adjoint();
    h1 = b + b.adjoint();
    ComplexMatrix jump = ComplexMatrix::Zero(3, 3);
    jump(0, 2) = std::sqrt(0.8);
    diss = detail::LindbladApplier::from_dense({jump});
    fn = [this](double t, ComplexMatrix& h) { h = h0 + std::sin(3.0 * t) * h1; };
  }
};
}  // namespace

TEST_CASE("density propagation is linear over complex coefficients") {
  SmallSystem sys;
  const ComplexMatrix xa = dstirap::testing::random_matrix(3, 3);
  const ComplexMatrix xb = dstirap::testing::random_matrix(3, 3);
  const Complex alpha{0.3, -0.4}, beta{-1.1, 0.25};
  const IntegratorConfig cfg;
  const ComplexMatrix combined =
      propagate_lindblad(sys.fn, sys.diss, alpha * xa + beta * xb, 0.0, 0.9, cfg);
  const ComplexMatrix separate =
      alpha * propagate_lindblad(sys.fn, sys.diss, xa, 0.0, 0.9, cfg) +
      beta * propagate_lindblad(sys.fn, sys.diss, xb, 0.0, 0.9, cfg);
  CHECK((combined - separate).norm() <= 1e-8);
}

TEST_CASE("two-sided propagation reduces to one-sided when both sides match") {
  SmallSystem sys;
  const ComplexMatrix x0 = dstirap::testing::random_matrix(3, 3);
  const IntegratorConfig cfg;
  const ComplexMatrix one = propagate_lindblad(sys.fn, sys.diss, x0, 0.0, 0.8, cfg);
  const ComplexMatrix two =
      propagate_lindblad_two_sided(sys.fn, sys.fn, sys.diss, x0, 0.0, 0.8, cfg);
  CHECK((one - two).norm() <= 1e-10);
}

TEST_CASE("protocol state run conserves norm and matches the decay-free density run") {
  HamiltonianSpec spec = gentle_spec(0.3);
  spec.phys.gamma_r = spec.phys.gamma_big_r = 0.0;
  spec.phys.gamma_e1 = spec.phys.gamma_e2 = 0.0;

  const std::vector<int> emb = computational_embedding(spec.space);
  ComplexVector psi0 = ComplexVector::Zero(spec.space.dim());
  for (int idx : emb) psi0(idx) = 0.5;

  const IntegratorConfig cfg;

  // With both drive manifolds active in a single Hamiltonian the decay-free
  // evolution is exactly unitary, however far the pulse is from adiabaticity.
  HamiltonianSpec joint = spec;
  joint.manifold_isolation = false;
  const ComplexVector psi_joint = run_protocol_state(joint, psi0, cfg, Engine::kDense);
  CHECK(std::abs(psi_joint.norm() - 1.0) <= 1e-8);
  const ComplexMatrix rho_joint =
      run_protocol_density(joint, psi0 * psi0.adjoint(), cfg, Engine::kDense);
  CHECK((rho_joint - psi_joint * psi_joint.adjoint()).norm() <= 1e-6);

  // Beam-selective splitting evolves each sector unitarily on its own; the
  // recombined state is only approximately normalized away from the operating
  // point (both sectors strand amplitude on the shared bright level), so the
  // exact invariants are per-sector norm conservation...
  for (Manifold m : {Manifold::kA, Manifold::kB}) {
    ComplexVector part = psi0;
    for (int i = 0; i < spec.space.dim(); ++i)
      if (manifold_for_target_level(spec.space.target_level(i)) != m) part(i) = Complex{0.0, 0.0};
    part /= part.norm();
    const ComplexVector evolved = run_protocol_state(spec, part, cfg, Engine::kDense);
    CHECK(std::abs(evolved.norm() - 1.0) <= 1e-8);
  }

  // ...and exact agreement between the state-vector and density-matrix paths,
  // which implement the same linear map.
  const ComplexVector psi = run_protocol_state(spec, psi0, cfg, Engine::kDense);
  const ComplexMatrix rho = run_protocol_density(spec, psi0 * psi0.adjoint(), cfg, Engine::kDense);
  CHECK((rho - psi * psi.adjoint()).norm() <= 1e-6);
}

TEST_CASE("protocol density run preserves trace, hermiticity, and positivity with decay") {
  HamiltonianSpec spec = gentle_spec(0.3);
  spec.manifold_isolation = false;
  const std::vector<int> emb = computational_embedding(spec.space);
  ComplexVector psi0 = ComplexVector::Zero(spec.space.dim());
  for (int idx : emb) psi0(idx) = 0.5;
  const ComplexMatrix rho0 = psi0 * psi0.adjoint();

  const ComplexMatrix rho = run_protocol_density(spec, rho0, IntegratorConfig{}, Engine::kDense);
  // Every decay channel lands inside the modeled space, so the trace is
  // preserved exactly (up to integration error).
  CHECK(std::abs(rho.trace().real() - 1.0) <= 1e-8);
  CHECK(std::abs(rho.trace().imag()) <= 1e-10);
  CHECK((rho - rho.adjoint()).norm() <= 1e-8);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  CHECK(es.eigenvalues().minCoeff() >= -1e-7);
}

TEST_CASE("standard decay channels carry the configured rates") {
  const PhysicsParams phys = cesium_defaults(1);
  const CompositeSpace space{1};
  const DecayChannelSet set = standard_decay_channels(space, phys);
  double total_rate = 0.0;
  for (const auto& ch : set.channels) {
    CHECK(ch.rate > 0.0);
    total_rate += ch.rate;
  }
  // Control r splits γ_r across two channels; target: γ_R, 3 × γ_e1/2,
  // 2 × γ_e2/2.
  const double expected = phys.gamma_r + phys.gamma_big_r + 1.5 * phys.gamma_e1 + phys.gamma_e2;
  CHECK(total_rate == doctest::Approx(expected).epsilon(1e-12));

  for (const auto& [label, op] : set.dense_operators(space)) {
    CHECK(op.rows() == space.dim());
    CHECK(op.norm() > 0.0);
    CHECK(!label.empty());
  }

  PhysicsParams closed = phys;
  closed.gamma_r = closed.gamma_big_r = closed.gamma_e1 = closed.gamma_e2 = 0.0;
  CHECK(standard_decay_channels(space, closed).channels.empty());
}
