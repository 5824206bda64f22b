#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "dstirap/gateproto.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "support.hpp"

using namespace dstirap;

TEST_CASE("ideal gate is diagonal with +1 on the all-zeros state") {
  const double gamma = 0.7;
  const ComplexMatrix u = ideal_gate_unitary(2, gamma);
  REQUIRE(u.rows() == 4);
  CHECK(std::abs(u(0, 0) - Complex{1.0, 0.0}) < 1e-15);
  const Complex phase = std::exp(Complex{0.0, gamma});
  for (int k = 1; k < 4; ++k) CHECK(std::abs(u(k, k) - phase) < 1e-15);
  ComplexMatrix off = u;
  off.diagonal().setZero();
  CHECK(off.norm() == 0.0);
  // At Γ = π this is diag(1, −1, −1, −1).
  const ComplexMatrix upi = ideal_gate_unitary(2, M_PI);
  CHECK(std::abs(upi(3, 3) - Complex{-1.0, 0.0}) < 1e-12);
}

TEST_CASE("pauli basis is a complete orthogonal operator set") {
  const auto basis = pauli_basis(2);
  REQUIRE(basis.size() == 16);
  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  int identity_count = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const ComplexMatrix& p = basis[i];
    REQUIRE(p.rows() == 4);
    CHECK((p - p.adjoint()).norm() < 1e-14);   // Hermitian
    CHECK((p * p - id).norm() < 1e-14);        // involutory
    if ((p - id).norm() < 1e-14) ++identity_count;
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      CHECK(std::abs((p.adjoint() * basis[j]).trace()) < 1e-13);
  }
  CHECK(identity_count == 1);
}

TEST_CASE("unitary channel applies conjugation consistently with its superoperator") {
  const ComplexMatrix u = dstirap::testing::random_unitary(4);
  const GateChannel ch = unitary_channel(u);
  CHECK(ch.n_qubits == 2);
  const ComplexMatrix x = dstirap::testing::random_matrix(4, 4);
  CHECK((ch.apply(x) - u * x * u.adjoint()).norm() < 1e-12);
}

TEST_CASE("pauli-sum fidelity matches the unitary closed form on random pairs") {
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix u = dstirap::testing::random_unitary(4);
    const ComplexMatrix v = dstirap::testing::random_unitary(4);
    const double via_sum = average_gate_fidelity(unitary_channel(v), u);
    const double closed = average_gate_fidelity_unitary(v, u);
    CHECK(std::abs(via_sum - closed) < 1e-10);
  }
}

TEST_CASE("fidelity closed form reproduces known special cases") {
  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  CHECK(average_gate_fidelity_unitary(id, id) == doctest::Approx(1.0).epsilon(1e-14));

  // diag(1,1,1,−1) against diag(1,1,−1,1): the trace inner product vanishes,
  // leaving F̄ = d/(d² + d) = 1/5.
  ComplexMatrix cz = id;
  cz(3, 3) = -1.0;
  ComplexMatrix other = id;
  other(2, 2) = -1.0;
  CHECK(average_gate_fidelity_unitary(other, cz) == doctest::Approx(0.2).epsilon(1e-14));

  // Left-multiplying both gates by the same unitary changes nothing.
  const ComplexMatrix w = dstirap::testing::random_unitary(4);
  const ComplexMatrix u = dstirap::testing::random_unitary(4);
  const ComplexMatrix v = dstirap::testing::random_unitary(4);
  CHECK(std::abs(average_gate_fidelity_unitary(w * v, w * u) -
                 average_gate_fidelity_unitary(v, u)) < 1e-12);
}

TEST_CASE("fully depolarizing channel scores 1/d against any unitary") {
  const int d = 4;
  ComplexMatrix idvec = ComplexMatrix::Identity(d, d);
  const ComplexVector vid = vec(idvec);
  GateChannel depol;
  depol.n_qubits = 2;
  depol.superop = (vid * vid.transpose()) / static_cast<double>(d);
  const ComplexMatrix u = dstirap::testing::random_unitary(d);
  CHECK(average_gate_fidelity(depol, u) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("spec assembly validates its inputs") {
  const PhysicsParams phys = cesium_defaults(1);
  CHECK_THROWS_AS(make_protocol_spec(phys, 2, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(make_protocol_spec(phys, 1, 1e-4), std::invalid_argument);
  const HamiltonianSpec spec = make_protocol_spec(phys, 1, 0.6);
  CHECK(spec.space.n_controls == 1);
  CHECK(spec.sched.total() == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(spec.sched.sigma == doctest::Approx(phys.sigma_frac * spec.sched.t_d).epsilon(1e-12));
}

TEST_CASE("extracted protocol channel behaves like a slightly lossy gate") {
  // Short-gate pulse shape: the fast-gate regime this total time calls for.
  PhysicsParams phys = dstirap::testing::gentle_params();
  phys.sigma_frac = kShortGateSigmaFrac;
  phys.delta_frac = kShortGateDeltaFrac;
  const double t_total = 0.6;
  const HamiltonianSpec spec = make_protocol_spec(phys, 1, t_total);
  const GateChannel ch = extract_channel(spec);
  REQUIRE(ch.n_qubits == 2);

  // Hermiticity preservation.
  const ComplexMatrix hseed = dstirap::testing::random_matrix(4, 4);
  const ComplexMatrix h = hseed + hseed.adjoint();
  const ComplexMatrix eh = ch.apply(h);
  CHECK((eh - eh.adjoint()).norm() < 1e-9 * (1.0 + eh.norm()));

  // Slightly trace-decreasing: leakage out of the qubit subspace only.
  const ComplexMatrix mixed = ComplexMatrix::Identity(4, 4) / 4.0;
  const double tr = ch.apply(mixed).trace().real();
  CHECK(tr <= 1.0 + 1e-9);
  CHECK(tr > 0.9);

  const double fbar = average_gate_fidelity(ch, ideal_gate_unitary(2, phys.gamma_phase));
  CHECK(fbar > 0.9);
  CHECK(fbar <= 1.0 + 1e-9);

  // The convenience wrapper reports the same score.
  const GateFidelityResult res = protocol_gate_fidelity(phys, 1, t_total);
  CHECK(std::abs(res.average_fidelity - fbar) < 1e-12);
}
