// grover.cpp — Grover search with a pluggable multi-qubit phase-gate channel.
#include "dstirap/grover.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dstirap {

namespace {

double grover_angle(int n_qubits) {
  return std::asin(std::pow(2.0, -0.5 * n_qubits));
}

ComplexMatrix local_kron(const ComplexMatrix& single, int n_qubits) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) out = kron(out, single);
  return out;
}

}  // namespace

int optimal_iterations(int n_qubits) {
  if (n_qubits < 2) throw std::invalid_argument("optimal_iterations: need n >= 2");
  const double theta = grover_angle(n_qubits);
  const int k = static_cast<int>(std::lround(std::numbers::pi / (4.0 * theta) - 0.5));
  return std::max(1, k);
}

double ideal_success_probability(int n_qubits, int iterations) {
  const double theta = grover_angle(n_qubits);
  const double s = std::sin((2.0 * iterations + 1.0) * theta);
  return s * s;
}

double run_grover(const GateChannel& gate, int iterations) {
  if (iterations < 0) throw std::invalid_argument("run_grover: negative iteration count");
  const int n = gate.n_qubits;
  if (n < 1) throw std::invalid_argument("run_grover: channel has no qubits");
  const int d = gate.dim();

  ComplexMatrix h(2, 2), x(2, 2);
  const double isq2 = 1.0 / std::sqrt(2.0);
  h << isq2, isq2, isq2, -isq2;
  x << 0.0, 1.0, 1.0, 0.0;
  const ComplexMatrix hn = local_kron(h, n);
  const ComplexMatrix xn = local_kron(x, n);
  auto conj_by = [](const ComplexMatrix& u, const ComplexMatrix& rho) {
    return ComplexMatrix(u * rho * u.adjoint());
  };

  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  rho(0, 0) = 1.0;
  rho = conj_by(hn, rho);
  for (int k = 0; k < iterations; ++k) {
    rho = conj_by(xn, gate.apply(conj_by(xn, rho)));   // oracle marking |1…1>
    rho = conj_by(hn, gate.apply(conj_by(hn, rho)));   // inversion about the mean
  }
  return rho(d - 1, d - 1).real();
}

double run_grover_ideal(int n_qubits, int iterations) {
  return run_grover(unitary_channel(ideal_gate_unitary(n_qubits, std::numbers::pi)), iterations);
}

}  // namespace dstirap
