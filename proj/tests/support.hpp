// Shared helpers for the unit tests: seeded RNG, random operators, and a
// gentle low-blockade parameter point where the dense reference integrator is
// cheap enough for cross-engine comparisons.
#pragma once

#include "dstirap/atom_model.hpp"
#include "dstirap/numerics.hpp"

#include <Eigen/QR>
#include <random>

namespace dstirap::testing {

inline std::mt19937& rng() {
  static std::mt19937 gen(20240815u);
  return gen;
}

inline ComplexMatrix random_matrix(int rows, int cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(n(rng()), n(rng()));
  return m;
}

// Haar-ish random unitary: Q factor of a complex Ginibre matrix.
inline ComplexMatrix random_unitary(int d) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(d, d));
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const Complex diag = r(i, i);
    q.col(i) *= (diag == Complex{0.0, 0.0}) ? Complex{1.0, 0.0} : diag / std::abs(diag);
  }
  return q;
}

// Random density matrix (positive, unit trace).
inline ComplexMatrix random_density(int d) {
  ComplexMatrix g = random_matrix(d, d);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

// Single-control parameters with a deliberately small blockade so the dense
// adaptive integrator resolves the protocol quickly (cross-engine checks).
inline PhysicsParams gentle_params() {
  PhysicsParams p = cesium_defaults(1);
  p.v_ct = {8.0 * p.omega0};
  return p;
}

}  // namespace dstirap::testing
