// numerics.hpp — dense complex linear algebra helpers shared across the simulator.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace dstirap {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
// Fixed-size single-atom blocks (3-level control, 6-level target).
using ComplexMatrix3 = Eigen::Matrix3cd;
using ComplexMatrix6 = Eigen::Matrix<Complex, 6, 6>;
using ComplexVector6 = Eigen::Matrix<Complex, 6, 1>;

inline constexpr Complex kI{0.0, 1.0};

// Kronecker product a ⊗ b (row-major block convention: result block (i,j) is
// a(i,j) * b).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& a);

// Plain matrix product with shape validation.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

Complex trace(const ComplexMatrix& a);

// Frobenius inner product <a, b> = Tr(a† b).
Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// Orthonormal basis of the numerical kernel of a Hermitian matrix: the
// eigenvectors whose |eigenvalue| < tol * ‖h‖ (‖h‖ = largest |eigenvalue|).
// Throws std::invalid_argument if h is not square or not Hermitian.
std::vector<ComplexVector> kernel_basis(const ComplexMatrix& h, double tol = 1e-9);

// Column-stacking vectorization and its inverse.
ComplexVector vec(const ComplexMatrix& a);
ComplexMatrix unvec(const ComplexVector& v, int rows, int cols);

}  // namespace dstirap
