// numerics.cpp — implementation of the shared dense linear algebra helpers.
#include "dstirap/numerics.hpp"

#include <stdexcept>

namespace dstirap {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matmul: inner dimensions do not match");
  return a * b;
}

Complex trace(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("trace: matrix not square");
  return a.trace();
}

Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("frobenius_inner: shape mismatch");
  return (a.adjoint() * b).trace();
}

std::vector<ComplexVector> kernel_basis(const ComplexMatrix& h, double tol) {
  if (h.rows() != h.cols()) throw std::invalid_argument("kernel_basis: matrix not square");
  const double scale = h.norm();
  if ((h - h.adjoint()).norm() > 1e-10 * std::max(1.0, scale))
    throw std::invalid_argument("kernel_basis: matrix is not Hermitian");
  if (scale == 0.0) {
    std::vector<ComplexVector> basis;
    for (Eigen::Index i = 0; i < h.rows(); ++i)
      basis.push_back(ComplexMatrix::Identity(h.rows(), h.rows()).col(i));
    return basis;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("kernel_basis: eigensolver failed to converge");
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const double hnorm = evals.cwiseAbs().maxCoeff();
  std::vector<ComplexVector> basis;
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    if (std::abs(evals(i)) < tol * hnorm) basis.push_back(solver.eigenvectors().col(i));
  return basis;
}

ComplexVector vec(const ComplexMatrix& a) {
  return Eigen::Map<const ComplexVector>(a.data(), a.size());
}

ComplexMatrix unvec(const ComplexVector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols)
    throw std::invalid_argument("unvec: size mismatch");
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

}  // namespace dstirap
