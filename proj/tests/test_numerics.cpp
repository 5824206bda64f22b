#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "dstirap/numerics.hpp"

#include <doctest.h>

#include "support.hpp"

using namespace dstirap;
using dstirap::testing::random_matrix;

TEST_CASE("kron dimensions and a hand-computed 2x2 example") {
  ComplexMatrix a(2, 2), b(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  b << 0.0, 1.0, 1.0, 0.0;
  const ComplexMatrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 4);
  // Top-left block is a(0,0)·b, top-right a(0,1)·b.
  CHECK(k(0, 1) == Complex{1.0, 0.0});
  CHECK(k(0, 3) == Complex{2.0, 0.0});
  CHECK(k(1, 0) == Complex{1.0, 0.0});
  CHECK(k(2, 3) == Complex{4.0, 0.0});
  CHECK(k(3, 2) == Complex{4.0, 0.0});
  CHECK(k(0, 0) == Complex{0.0, 0.0});
}

TEST_CASE("kron is associative and multiplicative on random inputs") {
  const ComplexMatrix a = random_matrix(2, 2), b = random_matrix(3, 3), c = random_matrix(2, 2);
  CHECK((kron(kron(a, b), c) - kron(a, kron(b, c))).norm() < 1e-12);
  const ComplexMatrix x = random_matrix(2, 2), y = random_matrix(3, 3);
  // (a⊗b)(x⊗y) = (ax)⊗(by)
  CHECK((kron(a, b) * kron(x, y) - kron(a * x, b * y)).norm() < 1e-12);
}

TEST_CASE("dagger, trace, frobenius inner product") {
  const ComplexMatrix a = random_matrix(4, 4), b = random_matrix(4, 4);
  CHECK((dagger(a) - a.adjoint()).norm() == 0.0);
  CHECK(std::abs(trace(a) - a.trace()) < 1e-14);
  // Tr(A†B) by explicit summation.
  Complex s{0.0, 0.0};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += std::conj(a(i, j)) * b(i, j);
  CHECK(std::abs(frobenius_inner(a, b) - s) < 1e-12);
  CHECK((matmul(a, b) - a * b).norm() < 1e-12);
}

TEST_CASE("vec stacks columns; unvec inverts it") {
  ComplexMatrix m(2, 3);
  m << 1.0, 3.0, 5.0, 2.0, 4.0, 6.0;
  const ComplexVector v = vec(m);
  REQUIRE(v.size() == 6);
  for (int k = 0; k < 6; ++k) CHECK(v(k) == Complex(static_cast<double>(k + 1), 0.0));
  CHECK((unvec(v, 2, 3) - m).norm() == 0.0);
}

TEST_CASE("matrix unit |m><n| vectorizes to the basis vector n*d + m") {
  const int d = 3, m = 1, n = 2;
  ComplexMatrix unit = ComplexMatrix::Zero(d, d);
  unit(m, n) = 1.0;
  const ComplexVector v = vec(unit);
  for (int k = 0; k < d * d; ++k)
    CHECK(v(k) == (k == n * d + m ? Complex{1.0, 0.0} : Complex{0.0, 0.0}));
}

TEST_CASE("vec intertwines two-sided products: vec(BXA^T) = (A kron B) vec(X)") {
  const ComplexMatrix a = random_matrix(3, 3), b = random_matrix(3, 3), x = random_matrix(3, 3);
  const ComplexVector lhs = vec(b * x * a.transpose());
  const ComplexVector rhs = kron(a, b) * vec(x);
  CHECK((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("kernel_basis finds the zero eigenspace of a Hermitian matrix") {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(1, 1) = 1.0;
  h(2, 2) = 2.0;
  const auto basis = kernel_basis(h);
  REQUIRE(basis.size() == 1);
  CHECK(std::abs(std::abs(basis[0](0)) - 1.0) < 1e-12);

  // Rotating the same operator rotates its kernel.
  const ComplexMatrix u = dstirap::testing::random_unitary(3);
  const auto rotated = kernel_basis(u * h * u.adjoint());
  REQUIRE(rotated.size() == 1);
  const Complex overlap = (u.col(0).adjoint() * rotated[0])(0, 0);
  CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-9);
}

TEST_CASE("kernel_basis returns an orthonormal set") {
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  h(3, 3) = 5.0;  // 3-dimensional kernel
  const auto basis = kernel_basis(h);
  REQUIRE(basis.size() == 3);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex g = (basis[i].adjoint() * basis[j])(0, 0);
      CHECK(std::abs(g - (i == j ? Complex{1.0, 0.0} : Complex{0.0, 0.0})) < 1e-10);
    }
}
