#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "dstirap/grover.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "support.hpp"

using namespace dstirap;

TEST_CASE("optimal iteration counts for small registers") {
  CHECK(optimal_iterations(2) == 1);
  CHECK(optimal_iterations(3) == 2);
  CHECK(optimal_iterations(4) == 3);
  CHECK_THROWS_AS(optimal_iterations(1), std::invalid_argument);
}

TEST_CASE("ideal success probabilities hit the exact rational values") {
  // sin²((2k+1)·asin(2^{-n/2})) collapses to rationals for these registers.
  CHECK(std::abs(ideal_success_probability(2, 1) - 1.0) < 1e-12);
  CHECK(std::abs(ideal_success_probability(3, 2) - 121.0 / 128.0) < 1e-12);
  CHECK(std::abs(ideal_success_probability(4, 3) - 0.9613189697265625) < 1e-12);
  // Zero iterations leaves the uniform superposition.
  for (int n = 2; n <= 4; ++n)
    CHECK(std::abs(ideal_success_probability(n, 0) - std::pow(2.0, -n)) < 1e-14);
}

TEST_CASE("density-matrix search with the ideal channel matches the closed form") {
  for (int n = 2; n <= 3; ++n)
    for (int k = 0; k <= 3; ++k)
      CHECK(std::abs(run_grover_ideal(n, k) - ideal_success_probability(n, k)) < 1e-10);
}

TEST_CASE("supplying the ideal gate as an explicit channel changes nothing") {
  for (int n = 2; n <= 3; ++n) {
    const GateChannel ideal = unitary_channel(ideal_gate_unitary(n, M_PI));
    const int k = optimal_iterations(n);
    CHECK(std::abs(run_grover(ideal, k) - run_grover_ideal(n, k)) < 1e-12);
  }
}

TEST_CASE("success probabilities stay within physical bounds") {
  for (int n = 2; n <= 4; ++n)
    for (int k = 0; k <= 4; ++k) {
      const double p = ideal_success_probability(n, k);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0 + 1e-12);
    }
  CHECK_THROWS_AS(run_grover(unitary_channel(ideal_gate_unitary(2, M_PI)), -1),
                  std::invalid_argument);
}
