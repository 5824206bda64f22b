#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "dstirap/pulse.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace dstirap;

namespace {
constexpr double kOmega0 = 2.0 * M_PI * 44.0;

// Simpson integration, fine enough for 1e-12-level pulse areas.
template <typename F>
double integrate(F f, double a, double b, int n = 20001) {
  const double h = (b - a) / (n - 1);
  double s = f(a) + f(b);
  for (int i = 1; i < n - 1; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}
}  // namespace

TEST_CASE("soft pulse area is exactly pi") {
  const double duration = 2.0 * M_PI / kOmega0;
  const double area =
      integrate([&](double t) { return soft_pi_amplitude(t, kOmega0, duration); }, 0.0, duration);
  CHECK(std::abs(area - M_PI) < 1e-10);

  // The inverted pulse has area −π; outside the window the drive is off.
  const double area_neg = integrate(
      [&](double t) { return soft_pi_amplitude(t, kOmega0, duration, -1); }, 0.0, duration);
  CHECK(std::abs(area_neg + M_PI) < 1e-10);
  CHECK(soft_pi_amplitude(-1e-9, kOmega0, duration) == 0.0);
  CHECK(soft_pi_amplitude(duration + 1e-9, kOmega0, duration) == 0.0);
}

TEST_CASE("soft pulse switches on and off smoothly") {
  const double duration = 2.0 * M_PI / kOmega0;
  CHECK(soft_pi_amplitude(0.0, kOmega0, duration) == 0.0);
  CHECK(std::abs(soft_pi_amplitude(duration, kOmega0, duration)) < 1e-12);
  // Peak value Ω_r at the center.
  CHECK(std::abs(soft_pi_amplitude(duration / 2.0, kOmega0, duration) - kOmega0) < 1e-12);
}

TEST_CASE("schedule carves the total time into pi windows and the d-STIRAP window") {
  const double t_total = 0.6;
  const PulseSchedule s = build_schedule(t_total, kOmega0);
  CHECK(std::abs(s.t_pi - 2.0 * M_PI / kOmega0) < 1e-15);
  CHECK(std::abs(s.total() - t_total) < 1e-12);
  CHECK(std::abs(s.t_d - (t_total - 2.0 * s.t_pi)) < 1e-12);
  CHECK(std::abs(s.window_start() - s.t_pi) < 1e-15);
  CHECK(std::abs(s.window_end() - (s.t_pi + s.t_d)) < 1e-12);
  CHECK(std::abs(s.sigma - kDefaultSigmaFrac * s.t_d) < 1e-12);
  CHECK(std::abs(s.offset - kDefaultDeltaFrac * s.sigma) < 1e-12);
}

TEST_CASE("pulse centers are ordered and mirror-symmetric about the phase jump") {
  const PulseSchedule s = build_schedule(0.6, kOmega0);
  CHECK(s.t_s < s.t_p);
  CHECK(s.t_p < s.t_mid);
  CHECK(s.t_mid < s.t_p2);
  CHECK(s.t_p2 < s.t_s2);
  CHECK(std::abs(s.t_mid - s.t_d / 2.0) < 1e-12);
  CHECK(std::abs((s.t_mid - s.t_s) - (s.t_s2 - s.t_mid)) < 1e-12);
  CHECK(std::abs((s.t_mid - s.t_p) - (s.t_p2 - s.t_mid)) < 1e-12);
  // Stokes leads pump in the first pair; order reverses in the second.
  CHECK(std::abs((s.t_p - s.t_s) - 2.0 * s.offset) < 1e-12);
}

TEST_CASE("both envelopes are strongly suppressed at the jump and the edges") {
  // Both shipped pulse shapes keep the nearest Gaussian center >= 3.6 sigma
  // away from the window edges and the phase-jump instant, so the drives are
  // down by at least ~3e-3 of the peak there.
  for (auto [sf, df] : {std::pair{kDefaultSigmaFrac, kDefaultDeltaFrac},
                        std::pair{kShortGateSigmaFrac, kShortGateDeltaFrac}}) {
    const PulseSchedule s = build_schedule(0.6, kOmega0, sf, df);
    for (double t : {s.t_mid, 0.0, s.t_d}) {
      CHECK(std::abs(dstirap_pump(t, s, kOmega0)) < 3e-3 * kOmega0);
      CHECK(std::abs(dstirap_stokes(t, s, kOmega0, M_PI)) < 3e-3 * kOmega0);
    }
  }
}

TEST_CASE("envelopes peak at half the drive amplitude on their centers") {
  const PulseSchedule s = build_schedule(0.6, kOmega0);
  CHECK(std::abs(dstirap_pump(s.t_p, s, kOmega0) - kOmega0 / 2.0) < 1e-4 * kOmega0);
  CHECK(std::abs(std::abs(dstirap_stokes(s.t_s, s, kOmega0, M_PI)) - kOmega0 / 2.0) <
        1e-4 * kOmega0);
  CHECK(dstirap_pump(-1e-9, s, kOmega0) == 0.0);
  CHECK(dstirap_pump(s.t_d + 1e-9, s, kOmega0) == 0.0);
  CHECK(std::abs(dstirap_stokes(s.t_d + 1e-9, s, kOmega0, M_PI)) == 0.0);
}

TEST_CASE("phase profile steps from gamma to zero at the mid-point") {
  const PulseSchedule s = build_schedule(0.6, kOmega0);
  const double gamma = 1.234;
  std::uniform_real_distribution<double> first(0.0, s.t_mid - 1e-9);
  std::uniform_real_distribution<double> second(s.t_mid, s.t_d);
  for (int k = 0; k < 50; ++k) {
    const double a = first(dstirap::testing::rng());
    const double b = second(dstirap::testing::rng());
    CHECK(phase_profile(a, s, gamma) == gamma);
    CHECK(phase_profile(b, s, gamma) == 0.0);
    // The imprinted phase difference is gamma for any such pair.
    CHECK(std::abs((phase_profile(a, s, gamma) - phase_profile(b, s, gamma)) - gamma) == 0.0);
  }
}

TEST_CASE("stokes amplitude carries e^{-i phi(t)}") {
  const PulseSchedule s = build_schedule(0.6, kOmega0);
  const double gamma = 0.7;
  const double t1 = s.t_s;  // first half
  const Complex v1 = dstirap_stokes(t1, s, kOmega0, gamma);
  const double mag1 = std::abs(v1);
  CHECK(std::abs(v1 - mag1 * std::exp(Complex{0.0, -gamma})) < 1e-12 * kOmega0);
  const double t2 = s.t_s2;  // second half: phase profile is zero, amplitude real
  const Complex v2 = dstirap_stokes(t2, s, kOmega0, gamma);
  CHECK(std::abs(v2.imag()) < 1e-15 * kOmega0);
  CHECK(v2.real() > 0.0);
}

TEST_CASE("gaussian helper is the plain unnormalized bell curve") {
  CHECK(gaussian(1.0, 1.0, 0.3) == 1.0);
  CHECK(std::abs(gaussian(1.3, 1.0, 0.3) - std::exp(-0.5)) < 1e-14);
  CHECK_THROWS(gaussian(0.0, 0.0, 0.0));
}

TEST_CASE("schedule validation rejects impossible windows") {
  CHECK_THROWS(build_schedule(2.0 * 2.0 * M_PI / kOmega0, kOmega0));  // no window left
  CHECK_THROWS(build_schedule(0.6, kOmega0, -0.1, 0.75));
  CHECK_THROWS(build_schedule(0.6, kOmega0, kDefaultSigmaFrac, -1.0));
}
