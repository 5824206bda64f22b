// pulse.cpp — envelope shapes and schedule construction.
#include "dstirap/pulse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dstirap {

namespace {
constexpr double kPi = std::numbers::pi;
}

PulseSchedule build_schedule(double t_total, double omega_r, double sigma_frac, double delta_frac) {
  if (omega_r <= 0.0) throw std::invalid_argument("build_schedule: omega_r must be positive");
  if (sigma_frac <= 0.0 || delta_frac <= 0.0)
    throw std::invalid_argument("build_schedule: pulse fractions must be positive");
  PulseSchedule s;
  s.t_pi = 2.0 * kPi / omega_r;
  s.t_d = t_total - 2.0 * s.t_pi;
  if (s.t_d <= 0.0)
    throw std::invalid_argument("build_schedule: total time leaves no d-STIRAP window");
  s.sigma = sigma_frac * s.t_d;
  s.offset = delta_frac * s.sigma;
  s.t_s = s.t_d / 4.0 - s.offset;
  s.t_p = s.t_d / 4.0 + s.offset;
  s.t_p2 = 3.0 * s.t_d / 4.0 - s.offset;
  s.t_s2 = 3.0 * s.t_d / 4.0 + s.offset;
  s.t_mid = s.t_d / 2.0;
  if (!(0.0 < s.t_s && s.t_s < s.t_p && s.t_p < s.t_mid && s.t_mid < s.t_p2 && s.t_p2 < s.t_s2 &&
        s.t_s2 < s.t_d))
    throw std::invalid_argument("build_schedule: fractions break the pulse ordering");
  return s;
}

double soft_pi_amplitude(double t, double omega_r, double duration, int sign) {
  if (duration <= 0.0) throw std::invalid_argument("soft_pi_amplitude: duration must be positive");
  if (t < 0.0 || t > duration) return 0.0;
  return sign * 0.5 * omega_r * (1.0 - std::cos(2.0 * kPi * t / duration));
}

double gaussian(double t, double t0, double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("gaussian: sigma must be positive");
  const double x = (t - t0) / sigma;
  return std::exp(-0.5 * x * x);
}

double dstirap_pump(double t, const PulseSchedule& s, double omega0) {
  if (t < 0.0 || t > s.t_d) return 0.0;
  return 0.5 * omega0 * (gaussian(t, s.t_p, s.sigma) + gaussian(t, s.t_p2, s.sigma));
}

Complex dstirap_stokes(double t, const PulseSchedule& s, double omega0, double gamma_phase) {
  if (t < 0.0 || t > s.t_d) return {0.0, 0.0};
  const double mag = 0.5 * omega0 * (gaussian(t, s.t_s, s.sigma) + gaussian(t, s.t_s2, s.sigma));
  const double phi = phase_profile(t, s, gamma_phase);
  return mag * std::exp(Complex(0.0, -phi));
}

double phase_profile(double t, const PulseSchedule& s, double gamma_phase) {
  return t < s.t_mid ? gamma_phase : 0.0;
}

}  // namespace dstirap
