// dopri5.hpp — embedded Dormand–Prince 5(4) adaptive integrator, generic over
// dense Eigen state types (vectors or matrices).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace dstirap::detail {

struct AdaptiveOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  double max_step = 0.0;  // 0 = uncapped
  std::int64_t max_steps = 50'000'000;
};

// Scaled RMS error norm: sqrt(mean(|err_i|² / (abs + rel·max(|y0_i|,|y1_i|))²)).
template <typename State>
double error_norm(const State& err, const State& y0, const State& y1, double abs_tol,
                  double rel_tol) {
  const auto sc =
      (abs_tol + rel_tol * y0.array().abs().max(y1.array().abs())).matrix().eval();
  const double n = static_cast<double>(err.size());
  return std::sqrt((err.array().abs() / sc.array()).square().sum() / n);
}

// Integrate dy/dt = rhs(t, y) from t0 to t1 (t1 >= t0).  `rhs` has signature
// void(double t, const State& y, State& dydt).  Throws std::runtime_error on
// step-size underflow or when max_steps is exhausted.
template <typename State, typename Rhs>
State dopri5(State y, double t0, double t1, Rhs&& rhs, const AdaptiveOptions& opt) {
  if (opt.rel_tol <= 0.0 || opt.abs_tol <= 0.0)
    throw std::invalid_argument("dopri5: tolerances must be positive");
  if (t1 < t0) throw std::invalid_argument("dopri5: backward integration not supported");
  if (t1 == t0) return y;

  // Butcher tableau (Dormand & Prince, 1980).
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  // Difference between the 5th-order and the embedded 4th-order weights.
  constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                   e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

  State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y;
  State y_stage = y, y_new = y, err = y;

  double t = t0;
  rhs(t, y, k1);

  // Initial step size (standard starting-step heuristic).
  double h;
  {
    const double span = t1 - t0;
    const auto sc = (opt.abs_tol + opt.rel_tol * y.array().abs()).matrix().eval();
    const double n = static_cast<double>(y.size());
    const double d0 = std::sqrt((y.array().abs() / sc.array()).square().sum() / n);
    const double d1 = std::sqrt((k1.array().abs() / sc.array()).square().sum() / n);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    y_stage = y + h0 * k1;
    rhs(t + h0, y_stage, k2);
    const double d2 =
        std::sqrt(((k2 - k1).array().abs() / sc.array()).square().sum() / n) / h0;
    const double dm = std::max(d1, d2);
    const double h1 = dm > 1e-15 ? std::pow(0.01 / dm, 0.2) : std::max(1e-6, h0 * 1e-3);
    h = std::min({100.0 * h0, h1, span});
  }
  if (opt.max_step > 0.0) h = std::min(h, opt.max_step);

  const double h_floor = 1e-14 * std::max(1.0, std::abs(t1));
  double err_old = 1e-4;
  std::int64_t steps = 0;

  while (t < t1) {
    if (++steps > opt.max_steps) throw std::runtime_error("dopri5: max step count exceeded");
    if (h < h_floor) throw std::runtime_error("dopri5: step size underflow");
    const bool last = t + h >= t1;
    if (last) h = t1 - t;

    y_stage = y + (h * a21) * k1;
    rhs(t + c2 * h, y_stage, k2);
    y_stage = y + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, y_stage, k3);
    y_stage = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, y_stage, k4);
    y_stage = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, y_stage, k5);
    y_stage = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, y_stage, k6);
    y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h, y_new, k7);  // FSAL stage

    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(err, y, y_new, opt.abs_tol, opt.rel_tol);

    if (en <= 1.0) {
      t = last ? t1 : t + h;
      y.swap(y_new);
      k1.swap(k7);
      // PI step-size controller.
      const double fac =
          0.9 * std::pow(std::max(en, 1e-16), -0.17) * std::pow(err_old, 0.04);
      h *= std::clamp(fac, 0.2, 10.0);
      err_old = std::max(en, 1e-4);
    } else {
      h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
    }
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
  }
  return y;
}

}  // namespace dstirap::detail
