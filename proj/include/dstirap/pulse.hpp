// pulse.hpp — drive envelopes and timing for the three-step gate protocol:
// soft π pulse, double-STIRAP window with a mid-point Stokes phase jump,
// inverted soft π pulse.
#pragma once

#include "dstirap/atom_model.hpp"
#include "dstirap/numerics.hpp"

namespace dstirap {

// Protocol timing.  The d-STIRAP window [0, t_d] (local time) holds two
// counter-intuitive Gaussian pulse pairs: Stokes/pump centers t_s < t_p in the
// first half, pump/Stokes centers t_p2 < t_s2 in the second, the phase jump at
// t_mid.  Protocol time runs [0, t_pi) π pulse, [t_pi, t_pi + t_d) d-STIRAP,
// [t_pi + t_d, 2 t_pi + t_d] inverted π pulse.
struct PulseSchedule {
  double t_pi = 0.0;
  double t_d = 0.0;
  double sigma = 0.0;
  double offset = 0.0;  // δ = delta_frac · σ
  double t_s = 0.0, t_p = 0.0, t_p2 = 0.0, t_s2 = 0.0, t_mid = 0.0;

  double total() const { return 2.0 * t_pi + t_d; }
  double window_start() const { return t_pi; }
  double window_end() const { return t_pi + t_d; }
};

// Build the schedule for a total gate time t_total: t_pi = 2π/ω_r, the
// remainder is the d-STIRAP window.  Throws if the window would be empty or
// the fractions are not positive / leave no room for the pulse ordering.
PulseSchedule build_schedule(double t_total, double omega_r,
                             double sigma_frac = kDefaultSigmaFrac,
                             double delta_frac = kDefaultDeltaFrac);

// Soft π-pulse amplitude sign·(ω_r/2)(1 − cos(2πt/duration)) for t in
// [0, duration], zero outside (pulse off).
double soft_pi_amplitude(double t, double omega_r, double duration, int sign = +1);

// Unnormalized Gaussian envelope exp(−(t−t0)²/2σ²).  Throws for σ <= 0.
double gaussian(double t, double t0, double sigma);

// Pump amplitude (Ω0/2)[G(t,t_p) + G(t,t_p2)] at local window time t; zero
// outside [0, t_d].
double dstirap_pump(double t, const PulseSchedule& s, double omega0);

// Complex Stokes amplitude (Ω0/2)[G(t,t_s) + G(t,t_s2)]·e^{−iφ(t)}; zero
// outside the window.
Complex dstirap_stokes(double t, const PulseSchedule& s, double omega0, double gamma_phase);

// Stokes phase profile φ(t): gamma_phase before t_mid, 0 from t_mid on.
double phase_profile(double t, const PulseSchedule& s, double gamma_phase);

}  // namespace dstirap
