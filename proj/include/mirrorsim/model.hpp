#pragma once

#include <cmath>

#include "mirrorsim/curves.hpp"

namespace mirrorsim {

// Physical description of the torsional mirror. Immutable after construction
// and safe to share between concurrent simulation runs.
struct MirrorParams {
  double inertia = 0.0;     // kg m^2
  double mass = 0.0;        // kg
  double com_offset = 0.0;  // m, rotation axis to center of mass
  NonlinearCurve stiffness;     // k(theta), N m / rad, even
  NonlinearCurve damping_base;  // angle part of c(theta, omega), even
  NonlinearCurve damping_amp;   // multiplies |omega|, even, zero by default
  NonlinearCurve cap_deriv;     // dC/dtheta, F / rad, odd
  double theta_ref = 0.0;  // rad, normalization amplitude
  double f_ref = 0.0;      // Hz, normalization mirror frequency

  // Checks positivity, declared parities, restoring-torque monotonicity and
  // stiffness hardening over the curve domain. Throws ConfigError.
  void validate() const;
};

enum class Axis { Ty, Tz };

// Single-tone translational vibration. Axis Ty is in plane, perpendicular to
// the rotation axis; Tz is out of plane. A small misalignment angle eps
// rotates the tone inside the y-z plane.
struct VibrationProfile {
  Axis axis = Axis::Ty;
  double amplitude = 0.0;  // m/s^2, peak
  double frequency = 1.0;  // Hz
  double phase = 0.0;      // rad
  double t_on = 0.0;       // s, step onset
  double misalign = 0.0;   // rad

  void validate() const;

  // Acceleration magnitude at time t, zero before onset.
  double accel(double t) const {
    if (amplitude == 0.0 || t < t_on) return 0.0;
    return amplitude * std::cos(2.0 * M_PI * frequency * t + phase);
  }
};

// Peak acceleration of a single tone given in rms multiples of gravity.
inline double grms_to_peak(double grms) { return std::sqrt(2.0) * grms * 9.80665; }

struct SimState {
  double t = 0.0;      // s
  double theta = 0.0;  // rad
  double omega = 0.0;  // rad/s
};

struct Deriv {
  double dtheta = 0.0;
  double domega = 0.0;
};

// Torque terms of I th'' + c(th, om) om + k(th) th = comb + vibration.
double restoring_torque(const MirrorParams& p, double theta);
double damping_torque(const MirrorParams& p, double theta, double omega);
double comb_torque(const MirrorParams& p, double theta, double voltage);
double vibration_torque(const MirrorParams& p, double theta, double t,
                        const VibrationProfile& vib);

Deriv equation_rhs(const MirrorParams& p, const SimState& s, double voltage,
                   const VibrationProfile& vib);

// Mechanical energy 1/2 I om^2 + int_0^theta k(s) s ds. The potential integral
// uses Gauss-Legendre quadrature on the stiffness curve.
double mechanical_energy(const MirrorParams& p, double theta, double omega);

}  // namespace mirrorsim
