#pragma once

// Per-cycle energy transfer analysis. A translational vibration tone feeds (or
// removes) energy once per mirror cycle through the center-of-mass offset
// torque. For a settled oscillation the transfer per cycle reduces to a small
// set of slow beat components whose coefficients depend only on the proof mass,
// the offset arm and the swing amplitude. This header provides those
// coefficients, the predicted beat series, the same series extracted from a
// simulated trace, and the amplitude-dependent free-vibration frequency.

#include <Eigen/Dense>

#include "mirrorsim/model.hpp"
#include "mirrorsim/trace.hpp"

namespace mirrorsim {

// Beat-component coefficients in joules per (m/s^2) of acceleration amplitude.
// For in-plane (Ty) vibration the transfer beats at f_v - f_m and f_v - 3 f_m;
// for out-of-plane (Tz) at f_v - 2 f_m and f_v - 4 f_m.
struct EnergyCoeffs {
  double v0 = 0.0;   // common scale 2 pi m L amplitude
  double vy1 = 0.0;  // Ty component near f_m
  double vy3 = 0.0;  // Ty component near 3 f_m
  double vz2 = 0.0;  // Tz component near 2 f_m
  double vz4 = 0.0;  // Tz component near 4 f_m
};

// Closed-form coefficients for swing amplitude Theta (zero-to-peak, radians).
// The closed forms come from a two-term series of the projection factors and
// hold for Theta in (0, 0.35]; outside that range a ValidityError is thrown.
EnergyCoeffs coupling_coeffs(double mass, double com_offset, double Theta);

// Predicted per-cycle energy transfer for a tone a cos(2 pi f_v t + phase) on
// the given axis, evaluated at cycle-center times t. f_m is the mirror
// oscillation frequency and mirror_phase is psi in theta(t) =
// Theta sin(2 pi f_m t + psi); each harmonic k of the oscillation carries
// k times this phase into its beat term. Throws ValidityError when the tone
// is detuned from every relevant harmonic by more than 0.2 f_m; warns on
// stderr beyond 0.05 f_m where the slow-envelope reduction starts to degrade.
Eigen::ArrayXd analytic_energy_series(const EnergyCoeffs& c, Axis axis,
                                      double accel_amp, double f_v, double phase,
                                      double f_m, double mirror_phase,
                                      const Eigen::ArrayXd& t);

// Energy transferred over sliding one-cycle windows of a simulated trace.
// delta_e[j] is the net work done on the oscillator by all external torques
// over [t_start[j], t_start[j] + window]; t_center is the window midpoint,
// which is where the analytic series should be evaluated for comparison.
struct EnergySeries {
  Eigen::ArrayXd t_start;
  Eigen::ArrayXd t_center;
  Eigen::ArrayXd delta_e;
  double window = 0.0;
};

// The cumulative work column is interpolated with its exact slope, the
// instantaneous input power recomputed from the stored state and voltage.
EnergySeries numeric_energy_series(const MirrorParams& p,
                                   const VibrationProfile& vib,
                                   const Trace& trace, double window);

// Free-vibration frequency of the conservative system at swing amplitude
// Theta, from the quarter-period quadrature over the potential well.
double backbone_frequency(const MirrorParams& p, double Theta);

}  // namespace mirrorsim
