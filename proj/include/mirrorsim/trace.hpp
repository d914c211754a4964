#pragma once

#include <vector>

#include <Eigen/Dense>

namespace mirrorsim {

enum class CrossDir { rising, falling };

struct Crossing {
  double t = 0.0;
  CrossDir dir = CrossDir::rising;
};

// Densely sampled simulation output on a uniform time grid, with the angle
// zero-crossing events interpolated between samples. The work column is the
// net energy fed into the oscillator by comb, vibration and damping torques
// since the start of the trace, integrated alongside the state.
struct Trace {
  Eigen::ArrayXd times;    // s, uniform
  Eigen::ArrayXd theta;    // rad
  Eigen::ArrayXd omega;    // rad/s
  Eigen::ArrayXd voltage;  // V
  Eigen::ArrayXd work;     // J
  std::vector<Crossing> crossings;
  double rate = 0.0;  // Hz

  // Cubic interpolation of theta at time t, using omega as exact slope data.
  double theta_at(double t) const;
};

// Value of the cubic with endpoint values y0, y1 and endpoint slopes d0, d1
// over a segment of length h, at fraction s in [0, 1].
double hermite_value(double y0, double d0, double y1, double d1, double h, double s);

// Root of the same cubic inside (0, 1); the endpoints must bracket zero.
double hermite_root(double y0, double d0, double y1, double d1, double h);

// Locates every sign change of theta; the event time comes from the cubic
// interpolant through the bracketing samples and the direction from the sign
// of omega there. Returns an empty list when theta never crosses zero.
std::vector<Crossing> detect_crossings(const Eigen::ArrayXd& times,
                                       const Eigen::ArrayXd& theta,
                                       const Eigen::ArrayXd& omega);

// Per-half-cycle measurements between consecutive crossings.
struct CyclePeriods {
  Eigen::ArrayXd t_mid;        // s, midpoint of the two crossings
  Eigen::ArrayXd half_period;  // s
  Eigen::ArrayXd amplitude;    // rad, peak |theta| within the half cycle

  // Per-cycle mirror frequency 1 / (2 T_m,i).
  Eigen::ArrayXd frequency() const { return 0.5 / half_period; }
};

CyclePeriods measure_cycles(const Trace& trace);

}  // namespace mirrorsim
