#include "mirrorsim/energy.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "mirrorsim/errors.hpp"

namespace mirrorsim {

EnergyCoeffs coupling_coeffs(double mass, double com_offset, double Theta) {
  if (!(mass > 0.0) || !(com_offset > 0.0))
    throw ConfigError("mass and center-of-mass offset must be positive");
  if (!(Theta > 0.0 && Theta <= 0.35))
    throw ValidityError("coupling coefficients are calibrated for amplitudes in (0, 0.35] rad, got " +
                        std::to_string(Theta));
  const double T2 = Theta * Theta;
  EnergyCoeffs c;
  c.v0 = 2.0 * M_PI * mass * com_offset * Theta;
  c.vy1 = c.v0 * (8.0 - T2) / 16.0;
  c.vy3 = c.v0 * T2 / 16.0;
  c.vz2 = c.v0 * (12.0 * Theta - Theta * T2) / 48.0;
  c.vz4 = c.v0 * Theta * T2 / 96.0;
  return c;
}

Eigen::ArrayXd analytic_energy_series(const EnergyCoeffs& c, Axis axis,
                                      double accel_amp, double f_v, double phase,
                                      double f_m, double mirror_phase,
                                      const Eigen::ArrayXd& t) {
  if (!(f_m > 0.0) || !(f_v > 0.0))
    throw ConfigError("frequencies must be positive");
  const double k1 = (axis == Axis::Ty) ? 1.0 : 2.0;
  const double k2 = (axis == Axis::Ty) ? 3.0 : 4.0;
  const double det = std::min(std::abs(k1 * f_m - f_v), std::abs(k2 * f_m - f_v));
  if (det > 0.2 * f_m)
    throw ValidityError("vibration tone is detuned from every coupling harmonic by " +
                        std::to_string(det) + " Hz; the beat reduction does not apply");
  if (det > 0.05 * f_m)
    std::cerr << "warning: vibration detuning of " << det
              << " Hz strains the slow-envelope reduction\n";

  const double wa = 2.0 * M_PI * (k1 * f_m - f_v);
  const double wb = 2.0 * M_PI * (k2 * f_m - f_v);
  const double pa = k1 * mirror_phase - phase;
  const double pb = k2 * mirror_phase - phase;
  if (axis == Axis::Ty)
    return accel_amp *
           (c.vy1 * (wa * t + pa).cos() + c.vy3 * (wb * t + pb).cos());
  return accel_amp *
         (c.vz2 * (wa * t + pa).sin() + c.vz4 * (wb * t + pb).sin());
}

EnergySeries numeric_energy_series(const MirrorParams& p,
                                   const VibrationProfile& vib,
                                   const Trace& trace, double window) {
  const Eigen::Index n = trace.times.size();
  if (n < 4) throw ProtocolError("trace too short for energy windows");
  if (!(window > 0.0)) throw ConfigError("energy window must be positive");
  const double t0 = trace.times[0];
  const double t_last = trace.times[n - 1];
  if (window > t_last - t0)
    throw ProtocolError("energy window longer than the trace");

  // Power fed in through the vibration channel only. The comb drive and the
  // damping also exchange energy with the oscillation, but the quantity of
  // interest is what the external acceleration itself injects.
  Eigen::ArrayXd g(n);
  for (Eigen::Index i = 0; i < n; ++i)
    g[i] = vibration_torque(p, trace.theta[i], trace.times[i], vib) *
           trace.omega[i];

  // Cumulative integral by three-point closed Newton-Cotes increments, with
  // the final increment taken backward.
  const double dt = 1.0 / trace.rate;
  Eigen::ArrayXd F(n);
  F[0] = 0.0;
  for (Eigen::Index i = 0; i + 2 < n; ++i)
    F[i + 1] = F[i] + dt * (5.0 * g[i] + 8.0 * g[i + 1] - g[i + 2]) / 12.0;
  F[n - 1] = F[n - 2] + dt * (-g[n - 3] + 8.0 * g[n - 2] + 5.0 * g[n - 1]) / 12.0;

  auto F_at = [&](double t) {
    Eigen::Index i = static_cast<Eigen::Index>((t - t0) * trace.rate);
    i = std::clamp<Eigen::Index>(i, 0, n - 2);
    const double s = (t - trace.times[i]) / dt;
    return hermite_value(F[i], g[i], F[i + 1], g[i + 1], dt, s);
  };

  EnergySeries out;
  out.window = window;
  const Eigen::Index m =
      static_cast<Eigen::Index>(std::floor((t_last - t0 - window) * trace.rate + 1e-9)) + 1;
  out.t_start.resize(m);
  out.t_center.resize(m);
  out.delta_e.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double ts = trace.times[j];
    out.t_start[j] = ts;
    out.t_center[j] = ts + 0.5 * window;
    out.delta_e[j] = F_at(ts + window) - F[j];
  }
  return out;
}

double backbone_frequency(const MirrorParams& p, double Theta) {
  if (!(Theta > 0.0)) throw ConfigError("amplitude must be positive");
  const double U_top = mechanical_energy(p, Theta, 0.0);
  // Quarter period over the potential well with the square-root singularity
  // absorbed by theta = Theta sin(phi). 64-point Gauss-Legendre quadrature on
  // the substituted variable; the nodes are generated once per thread.
  constexpr int kN = 64;
  static thread_local Eigen::ArrayXd node, weight;
  if (node.size() == 0) {
    node.resize(kN);
    weight.resize(kN);
    for (int i = 0; i < kN; ++i) {
      // Newton iteration on the Legendre polynomial from the Chebyshev guess.
      double x = std::cos(M_PI * (i + 0.75) / (kN + 0.5));
      for (int it = 0; it < 100; ++it) {
        double pm1 = 1.0, pc = x;
        for (int k = 2; k <= kN; ++k) {
          const double pn = ((2.0 * k - 1.0) * x * pc - (k - 1.0) * pm1) / k;
          pm1 = pc;
          pc = pn;
        }
        const double dp = kN * (x * pc - pm1) / (x * x - 1.0);
        const double dx = pc / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) {
          node[i] = x;
          weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
          break;
        }
      }
    }
  }
  double sum = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double phi = 0.25 * M_PI * (node[i] + 1.0);
    const double th = Theta * std::sin(phi);
    const double dU = U_top - mechanical_energy(p, th, 0.0);
    const double v = std::sqrt(std::max(2.0 * dU / p.inertia, 0.0));
    if (!(v > 0.0))
      throw ValidityError("potential well is flat at amplitude " + std::to_string(Theta));
    sum += weight[i] * Theta * std::cos(phi) / v;
  }
  const double quarter_period = 0.25 * M_PI * sum;
  return 1.0 / (4.0 * quarter_period);
}

}  // namespace mirrorsim
