#include "mirrorsim/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mirrorsim/errors.hpp"

namespace mirrorsim {

namespace {

using Eigen::Vector3d;

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// State derivative (dtheta, domega, dwork) with the drive voltage frozen for
// the step. The work component accumulates the power fed to the oscillator by
// comb, vibration and damping torques.
Vector3d rhs(const MirrorParams& p, double t, const Vector3d& y, double V,
             const VibrationProfile& vib) {
  const double theta = y[0];
  const double omega = y[1];
  const double tau_in = comb_torque(p, theta, V) + vibration_torque(p, theta, t, vib) -
                        damping_torque(p, theta, omega);
  return {omega, (tau_in - restoring_torque(p, theta)) / p.inertia, tau_in * omega};
}

struct Sampler {
  Trace* trace;
  DriveSource* drive;
  Eigen::Index j = 0;
  double eps;

  void take(const StepRecord& r) {
    const double h = r.t1 - r.t0;
    while (j < trace->times.size() && trace->times[j] <= r.t1 + eps) {
      const double ts = trace->times[j];
      const double s = (ts - r.t0) / h;
      trace->theta[j] = hermite_value(r.y0[0], r.f0[0], r.y1[0], r.f1[0], h, s);
      trace->omega[j] = hermite_value(r.y0[1], r.f0[1], r.y1[1], r.f1[1], h, s);
      trace->work[j] = hermite_value(r.y0[2], r.f0[2], r.y1[2], r.f1[2], h, s);
      trace->voltage[j] = drive->voltage(ts);
      ++j;
    }
  }
};

}  // namespace

IntegratorConfig IntegratorConfig::resolved(const MirrorParams& p) const {
  IntegratorConfig c = *this;
  if (c.abs_tol <= 0.0) c.abs_tol = 1e-12 * p.theta_ref;
  if (c.output_rate <= 0.0) c.output_rate = 80.0 * p.f_ref;
  if (c.max_step <= 0.0) c.max_step = 1.0 / (8.0 * p.f_ref);
  if (!(c.rel_tol > 0.0) || !(c.abs_tol > 0.0))
    throw ConfigError("integrator tolerances must be positive");
  if (c.method == Method::rk4 && !(c.dt > 0.0))
    throw ConfigError("fixed-step integration needs dt > 0");
  return c;
}

Trace integrate(const MirrorParams& params, const SimState& initial,
                DriveSource& drive, const VibrationProfile& profile,
                std::pair<double, double> span, const IntegratorConfig& config,
                const StepCallback& on_step) {
  const IntegratorConfig cfg = config.resolved(params);
  const double t_begin = span.first;
  const double t_end = span.second;
  if (!(t_begin < t_end)) throw ProtocolError("integration span must be nonempty");
  if (std::abs(initial.t - t_begin) > 1e-9 * std::max(1.0, std::abs(t_begin)))
    throw ProtocolError("initial state time must match the span start");
  if (cfg.output_rate < 20.0 / drive.min_period())
    throw ConfigError("output rate must be at least 20x the drive actuation frequency");
  if (drive.mode() != DriveMode::pll && !(drive.coverage_end() > t_end))
    throw ConfigError("drive schedule does not cover the integration span");

  Trace trace;
  trace.rate = cfg.output_rate;
  const Eigen::Index n_out =
      static_cast<Eigen::Index>(std::floor((t_end - t_begin) * cfg.output_rate + 1e-9)) + 1;
  trace.times = t_begin + Eigen::ArrayXd::LinSpaced(n_out, 0.0, double(n_out - 1)) / cfg.output_rate;
  trace.theta.resize(n_out);
  trace.omega.resize(n_out);
  trace.voltage.resize(n_out);
  trace.work.resize(n_out);

  Sampler sampler{&trace, &drive, 0, 1e-9 / cfg.output_rate};

  double t = t_begin;
  Vector3d y(initial.theta, initial.omega, 0.0);
  double V = drive.voltage(t);
  Vector3d f_now = rhs(params, t, y, V, profile);

  trace.theta[0] = y[0];
  trace.omega[0] = y[1];
  trace.work[0] = 0.0;
  trace.voltage[0] = V;
  sampler.j = 1;

  const double wv = 2.0 * M_PI * params.f_ref;  // angular scale for omega floor
  const double t_eps = 1e-12 * std::max(1.0, std::abs(t_end));
  double h_next = std::min(cfg.max_step, 1.0 / (100.0 * params.f_ref));
  if (cfg.method == Method::rk4) h_next = cfg.dt;
  int rejects_in_a_row = 0;

  const bool vib_onset_ahead0 = profile.amplitude > 0.0 && profile.t_on > t_begin;

  while (t < t_end - t_eps) {
    double disc = drive.next_discontinuity(t);
    if (vib_onset_ahead0 && profile.t_on > t) disc = std::min(disc, profile.t_on);
    const double t_limit = std::min(disc, t_end);
    const double h_avail = t_limit - t;

    double h = (cfg.method == Method::rk4) ? cfg.dt : std::min(h_next, cfg.max_step);
    bool landing = false;
    if (h >= 0.9 * h_avail) {
      h = h_avail;
      landing = true;
    }
    if (!(h > 0.0) || h < 1e-16 * std::max(1.0, std::abs(t)))
      throw StiffnessError("step size underflow at t = " + std::to_string(t), t);

    V = drive.voltage(t);
    const Vector3d k1 = f_now;
    Vector3d y1;
    Vector3d k7;
    bool accept = true;

    try {
    if (cfg.method == Method::rk45) {
      const Vector3d k2 = rhs(params, t + c2 * h, y + h * (a21 * k1), V, profile);
      const Vector3d k3 = rhs(params, t + c3 * h, y + h * (a31 * k1 + a32 * k2), V, profile);
      const Vector3d k4 = rhs(params, t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3), V, profile);
      const Vector3d k5 = rhs(params, t + c5 * h,
                              y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), V, profile);
      const Vector3d k6 = rhs(params, t + h,
                              y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5),
                              V, profile);
      y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      k7 = rhs(params, t + h, y1, V, profile);
      const Vector3d err =
          h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      if (!y1.allFinite())
        throw DivergenceError("state became non-finite near t = " + std::to_string(t), t);

      const double sc0 = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[0]), std::abs(y1[0]));
      const double sc1 = cfg.abs_tol * wv + cfg.rel_tol * std::max(std::abs(y[1]), std::abs(y1[1]));
      const double r0 = err[0] / sc0;
      const double r1 = err[1] / sc1;
      const double errnorm = std::sqrt(0.5 * (r0 * r0 + r1 * r1));

      if (errnorm > 1.0) {
        accept = false;
        if (++rejects_in_a_row > 60)
          throw StiffnessError("step control failed to converge at t = " + std::to_string(t), t);
        const double fac = std::max(0.2, 0.9 * std::pow(errnorm, -0.2));
        h_next = h * fac;
      } else {
        rejects_in_a_row = 0;
        const double fac =
            (errnorm > 0.0) ? std::min(5.0, std::max(0.2, 0.9 * std::pow(errnorm, -0.2))) : 5.0;
        h_next = std::min(h * fac, cfg.max_step);
      }
    } else {
      const Vector3d k2 = rhs(params, t + 0.5 * h, y + 0.5 * h * k1, V, profile);
      const Vector3d k3 = rhs(params, t + 0.5 * h, y + 0.5 * h * k2, V, profile);
      const Vector3d k4 = rhs(params, t + h, y + h * k3, V, profile);
      y1 = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!y1.allFinite())
        throw DivergenceError("state became non-finite near t = " + std::to_string(t), t);
      k7 = rhs(params, t + h, y1, V, profile);
    }
    } catch (const CurveDomainError&) {
      // Leaving the calibrated curve domain means the motion has left the
      // regime the model is valid for; report it as divergence.
      throw DivergenceError("state left the calibrated angle range near t = " +
                                std::to_string(t),
                            t);
    }

    if (!accept) continue;

    StepRecord rec;
    rec.t0 = t;
    rec.t1 = landing ? t_limit : t + h;
    rec.y0 = y;
    rec.f0 = k1;
    rec.y1 = y1;
    rec.f1 = k7;

    sampler.take(rec);

    t = rec.t1;
    y = y1;
    if (landing && t_limit == disc && t < t_end - t_eps) {
      // Crossing a voltage discontinuity: refresh the cached derivative with
      // the new interval's drive value.
      V = drive.voltage(t);
      f_now = rhs(params, t, y, V, profile);
    } else {
      f_now = k7;
    }

    if (on_step) on_step(rec);
  }

  trace.crossings = detect_crossings(trace.times, trace.theta, trace.omega);
  return trace;
}

}  // namespace mirrorsim
