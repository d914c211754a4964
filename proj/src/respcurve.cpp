#include "mirrorsim/respcurve.hpp"

#include <algorithm>
#include <cmath>

#include "mirrorsim/drive.hpp"
#include "mirrorsim/errors.hpp"
#include "mirrorsim/trace.hpp"

namespace mirrorsim {

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw ConfigError("bad grid bounds or step");
  std::vector<double> g;
  const long n = std::lround((hi - lo) / step);
  g.reserve(n + 1);
  for (long i = 0; i <= n; ++i) g.push_back(lo + i * step);
  if (g.back() < hi - 0.25 * step) g.push_back(hi);
  return g;
}

RespCurve sweep_response(const MirrorParams& p, double hv_voltage, double duty,
                         const std::vector<double>& nu_grid,
                         const RespConfig& cfg) {
  if (nu_grid.empty()) throw ConfigError("empty frequency grid");
  for (double nu : nu_grid)
    if (!(nu > 0.0)) throw ConfigError("frequency ratios must be positive");

  const VibrationProfile no_vib{};
  RespCurve out;
  out.points.reserve(nu_grid.size());

  SimState carry{0.0, 0.0, 0.0};
  auto capture = [&carry](const StepRecord& r) {
    carry = {r.t1, r.y1[0], r.y1[1]};
  };

  for (double nu : nu_grid) {
    const double T_act = 1.0 / (2.0 * p.f_ref * nu);
    const double omega_scale = 2.0 * M_PI * p.f_ref;
    if (std::abs(carry.theta) < cfg.reseed_level * p.theta_ref &&
        std::abs(carry.omega) < cfg.reseed_level * p.theta_ref * omega_scale) {
      carry.theta = cfg.reseed_level * p.theta_ref;
      carry.omega = 0.0;
    }
    carry.t = 0.0;

    const double t_settle = 2.0 * T_act * cfg.settle_cycles;
    const double t_meas = 2.0 * T_act * cfg.measure_cycles;
    const long n_per = 2 * (cfg.settle_cycles + cfg.measure_cycles) + 4;
    DriveSource drive = DriveSource::open_loop(hv_voltage, duty, 0.0, T_act, n_per);

    integrate(p, carry, drive, no_vib, {0.0, t_settle}, cfg.integ, capture);
    Trace tr = integrate(p, carry, drive, no_vib, {t_settle, t_settle + t_meas},
                         cfg.integ, capture);

    RespPoint pt;
    pt.nu = nu;
    pt.f_act = 1.0 / T_act;
    if (tr.crossings.size() >= 3) {
      CyclePeriods cyc = measure_cycles(tr);
      pt.amplitude = cyc.amplitude.mean();
      pt.f_mirror = cyc.frequency().mean();
    } else {
      pt.amplitude = tr.theta.abs().maxCoeff();
      pt.f_mirror = 0.0;
    }
    out.points.push_back(pt);
  }

  for (std::size_t i = 1; i < out.points.size(); ++i) {
    const RespPoint& a = out.points[i - 1];
    const RespPoint& b = out.points[i];
    const double d = std::abs(b.amplitude - a.amplitude);
    if (d > 0.2 * std::max(a.amplitude, b.amplitude) && d > 0.02 * p.theta_ref)
      out.jumps.push_back({a.nu, b.nu, a.amplitude, b.amplitude});
  }
  return out;
}

}  // namespace mirrorsim
