#include "mirrorsim/startup.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mirrorsim/drive.hpp"
#include "mirrorsim/errors.hpp"
#include "mirrorsim/trace.hpp"

namespace mirrorsim {

namespace {

const VibrationProfile kNoVibration{};

}  // namespace

SettledState settle_operating_point(const MirrorParams& p, double hv_voltage,
                                    double duty, double nu_start, double nu_end,
                                    const IntegratorConfig& config) {
  if (!(nu_start >= nu_end) || !(nu_end > 0.0))
    throw ConfigError("startup chirp must run from a higher ratio down to the target");

  const double D = 2000.0 / p.f_ref;  // chirp duration
  const double T_hold = 1.0 / (2.0 * p.f_ref * nu_end);
  auto nu_at = [&](double t) {
    return nu_start + (nu_end - nu_start) * std::min(t / D, 1.0);
  };

  // Rising-edge schedule: each period is set by the chirp law at the edge that
  // starts it, and two exact target periods are appended so the hold phase can
  // continue the same edge grid seamlessly.
  std::vector<double> edges{0.0};
  while (edges.back() < D)
    edges.push_back(edges.back() + 1.0 / (2.0 * p.f_ref * nu_at(edges.back())));
  edges.push_back(edges.back() + T_hold);
  edges.push_back(edges.back() + T_hold);
  const double t_chirp_end = edges.back();

  SimState seed{0.0, 1e-3 * p.theta_ref, 0.0};
  SimState carry = seed;
  auto capture = [&carry](const StepRecord& r) {
    carry = {r.t1, r.y1[0], r.y1[1]};
  };

  {
    DriveSource chirp = DriveSource::from_schedule(hv_voltage, duty, edges, T_hold);
    integrate(p, seed, chirp, kNoVibration, {0.0, t_chirp_end}, config, capture);
  }
  if (std::abs(carry.theta) < 5e-4 * p.theta_ref &&
      std::abs(carry.omega) < 5e-4 * p.theta_ref * 2.0 * M_PI * p.f_ref)
    throw ProtocolError("startup chirp failed to capture the parametric oscillation");

  // Hold blocks of 100 mirror cycles (200 actuation periods) until the block
  // amplitude stops moving.
  const double block = 200.0 * T_hold;
  double amp_prev = -1.0;
  double amplitude = 0.0;
  double t_beta = 0.0;
  const int max_blocks = 100;
  bool settled = false;
  for (int b = 0; b < max_blocks && !settled; ++b) {
    DriveSource hold =
        DriveSource::open_loop(hv_voltage, duty, carry.t, T_hold, 204);
    const double t_end = carry.t + block;
    Trace tr = integrate(p, carry, hold, kNoVibration, {carry.t, t_end}, config,
                         capture);
    CyclePeriods cyc = measure_cycles(tr);
    const Eigen::Index nc = cyc.amplitude.size();
    const Eigen::Index tail = std::min<Eigen::Index>(nc, 50);
    amplitude = cyc.amplitude.tail(tail).mean();
    if (amp_prev > 0.0 && std::abs(amplitude - amp_prev) < 1e-5 * amplitude)
      settled = true;
    amp_prev = amplitude;

    // Phase offset of the last rising crossing relative to the edge grid.
    for (auto it = tr.crossings.rbegin(); it != tr.crossings.rend(); ++it) {
      if (it->dir == CrossDir::rising) {
        const double P_m = 2.0 * T_hold;
        t_beta = std::fmod(it->t - carry.t, P_m);
        if (t_beta < 0.0) t_beta += P_m;
        break;
      }
    }
  }
  if (!settled)
    throw ProtocolError("amplitude failed to settle within 10000 cycles of hold");
  if (amplitude < 0.01 * p.theta_ref)
    throw ProtocolError("parametric oscillation decayed during the hold phase");

  SettledState out;
  out.state = {0.0, carry.theta, carry.omega};
  out.T_act = T_hold;
  out.amplitude = amplitude;
  out.t_beta = t_beta;
  return out;
}

}  // namespace mirrorsim
