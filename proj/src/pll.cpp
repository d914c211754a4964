#include "mirrorsim/pll.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mirrorsim/drive.hpp"
#include "mirrorsim/errors.hpp"
#include "mirrorsim/trace.hpp"

namespace mirrorsim {

PllState make_pll_state(double T_nom, const PllGains& gains) {
  if (!(T_nom > 0.0)) throw ConfigError("nominal period must be positive");
  if (gains.kp < 0.0 || gains.ki < 0.0)
    throw ConfigError("loop gains must be non-negative");
  PllState s;
  s.T_pll = T_nom;
  s.T_nom = T_nom;
  s.t_beta = 0.0;
  s.t_beta_ref = gains.t_beta_ref;
  s.k_p = gains.kp;
  s.k_i = gains.ki;
  return s;
}

PllState pll_update(const PllState& s, double T_m) {
  if (!(T_m > 0.0)) throw ProtocolError("measured half period must be positive");
  PllState n = s;
  // The phase offset advances by the difference between the commanded period
  // and the half period the mirror actually produced.
  n.t_beta = s.t_beta - T_m + s.T_pll;
  const double e = n.t_beta_ref - n.t_beta;
  const double cand = s.T_pll + s.k_p * (T_m - s.T_pll) + s.k_i * e;
  const double lo = 0.5 * s.T_nom;
  const double hi = 2.0 * s.T_nom;
  if (cand >= lo && cand <= hi) {
    n.T_pll = cand;
    n.acc = s.acc + e;
  } else {
    // Clamp the command and freeze the accumulator so a long excursion does
    // not wind the integral up.
    n.T_pll = std::clamp(cand, lo, hi);
    n.acc = s.acc;
  }
  n.e_last = e;
  n.iteration = s.iteration + 1;
  return n;
}

PllRunResult run_pll_loop(const MirrorParams& params, const SimState& initial,
                          double hv_voltage, double duty, double T0,
                          const PllGains& gains, const VibrationProfile& profile,
                          double t_end, const IntegratorConfig& config) {
  DriveSource drive = DriveSource::pll(hv_voltage, duty, initial.t, T0);
  PllState state = make_pll_state(T0, gains);

  PllRunResult out;
  const double amp_floor = 0.01 * params.theta_ref;
  double t_last_cross = initial.t;
  bool have_prev = false;
  double peak = std::abs(initial.theta);

  auto on_step = [&](const StepRecord& rec) {
    peak = std::max({peak, std::abs(rec.y0[0]), std::abs(rec.y1[0])});

    const double th0 = rec.y0[0];
    const double th1 = rec.y1[0];
    const bool crossed = (th0 * th1 < 0.0) || (th1 == 0.0 && th0 != 0.0);
    if (crossed) {
      const double h = rec.t1 - rec.t0;
      const double s = (th1 == 0.0)
                           ? 1.0
                           : hermite_root(th0, rec.f0[0], th1, rec.f1[0], h);
      const double t_x = rec.t0 + s * h;
      if (have_prev) {
        if (peak < amp_floor)
          throw LockLostError("oscillation amplitude collapsed at t = " +
                                  std::to_string(t_x),
                              t_x);
        const double T_m = t_x - t_last_cross;
        state = pll_update(state, T_m);
        drive.set_period(state.T_pll, rec.t1);
        out.records.push_back({state.iteration, t_x, T_m, state.T_pll,
                               state.t_beta, state.e_last});
      }
      t_last_cross = t_x;
      have_prev = true;
      peak = 0.0;
    } else if (rec.t1 - t_last_cross > 5.0 * T0) {
      throw LockLostError("mirror stopped producing zero crossings at t = " +
                              std::to_string(rec.t1),
                          rec.t1);
    }
  };

  out.trace = integrate(params, initial, drive, profile, {initial.t, t_end},
                        config, on_step);
  out.final_state = state;
  return out;
}

}  // namespace mirrorsim
