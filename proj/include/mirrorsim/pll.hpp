#pragma once

// Digital timing loop that keeps the actuation period locked to the mirror's
// mechanical half period. Once per measured half cycle the controller compares
// the accumulated phase offset against a reference and trims the actuation
// period with a PI law. An anti-windup clamp bounds the period command to
// [0.5, 2] times the nominal period and freezes the integral accumulator while
// the clamp is active.

#include <vector>

#include "mirrorsim/integrate.hpp"
#include "mirrorsim/model.hpp"

namespace mirrorsim {

struct PllGains {
  double kp = 0.3;
  double ki = 0.05;
  double t_beta_ref = 0.0;  // phase offset setpoint, seconds
};

struct PllState {
  double T_pll = 0.0;      // currently commanded actuation period
  double t_beta = 0.0;     // accumulated phase offset
  double t_beta_ref = 0.0;
  double k_p = 0.0;
  double k_i = 0.0;
  double acc = 0.0;        // integral accumulator (sum of past errors)
  double e_last = 0.0;
  long iteration = 0;
  double T_nom = 0.0;      // nominal period used for the anti-windup bounds

  double phase_error() const { return t_beta_ref - t_beta; }
};

PllState make_pll_state(double T_nom, const PllGains& gains);

// Advances the loop by one measured half-cycle period T_m. Updates the phase
// offset with the previously commanded period, evaluates the error against the
// setpoint, and computes the next period command. Returns the new state.
PllState pll_update(const PllState& s, double T_m);

struct PllRecord {
  long iteration;
  double t;        // crossing time that closed this half cycle
  double T_m;      // measured half period
  double T_pll;    // period commanded after the update
  double t_beta;   // phase offset after the update
  double error;    // phase error after the update
};

struct PllRunResult {
  Trace trace;
  std::vector<PllRecord> records;
  PllState final_state;
};

// Runs a closed-loop simulation over the given span. The drive starts from
// period T0 at the span start; rising zero crossings of the mirror angle are
// detected on the fly inside each integrator step, and every completed half
// cycle (crossing to crossing of either direction) feeds the loop, which then
// reschedules the drive from the end of the current step. Throws LockLostError
// when the oscillation amplitude collapses below one percent of the reference
// angle.
PllRunResult run_pll_loop(const MirrorParams& params, const SimState& initial,
                          double hv_voltage, double duty, double T0,
                          const PllGains& gains, const VibrationProfile& profile,
                          double t_end, const IntegratorConfig& config);

}  // namespace mirrorsim
