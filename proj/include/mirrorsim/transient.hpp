#pragma once

// Time-domain response of the oscillating mirror to a vibration tone switched
// on mid-run. The run starts from a settled operating state, lets the tone
// beat against the oscillation, and reduces the trace to per-cycle amplitude
// and frequency series with their modulation figures over an analysis window
// placed after the onset transient has died down.

#include <vector>

#include "mirrorsim/integrate.hpp"
#include "mirrorsim/model.hpp"
#include "mirrorsim/pll.hpp"
#include "mirrorsim/trace.hpp"

namespace mirrorsim {

struct TransientSpec {
  VibrationProfile vib;       // the tone; vib.t_on is relative to the run start
  double t_end = 1.7;         // run length, s
  double analysis_skip = 0.3; // s after onset before the analysis window opens
  bool closed_loop = false;   // drive with the timing loop instead of a fixed period
  PllGains gains{};
  IntegratorConfig integ{};
};

struct TransientResult {
  Trace trace;
  CyclePeriods cycles;         // full-run per-half-cycle series
  Eigen::ArrayXd win_t;        // cycle midpoints inside the analysis window
  Eigen::ArrayXd win_amp;      // rad
  Eigen::ArrayXd win_freq;     // Hz
  double amp_mean = 0.0;
  double amp_pkpk_pct = 0.0;   // 100 * (max - min) / mean over the window
  double freq_mean = 0.0;
  double freq_pkpk_pct = 0.0;
  double beat_freq = 0.0;      // dominant modulation frequency of the amplitude series, Hz
  std::vector<PllRecord> pll_records;  // empty in open loop
};

// Runs the experiment. The initial state must sit at a rising actuation edge
// (time zero), as produced by settle_operating_point, and T_act gives the
// actuation period the state was settled at.
TransientResult run_transient(const MirrorParams& p, const SimState& initial,
                              double T_act, double hv_voltage, double duty,
                              const TransientSpec& spec);

}  // namespace mirrorsim
