#pragma once

// Vibration susceptibility sweep. Each point runs the oscillating mirror
// against a single vibration tone at a chosen multiple of the mirror
// frequency, waits out the onset transient plus a few beat periods, then
// scores the stability of the per-cycle amplitude and frequency over a long
// measuring window. Points are independent and run on a small thread pool;
// results always come back in grid order.

#include <string>
#include <vector>

#include "mirrorsim/integrate.hpp"
#include "mirrorsim/model.hpp"
#include "mirrorsim/pll.hpp"

namespace mirrorsim {

enum class PointStatus { ok, lock_lost, diverged };

struct SweepSpec {
  Axis axis = Axis::Ty;
  double accel = 0.0;       // m/s^2, peak
  double misalign = 0.0;    // rad
  bool closed_loop = false;
  PllGains gains{};
  double t_on = 0.05;       // s, tone onset after the run starts
  double skip_beats = 5.0;  // beat periods discarded after onset
  double meas_beats = 20.0; // beat periods measured
  int skip_min_cycles = 200;
  int skip_cap_cycles = 2000;
  int meas_min_cycles = 600;
  int meas_cap_cycles = 6000;
  IntegratorConfig integ{};
  int threads = 0;          // worker count, 0 = hardware concurrency
};

struct SweepPoint {
  double ratio = 0.0;        // f_v / nominal mirror frequency
  double f_v = 0.0;          // Hz
  double amp_mean = 0.0;     // rad
  double amp_std_pct = 0.0;  // 100 * std / mean over the measuring window
  double freq_mean = 0.0;    // Hz
  double freq_std_pct = 0.0;
  bool vib_locked = false;   // mirror frequency pinned to the nearest tone subharmonic
  PointStatus status = PointStatus::ok;
  std::string note;          // failure detail when status != ok
};

// One tone at ratio times the nominal mirror frequency 1 / (2 T_act). The
// windows scale with the beat period between the tone and its nearest
// harmonic of the mirror frequency, bounded by the configured cycle caps.
SweepPoint run_sweep_point(const MirrorParams& p, const SimState& initial,
                           double T_act, double hv_voltage, double duty,
                           const SweepSpec& spec, double ratio);

std::vector<SweepPoint> run_sweep(const MirrorParams& p, const SimState& initial,
                                  double T_act, double hv_voltage, double duty,
                                  const SweepSpec& spec,
                                  const std::vector<double>& ratios);

// Coarse grid over [0.42, 2.09] at 0.01 spacing with 0.0005 refinement within
// 0.05 of the two strong coupling ratios 1 and 2.
std::vector<double> default_ratio_grid();

}  // namespace mirrorsim
