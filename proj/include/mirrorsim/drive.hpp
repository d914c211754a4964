#pragma once

#include <vector>

namespace mirrorsim {

enum class DriveMode { open_loop, pll };

// Rectangular comb-drive voltage generator. The drive is described by a list
// of rising-edge times; within each period the voltage is hv for the first
// duty fraction and zero afterwards. Edge times are generated arithmetically
// from an anchor edge so that a constant-period schedule carries no
// accumulated rounding, which keeps a zero-gain feedback run bit-identical to
// the open-loop drive.
class DriveSource {
 public:
  // Strictly periodic schedule t0 + k T_act, k = 0 .. n_periods - 1.
  static DriveSource open_loop(double hv, double duty, double t0, double T_act,
                               long n_periods);

  // Explicit schedule (used by the startup frequency sweep); final_period
  // extends coverage one period past the last edge.
  static DriveSource from_schedule(double hv, double duty,
                                   std::vector<double> rising_edges,
                                   double final_period);

  // Feedback-driven schedule starting at t0 with period T0; later periods are
  // set through set_period and edges materialize on demand.
  static DriveSource pll(double hv, double duty, double t0, double T0);

  DriveMode mode() const { return mode_; }
  double hv_voltage() const { return hv_; }
  double duty() const { return duty_; }
  double nominal_period() const { return T_nominal_; }
  double min_period() const { return min_period_; }
  double coverage_end() const;
  const std::vector<double>& edges() const { return edges_; }
  double current_period() const { return T_cur_; }

  // Voltage at time t; zero before the first edge. Throws
  // ScheduleExhaustedError for t at or past the end of coverage.
  double voltage(double t) const;

  // Next voltage discontinuity (on or off switch) strictly after t. In pll
  // mode this materializes edges as needed.
  double next_discontinuity(double t);

  // pll mode: edges strictly after `now` are rescheduled with period T_new;
  // already-elapsed edges stay fixed. A no-op when the period is unchanged,
  // which preserves the anchor arithmetic.
  void set_period(double T_new, double now);

 private:
  DriveSource() = default;
  std::size_t locate(double t) const;
  void materialize_next();

  DriveMode mode_ = DriveMode::open_loop;
  double hv_ = 0.0, duty_ = 0.5;
  std::vector<double> edges_;
  double T_final_ = 0.0;    // period after the last edge (fixed schedules)
  double T_nominal_ = 0.0;  // construction-time period
  double min_period_ = 0.0;
  // pll anchor arithmetic: next edge = anchor_t + (anchor_n + 1) T_cur.
  double anchor_t_ = 0.0;
  long anchor_n_ = 0;
  double T_cur_ = 0.0;
  mutable std::size_t hint_ = 0;
};

}  // namespace mirrorsim
