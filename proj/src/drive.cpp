#include "mirrorsim/drive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mirrorsim/errors.hpp"

namespace mirrorsim {

namespace {

void check_common(double hv, double duty) {
  if (!(hv > 0.0)) throw ConfigError("drive voltage must be positive");
  if (!(duty > 0.0 && duty < 1.0)) throw ConfigError("drive duty must lie in (0, 1)");
}

}  // namespace

DriveSource DriveSource::open_loop(double hv, double duty, double t0,
                                   double T_act, long n_periods) {
  check_common(hv, duty);
  if (!(T_act > 0.0) || n_periods < 1)
    throw ConfigError("open-loop drive needs a positive period and period count");
  DriveSource d;
  d.mode_ = DriveMode::open_loop;
  d.hv_ = hv;
  d.duty_ = duty;
  d.edges_.resize(n_periods);
  for (long k = 0; k < n_periods; ++k) d.edges_[k] = t0 + k * T_act;
  d.T_final_ = T_act;
  d.T_nominal_ = T_act;
  d.min_period_ = T_act;
  d.T_cur_ = T_act;
  return d;
}

DriveSource DriveSource::from_schedule(double hv, double duty,
                                       std::vector<double> rising_edges,
                                       double final_period) {
  check_common(hv, duty);
  if (rising_edges.empty() || !(final_period > 0.0))
    throw ConfigError("schedule drive needs edges and a positive final period");
  double mn = final_period;
  for (std::size_t i = 1; i < rising_edges.size(); ++i) {
    const double dt = rising_edges[i] - rising_edges[i - 1];
    if (!(dt > 0.0)) throw ConfigError("schedule edges must be strictly increasing");
    mn = std::min(mn, dt);
  }
  DriveSource d;
  d.mode_ = DriveMode::open_loop;
  d.hv_ = hv;
  d.duty_ = duty;
  d.edges_ = std::move(rising_edges);
  d.T_final_ = final_period;
  d.T_nominal_ = final_period;
  d.min_period_ = mn;
  d.T_cur_ = final_period;
  return d;
}

DriveSource DriveSource::pll(double hv, double duty, double t0, double T0) {
  check_common(hv, duty);
  if (!(T0 > 0.0)) throw ConfigError("pll drive needs a positive initial period");
  DriveSource d;
  d.mode_ = DriveMode::pll;
  d.hv_ = hv;
  d.duty_ = duty;
  d.edges_ = {t0};
  d.T_nominal_ = T0;
  d.min_period_ = 0.5 * T0;  // controller clamp floor
  d.anchor_t_ = t0;
  d.anchor_n_ = 0;
  d.T_cur_ = T0;
  d.T_final_ = T0;
  return d;
}

double DriveSource::coverage_end() const {
  const double T_last = (mode_ == DriveMode::pll) ? T_cur_ : T_final_;
  return edges_.back() + T_last;
}

std::size_t DriveSource::locate(double t) const {
  std::size_t i = std::min(hint_, edges_.size() - 1);
  while (i > 0 && edges_[i] > t) --i;
  while (i + 1 < edges_.size() && edges_[i + 1] <= t) ++i;
  hint_ = i;
  return i;
}

double DriveSource::voltage(double t) const {
  if (t < edges_.front()) return 0.0;
  const std::size_t i = locate(t);
  const double E = edges_[i];
  const double T_here = (i + 1 < edges_.size())
                            ? edges_[i + 1] - E
                            : ((mode_ == DriveMode::pll) ? T_cur_ : T_final_);
  if (t >= E + T_here)
    throw ScheduleExhaustedError("drive voltage queried at t = " + std::to_string(t) +
                                 " past the scheduled horizon " +
                                 std::to_string(E + T_here));
  return (t - E) < duty_ * T_here ? hv_ : 0.0;
}

void DriveSource::materialize_next() {
  ++anchor_n_;
  edges_.push_back(anchor_t_ + anchor_n_ * T_cur_);
}

double DriveSource::next_discontinuity(double t) {
  if (t < edges_.front()) return edges_.front();
  if (mode_ == DriveMode::pll) {
    while (coverage_end() <= t + T_cur_) materialize_next();
  }
  const std::size_t i = locate(t);
  const double E = edges_[i];
  const double T_here = (i + 1 < edges_.size())
                            ? edges_[i + 1] - E
                            : ((mode_ == DriveMode::pll) ? T_cur_ : T_final_);
  const double off = E + duty_ * T_here;
  if (off > t) return off;
  return E + T_here;
}

void DriveSource::set_period(double T_new, double now) {
  if (mode_ != DriveMode::pll)
    throw ConfigError("set_period is only valid for a pll-mode drive");
  if (!(T_new > 0.0)) throw ConfigError("drive period must be positive");
  if (T_new == T_cur_) return;  // keep the anchor, no rounding reset
  // Keep every edge at or before `now`; later ones are regenerated from the
  // new period anchored at the last kept edge.
  while (edges_.size() > 1 && edges_.back() > now) {
    edges_.pop_back();
  }
  // Degenerate guard: if the new period would place the next edge in the
  // already-integrated past, commit old-period edges first.
  while (edges_.back() + T_new <= now) {
    edges_.push_back(edges_.back() + T_cur_);
  }
  anchor_t_ = edges_.back();
  anchor_n_ = 0;
  T_cur_ = T_new;
  hint_ = std::min(hint_, edges_.size() - 1);
}

}  // namespace mirrorsim
