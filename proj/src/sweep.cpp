#include "mirrorsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <set>
#include <thread>
#include <utility>

#include "mirrorsim/drive.hpp"
#include "mirrorsim/errors.hpp"
#include "mirrorsim/stats.hpp"
#include "mirrorsim/trace.hpp"

namespace mirrorsim {

namespace {

// Window lengths in mirror cycles for a tone detuned from the nearest
// harmonic. Near-resonant tones beat slowly, so the windows stretch with the
// beat period up to a hard cap.
std::pair<long, long> window_cycles(const SweepSpec& spec, double f_m, double f_v) {
  double det = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 4; ++k) det = std::min(det, std::abs(k * f_m - f_v));
  const double beat_cycles = (det > 0.0) ? f_m / det : std::numeric_limits<double>::infinity();
  auto clampc = [](double want, long lo, long hi) {
    if (!(want < double(hi))) return hi;
    return std::max(lo, static_cast<long>(std::ceil(want)));
  };
  const long skip = clampc(spec.skip_beats * beat_cycles, spec.skip_min_cycles,
                           spec.skip_cap_cycles);
  const long meas = clampc(spec.meas_beats * beat_cycles, spec.meas_min_cycles,
                           spec.meas_cap_cycles);
  return {skip, meas};
}

}  // namespace

SweepPoint run_sweep_point(const MirrorParams& p, const SimState& initial,
                           double T_act, double hv_voltage, double duty,
                           const SweepSpec& spec, double ratio) {
  if (!(ratio > 0.0)) throw ConfigError("frequency ratio must be positive");
  const double f_m = 1.0 / (2.0 * T_act);
  const double f_v = ratio * f_m;

  SweepPoint pt;
  pt.ratio = ratio;
  pt.f_v = f_v;

  VibrationProfile vib;
  vib.axis = spec.axis;
  vib.amplitude = spec.accel;
  vib.frequency = f_v;
  vib.phase = 0.0;
  vib.t_on = initial.t + spec.t_on;
  vib.misalign = spec.misalign;
  vib.validate();

  const auto [skip, meas] = window_cycles(spec, f_m, f_v);
  const double P_m = 2.0 * T_act;
  const double w_lo = vib.t_on + double(skip) * P_m;
  const double t_end = w_lo + double(meas) * P_m;

  try {
    Trace tr;
    if (spec.closed_loop) {
      PllRunResult r = run_pll_loop(p, initial, hv_voltage, duty, T_act,
                                    spec.gains, vib, t_end, spec.integ);
      tr = std::move(r.trace);
    } else {
      const long n_per = static_cast<long>(std::ceil((t_end - initial.t) / T_act)) + 4;
      DriveSource drive =
          DriveSource::open_loop(hv_voltage, duty, initial.t, T_act, n_per);
      tr = integrate(p, initial, drive, vib, {initial.t, t_end}, spec.integ);
    }

    CyclePeriods cyc = measure_cycles(tr);
    const Eigen::Index n = cyc.t_mid.size();
    Eigen::Index first = 0;
    while (first < n && cyc.t_mid[first] < w_lo) ++first;
    const Eigen::Index m = n - first;
    if (m < 50) throw ProtocolError("measuring window holds fewer than 50 half cycles");

    const Eigen::ArrayXd amp = cyc.amplitude.tail(m);
    const Eigen::ArrayXd freq = cyc.frequency().tail(m);
    const SeriesStats sa = series_stats(amp, 50);
    const SeriesStats sf = series_stats(freq, 50);
    pt.amp_mean = sa.mean;
    pt.amp_std_pct = sa.pct;
    pt.freq_mean = sf.mean;
    pt.freq_std_pct = sf.pct;

    const int k_star = std::max(1, static_cast<int>(std::lround(ratio)));
    pt.vib_locked = std::abs(pt.freq_mean * k_star / f_v - 1.0) < 1e-5;
  } catch (const LockLostError& e) {
    pt.status = PointStatus::lock_lost;
    pt.note = e.what();
  } catch (const DivergenceError& e) {
    pt.status = PointStatus::diverged;
    pt.note = e.what();
  }
  return pt;
}

std::vector<SweepPoint> run_sweep(const MirrorParams& p, const SimState& initial,
                                  double T_act, double hv_voltage, double duty,
                                  const SweepSpec& spec,
                                  const std::vector<double>& ratios) {
  if (ratios.empty()) throw ConfigError("empty ratio grid");
  std::vector<SweepPoint> out(ratios.size());
  unsigned n_workers = spec.threads > 0
                           ? static_cast<unsigned>(spec.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<unsigned>(n_workers, ratios.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex err_mu;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= ratios.size()) return;
      try {
        out[i] = run_sweep_point(p, initial, T_act, hv_voltage, duty, spec,
                                 ratios[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

std::vector<double> default_ratio_grid() {
  std::set<double> grid;
  for (int i = 0; i <= 167; ++i) grid.insert(0.42 + 0.01 * i);
  for (double center : {1.0, 2.0}) {
    const long n = std::lround(0.05 / 0.0005);
    for (long k = -n; k <= n; ++k) grid.insert(center + 0.0005 * double(k));
  }
  return {grid.begin(), grid.end()};
}

}  // namespace mirrorsim
