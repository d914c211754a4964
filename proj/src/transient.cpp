#include "mirrorsim/transient.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mirrorsim/drive.hpp"
#include "mirrorsim/errors.hpp"
#include "mirrorsim/stats.hpp"

namespace mirrorsim {

TransientResult run_transient(const MirrorParams& p, const SimState& initial,
                              double T_act, double hv_voltage, double duty,
                              const TransientSpec& spec) {
  if (!(T_act > 0.0)) throw ConfigError("actuation period must be positive");
  if (!(spec.t_end > initial.t)) throw ConfigError("run must end after it starts");
  spec.vib.validate();

  TransientResult out;
  if (spec.closed_loop) {
    PllRunResult r = run_pll_loop(p, initial, hv_voltage, duty, T_act,
                                  spec.gains, spec.vib, spec.t_end, spec.integ);
    out.trace = std::move(r.trace);
    out.pll_records = std::move(r.records);
  } else {
    const long n_per =
        static_cast<long>(std::ceil((spec.t_end - initial.t) / T_act)) + 4;
    DriveSource drive =
        DriveSource::open_loop(hv_voltage, duty, initial.t, T_act, n_per);
    out.trace = integrate(p, initial, drive, spec.vib,
                          {initial.t, spec.t_end}, spec.integ);
  }

  out.cycles = measure_cycles(out.trace);

  const double w_lo = spec.vib.t_on + spec.analysis_skip;
  const Eigen::Index n = out.cycles.t_mid.size();
  std::vector<Eigen::Index> keep;
  keep.reserve(n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (out.cycles.t_mid[i] >= w_lo) keep.push_back(i);
  if (keep.size() < 50)
    throw ProtocolError("analysis window holds fewer than 50 half cycles");

  const Eigen::Index m = static_cast<Eigen::Index>(keep.size());
  out.win_t.resize(m);
  out.win_amp.resize(m);
  out.win_freq.resize(m);
  const Eigen::ArrayXd freq = out.cycles.frequency();
  for (Eigen::Index j = 0; j < m; ++j) {
    out.win_t[j] = out.cycles.t_mid[keep[j]];
    out.win_amp[j] = out.cycles.amplitude[keep[j]];
    out.win_freq[j] = freq[keep[j]];
  }

  out.amp_mean = out.win_amp.mean();
  out.freq_mean = out.win_freq.mean();
  out.amp_pkpk_pct =
      100.0 * (out.win_amp.maxCoeff() - out.win_amp.minCoeff()) / out.amp_mean;
  out.freq_pkpk_pct =
      100.0 * (out.win_freq.maxCoeff() - out.win_freq.minCoeff()) / out.freq_mean;

  // Dominant modulation frequency of the amplitude series. The per-cycle grid
  // is close to uniform; resample onto an exactly uniform grid by nearest
  // midpoint to keep the Fourier scan honest.
  const double span = out.win_t[m - 1] - out.win_t[0];
  if (span > 0.0 && m >= 16) {
    const double dt = span / double(m - 1);
    Eigen::ArrayXd tu(m), xu(m);
    Eigen::Index src = 0;
    for (Eigen::Index j = 0; j < m; ++j) {
      tu[j] = out.win_t[0] + j * dt;
      while (src + 1 < m && std::abs(out.win_t[src + 1] - tu[j]) <
                                std::abs(out.win_t[src] - tu[j]))
        ++src;
      xu[j] = out.win_amp[src];
    }
    const double f_lo = 2.0 / span;
    const double f_hi = 0.45 / dt;
    if (f_hi > f_lo) out.beat_freq = beat_frequency(tu, xu, f_lo, f_hi);
  }
  return out;
}

}  // namespace mirrorsim
