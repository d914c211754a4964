#include "mirrorsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mirrorsim/config.hpp"
#include "mirrorsim/csvio.hpp"
#include "mirrorsim/drive.hpp"
#include "mirrorsim/energy.hpp"
#include "mirrorsim/errors.hpp"
#include "mirrorsim/integrate.hpp"
#include "mirrorsim/pll.hpp"
#include "mirrorsim/respcurve.hpp"
#include "mirrorsim/startup.hpp"
#include "mirrorsim/stats.hpp"
#include "mirrorsim/sweep.hpp"
#include "mirrorsim/transient.hpp"

namespace mirrorsim {

namespace {

struct CommonOpts {
  std::string params_path = "data/default.mirror";
  double rel_tol = 1e-9;
  double rate = 0.0;
  double hv = 0.0;    // 0 = take from the parameter file
  double duty = 0.0;  // 0 = take from the parameter file
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--params", c.params_path, "mirror parameter file")
      ->capture_default_str();
  cmd->add_option("--rel-tol", c.rel_tol, "integrator relative tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--rate", c.rate, "output sample rate in Hz, 0 = 80x reference");
  cmd->add_option("--hv", c.hv, "drive voltage override, V");
  cmd->add_option("--duty", c.duty, "drive duty cycle override");
}

struct Loaded {
  MirrorConfig cfg;
  IntegratorConfig integ;
  double hv;
  double duty;
};

Loaded load_common(const CommonOpts& c) {
  Loaded l{load_mirror_config(c.params_path), {}, 0.0, 0.0};
  l.integ.rel_tol = c.rel_tol;
  l.integ.output_rate = c.rate;
  l.hv = (c.hv > 0.0) ? c.hv : l.cfg.drive.hv_voltage;
  l.duty = (c.duty > 0.0) ? c.duty : l.cfg.drive.duty;
  return l;
}

SettledState settle_with_note(const Loaded& l) {
  std::cerr << "settling the operating point..." << std::flush;
  SettledState s = settle_operating_point(l.cfg.params, l.hv, l.duty, 1.10, 1.00,
                                          l.integ);
  std::cerr << " done: amplitude " << s.amplitude << " rad, actuation period "
            << s.T_act * 1e6 << " us\n";
  return s;
}

const std::map<std::string, Axis> kAxisNames{
    {"Ty", Axis::Ty}, {"ty", Axis::Ty}, {"Tz", Axis::Tz}, {"tz", Axis::Tz}};

// Tone strength flags shared by the vibration experiments. Peak acceleration
// wins when both are given.
struct ToneOpts {
  double grms = 0.5;
  double accel = 0.0;
  double peak() const { return accel > 0.0 ? accel : grms_to_peak(grms); }
};

void add_tone(CLI::App* cmd, ToneOpts& t) {
  cmd->add_option("--grms", t.grms, "tone strength, g rms")->capture_default_str();
  cmd->add_option("--accel", t.accel, "tone peak acceleration, m/s^2 (overrides --grms)");
}

int run_respcurve(const CommonOpts& common, double lo, double hi, double step,
                  int settle, int measure, const std::string& out) {
  Loaded l = load_common(common);
  RespConfig rc;
  rc.settle_cycles = settle;
  rc.measure_cycles = measure;
  rc.integ = l.integ;

  std::vector<double> grid = uniform_grid(lo, hi, step);
  RespCurve up = sweep_response(l.cfg.params, l.hv, l.duty, grid, rc);
  std::vector<double> rgrid(grid.rbegin(), grid.rend());
  RespCurve down = sweep_response(l.cfg.params, l.hv, l.duty, rgrid, rc);

  CsvTable t;
  t.format = "mirrorsim-respcurve/1";
  t.columns = {"direction", "nu", "f_act", "amplitude", "f_mirror"};
  t.data.resize(up.points.size() + down.points.size(), 5);
  Eigen::Index r = 0;
  for (const auto& pt : up.points)
    t.data.row(r++) << 1.0, pt.nu, pt.f_act, pt.amplitude, pt.f_mirror;
  for (const auto& pt : down.points)
    t.data.row(r++) << -1.0, pt.nu, pt.f_act, pt.amplitude, pt.f_mirror;
  auto note_jumps = [&t](const char* dir, const std::vector<SweepJump>& js) {
    for (const auto& j : js) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "jump %s nu %.6g -> %.6g amp %.6g -> %.6g",
                    dir, j.nu_before, j.nu_after, j.amp_before, j.amp_after);
      t.notes.push_back(buf);
    }
  };
  note_jumps("up", up.jumps);
  note_jumps("down", down.jumps);
  write_csv(out, t);

  double up_max = 0.0, down_max = 0.0;
  for (const auto& pt : up.points) up_max = std::max(up_max, pt.amplitude);
  for (const auto& pt : down.points) down_max = std::max(down_max, pt.amplitude);
  std::cout << "up sweep: " << up.points.size() << " points, max amplitude "
            << up_max << " rad, " << up.jumps.size() << " jumps\n";
  std::cout << "down sweep: " << down.points.size() << " points, max amplitude "
            << down_max << " rad, " << down.jumps.size() << " jumps\n";
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_transient(const CommonOpts& common, Axis axis, double ratio,
                  double freq_hz, const ToneOpts& tone, double phase,
                  double t_on, double post, double misalign, bool closed_loop,
                  double kp, double ki, const std::string& out,
                  const std::string& trace_out) {
  Loaded l = load_common(common);
  SettledState s = settle_with_note(l);
  const double f_m = 1.0 / (2.0 * s.T_act);

  TransientSpec spec;
  spec.vib.axis = axis;
  spec.vib.amplitude = tone.peak();
  spec.vib.frequency = (freq_hz > 0.0) ? freq_hz : ratio * f_m;
  spec.vib.phase = phase;
  spec.vib.t_on = t_on;
  spec.vib.misalign = misalign;
  spec.t_end = t_on + post;
  spec.closed_loop = closed_loop;
  spec.gains.kp = (kp >= 0.0) ? kp : l.cfg.drive.kp;
  spec.gains.ki = (ki >= 0.0) ? ki : l.cfg.drive.ki;
  spec.gains.t_beta_ref = l.cfg.drive.t_beta_ref;
  spec.integ = l.integ;

  TransientResult res =
      run_transient(l.cfg.params, s.state, s.T_act, l.hv, l.duty, spec);

  CsvTable t;
  t.format = "mirrorsim-cycles/1";
  t.columns = {"t_mid", "half_period", "frequency", "amplitude"};
  const Eigen::Index n = res.cycles.t_mid.size();
  t.data.resize(n, 4);
  t.data.col(0) = res.cycles.t_mid;
  t.data.col(1) = res.cycles.half_period;
  t.data.col(2) = res.cycles.frequency();
  t.data.col(3) = res.cycles.amplitude;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "window amp_mean %.10g rad pkpk %.4g %% freq_mean %.10g Hz pkpk %.4g %%",
                res.amp_mean, res.amp_pkpk_pct, res.freq_mean, res.freq_pkpk_pct);
  t.notes.push_back(buf);
  std::snprintf(buf, sizeof(buf), "beat %.6g Hz", res.beat_freq);
  t.notes.push_back(buf);
  write_csv(out, t);

  if (!trace_out.empty()) {
    CsvTable tt;
    tt.format = "mirrorsim-trace/1";
    tt.columns = {"t", "theta", "omega", "voltage", "work"};
    tt.data.resize(res.trace.times.size(), 5);
    tt.data.col(0) = res.trace.times;
    tt.data.col(1) = res.trace.theta;
    tt.data.col(2) = res.trace.omega;
    tt.data.col(3) = res.trace.voltage;
    tt.data.col(4) = res.trace.work;
    write_csv(trace_out, tt);
  }

  std::cout << "tone " << spec.vib.frequency << " Hz (" << spec.vib.frequency / f_m
            << " x mirror), peak " << spec.vib.amplitude << " m/s^2\n";
  std::cout << "amplitude: mean " << res.amp_mean << " rad, peak-to-peak "
            << res.amp_pkpk_pct << " %\n";
  std::cout << "frequency: mean " << res.freq_mean << " Hz, peak-to-peak "
            << res.freq_pkpk_pct << " %\n";
  std::cout << "amplitude beat: " << res.beat_freq << " Hz\n";
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_sweep_cmd(const CommonOpts& common, Axis axis, const ToneOpts& tone,
                  bool closed_loop, double lo, double hi, double step,
                  bool refine, int threads, const std::string& out) {
  Loaded l = load_common(common);
  SettledState s = settle_with_note(l);

  SweepSpec spec;
  spec.axis = axis;
  spec.accel = tone.peak();
  spec.closed_loop = closed_loop;
  spec.gains = {l.cfg.drive.kp, l.cfg.drive.ki, l.cfg.drive.t_beta_ref};
  spec.integ = l.integ;
  spec.threads = threads;

  std::vector<double> ratios;
  if (lo == 0.42 && hi == 2.09 && step == 0.01 && refine) {
    ratios = default_ratio_grid();
  } else {
    ratios = uniform_grid(lo, hi, step);
    if (refine) {
      std::vector<double> extra;
      for (double center : {1.0, 2.0})
        if (center >= lo && center <= hi)
          for (long k = -100; k <= 100; ++k) {
            const double v = center + 0.0005 * double(k);
            if (v >= lo && v <= hi) extra.push_back(v);
          }
      ratios.insert(ratios.end(), extra.begin(), extra.end());
      std::sort(ratios.begin(), ratios.end());
      ratios.erase(std::unique(ratios.begin(), ratios.end()), ratios.end());
    }
  }

  std::cerr << "sweeping " << ratios.size() << " tones...\n";
  std::vector<SweepPoint> pts =
      run_sweep(l.cfg.params, s.state, s.T_act, l.hv, l.duty, spec, ratios);

  CsvTable t;
  t.format = "mirrorsim-sweep/1";
  t.columns = {"ratio",     "f_v",          "amp_mean", "amp_std_pct",
               "freq_mean", "freq_std_pct", "locked",   "status"};
  t.data.resize(pts.size(), 8);
  Eigen::Index r = 0;
  for (const auto& pt : pts)
    t.data.row(r++) << pt.ratio, pt.f_v, pt.amp_mean, pt.amp_std_pct,
        pt.freq_mean, pt.freq_std_pct, pt.vib_locked ? 1.0 : 0.0,
        double(static_cast<int>(pt.status));
  write_csv(out, t);

  const SweepPoint* worst = nullptr;
  for (const auto& pt : pts)
    if (pt.status == PointStatus::ok && (!worst || pt.amp_std_pct > worst->amp_std_pct))
      worst = &pt;
  if (worst)
    std::cout << "largest amplitude scatter " << worst->amp_std_pct << " % at ratio "
              << worst->ratio << "\n";
  long n_locked = 0, n_failed = 0;
  for (const auto& pt : pts) {
    n_locked += pt.vib_locked ? 1 : 0;
    n_failed += pt.status != PointStatus::ok ? 1 : 0;
  }
  std::cout << n_locked << " of " << pts.size() << " points entrained, "
            << n_failed << " failed\n";
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_energy(const CommonOpts& common, Axis axis, double ratio,
               const ToneOpts& tone, double phase, int cycles,
               const std::string& out) {
  Loaded l = load_common(common);
  SettledState s = settle_with_note(l);
  const double f_m_nom = 1.0 / (2.0 * s.T_act);

  VibrationProfile vib;
  vib.axis = axis;
  vib.amplitude = tone.peak();
  vib.frequency = ratio * f_m_nom;
  vib.phase = phase;
  vib.t_on = 0.05;
  vib.validate();

  const double P_m = 2.0 * s.T_act;
  const double skip = 100.0 * P_m;
  const double t_end = vib.t_on + skip + double(cycles + 2) * P_m;
  const long n_per = static_cast<long>(std::ceil(t_end / s.T_act)) + 4;
  DriveSource drive = DriveSource::open_loop(l.hv, l.duty, 0.0, s.T_act, n_per);
  Trace tr = integrate(l.cfg.params, s.state, drive, vib, {0.0, t_end}, l.integ);

  // Restrict the windows to the settled region and measure the actual mirror
  // period there.
  const double w_lo = vib.t_on + skip;
  CyclePeriods cyc = measure_cycles(tr);
  std::vector<double> hp;
  for (Eigen::Index i = 0; i < cyc.t_mid.size(); ++i)
    if (cyc.t_mid[i] >= w_lo) hp.push_back(cyc.half_period[i]);
  if (hp.size() < 20) throw ProtocolError("energy run too short to settle");
  std::nth_element(hp.begin(), hp.begin() + hp.size() / 2, hp.end());
  const double f_m = 0.5 / hp[hp.size() / 2];
  const double window = 1.0 / f_m;

  EnergySeries es = numeric_energy_series(l.cfg.params, vib, tr, window);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.t_start.size(); ++i)
    if (es.t_start[i] >= w_lo && es.t_start[i] + window <= t_end - P_m)
      keep.push_back(i);
  const Eigen::Index m = static_cast<Eigen::Index>(keep.size());
  if (m < 100) throw ProtocolError("too few energy windows in the settled region");
  Eigen::ArrayXd t_start(m), t_center(m), de(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    t_start[j] = es.t_start[keep[j]];
    t_center[j] = es.t_center[keep[j]];
    de[j] = es.delta_e[keep[j]];
  }

  // Oscillation phase at t = 0, from a rising zero crossing inside the
  // settled window.
  double psi = 0.0;
  for (const auto& cr : tr.crossings)
    if (cr.dir == CrossDir::rising && cr.t >= w_lo) {
      psi = -2.0 * M_PI * f_m * cr.t;
      break;
    }

  const EnergyCoeffs coeffs =
      coupling_coeffs(l.cfg.params.mass, l.cfg.params.com_offset, s.amplitude);
  const Eigen::ArrayXd pred = analytic_energy_series(
      coeffs, axis, vib.amplitude, vib.frequency, vib.phase, f_m, psi, t_center);

  CsvTable t;
  t.format = "mirrorsim-energy/1";
  t.columns = {"t_start", "t_center", "delta_e", "predicted"};
  t.data.resize(m, 4);
  t.data.col(0) = t_start;
  t.data.col(1) = t_center;
  t.data.col(2) = de;
  t.data.col(3) = pred;
  write_csv(out, t);

  const double amp_sim = tone_amplitude(de);
  const double amp_pred = tone_amplitude(pred);
  // Lag in whole mirror cycles: correlate the series subsampled one window
  // per cycle.
  const Eigen::Index stride =
      std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::lround(window * tr.rate)));
  const Eigen::Index mc = m / stride;
  Eigen::ArrayXd de_c(mc), pred_c(mc);
  for (Eigen::Index j = 0; j < mc; ++j) {
    de_c[j] = de[j * stride];
    pred_c[j] = pred[j * stride];
  }
  const Eigen::Index max_lag = std::max<Eigen::Index>(4, mc / 8);
  const Eigen::Index lag = xcorr_lag(de_c, pred_c, max_lag);
  std::cout << "per-cycle transfer amplitude: simulated " << amp_sim
            << " J, predicted " << amp_pred << " J, difference "
            << 100.0 * (amp_sim / amp_pred - 1.0) << " %\n";
  std::cout << "alignment lag: " << lag << " cycles\n";
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_plldemo(const CommonOpts& common, double duration, Axis axis,
                double ratio, const ToneOpts& tone, double kp, double ki,
                double t_beta_ref, const std::string& out) {
  Loaded l = load_common(common);
  SettledState s = settle_with_note(l);
  const double f_m = 1.0 / (2.0 * s.T_act);

  VibrationProfile vib;
  if (ratio > 0.0) {
    vib.axis = axis;
    vib.amplitude = tone.peak();
    vib.frequency = ratio * f_m;
    vib.t_on = 0.1;
    vib.validate();
  }

  PllGains gains;
  gains.kp = (kp >= 0.0) ? kp : l.cfg.drive.kp;
  gains.ki = (ki >= 0.0) ? ki : l.cfg.drive.ki;
  gains.t_beta_ref = (t_beta_ref >= 0.0) ? t_beta_ref : l.cfg.drive.t_beta_ref;

  PllRunResult r = run_pll_loop(l.cfg.params, s.state, l.hv, l.duty, s.T_act,
                                gains, vib, duration, l.integ);

  CsvTable t;
  t.format = "mirrorsim-pll/1";
  t.columns = {"iteration", "t", "T_m", "T_pll", "t_beta", "error"};
  t.data.resize(r.records.size(), 6);
  Eigen::Index row = 0;
  for (const auto& rec : r.records)
    t.data.row(row++) << double(rec.iteration), rec.t, rec.T_m, rec.T_pll,
        rec.t_beta, rec.error;
  write_csv(out, t);

  const std::size_t tail = std::min<std::size_t>(r.records.size(), 100);
  double mean_abs_e = 0.0;
  for (std::size_t i = r.records.size() - tail; i < r.records.size(); ++i)
    mean_abs_e += std::abs(r.records[i].error);
  if (tail) mean_abs_e /= double(tail);
  std::cout << r.records.size() << " loop updates, final period "
            << r.final_state.T_pll * 1e6 << " us (" << 0.5 / r.final_state.T_pll
            << " Hz mirror), mean |error| over last " << tail << ": "
            << mean_abs_e * 1e9 << " ns\n";
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{
      "Simulation and analysis toolkit for a resonant scanning mirror under "
      "external vibration"};
  app.require_subcommand(1);

  // respcurve
  auto* c_resp = app.add_subcommand(
      "respcurve", "open-loop frequency response, swept up and down");
  CommonOpts resp_common;
  add_common(c_resp, resp_common);
  double resp_lo = 0.98, resp_hi = 1.09, resp_step = 0.005;
  int resp_settle = 250, resp_measure = 80;
  std::string resp_out = "respcurve.csv";
  c_resp->add_option("--lo", resp_lo, "lowest frequency ratio")->capture_default_str();
  c_resp->add_option("--hi", resp_hi, "highest frequency ratio")->capture_default_str();
  c_resp->add_option("--step", resp_step, "ratio step")->capture_default_str();
  c_resp->add_option("--settle", resp_settle, "cycles discarded per point")
      ->capture_default_str();
  c_resp->add_option("--measure", resp_measure, "cycles measured per point")
      ->capture_default_str();
  c_resp->add_option("-o,--out", resp_out, "output table")->capture_default_str();

  // transient
  auto* c_tran = app.add_subcommand(
      "transient", "response to a vibration tone switched on mid-run");
  CommonOpts tran_common;
  add_common(c_tran, tran_common);
  Axis tran_axis = Axis::Ty;
  double tran_ratio = 1.02, tran_freq = 0.0, tran_phase = 0.0;
  double tran_t_on = 0.2, tran_post = 1.5, tran_mis = 0.0;
  bool tran_closed = false;
  double tran_kp = -1.0, tran_ki = -1.0;
  ToneOpts tran_tone;
  std::string tran_out = "transient.csv", tran_trace_out;
  c_tran->add_option("--axis", tran_axis, "vibration axis (Ty in plane, Tz out of plane)")
      ->transform(CLI::CheckedTransformer(kAxisNames))
      ->capture_default_str();
  c_tran->add_option("--ratio", tran_ratio, "tone frequency / mirror frequency")
      ->capture_default_str();
  c_tran->add_option("--freq", tran_freq, "tone frequency in Hz (overrides --ratio)");
  add_tone(c_tran, tran_tone);
  c_tran->add_option("--phase", tran_phase, "tone phase, rad")->capture_default_str();
  c_tran->add_option("--t-on", tran_t_on, "tone onset time, s")->capture_default_str();
  c_tran->add_option("--post", tran_post, "run length after onset, s")
      ->capture_default_str();
  c_tran->add_option("--misalign", tran_mis, "axis misalignment, rad")
      ->capture_default_str();
  c_tran->add_flag("--closed-loop", tran_closed, "drive with the timing loop");
  c_tran->add_option("--kp", tran_kp, "loop proportional gain override");
  c_tran->add_option("--ki", tran_ki, "loop integral gain override");
  c_tran->add_option("-o,--out", tran_out, "per-cycle output table")
      ->capture_default_str();
  c_tran->add_option("--trace-out", tran_trace_out, "full trace output table");

  // sweep
  auto* c_sweep = app.add_subcommand(
      "sweep", "vibration susceptibility across a tone frequency grid");
  CommonOpts sweep_common;
  add_common(c_sweep, sweep_common);
  Axis sweep_axis = Axis::Ty;
  ToneOpts sweep_tone;
  bool sweep_closed = false, sweep_refine = true;
  double sweep_lo = 0.42, sweep_hi = 2.09, sweep_step = 0.01;
  int sweep_threads = 0;
  std::string sweep_out = "sweep.csv";
  c_sweep->add_option("--axis", sweep_axis, "vibration axis")
      ->transform(CLI::CheckedTransformer(kAxisNames))
      ->capture_default_str();
  add_tone(c_sweep, sweep_tone);
  c_sweep->add_flag("--closed-loop", sweep_closed, "drive with the timing loop");
  c_sweep->add_option("--lo", sweep_lo, "lowest ratio")->capture_default_str();
  c_sweep->add_option("--hi", sweep_hi, "highest ratio")->capture_default_str();
  c_sweep->add_option("--step", sweep_step, "coarse ratio step")->capture_default_str();
  c_sweep->add_flag("--refine,!--no-refine", sweep_refine,
                    "densify near the strong coupling ratios 1 and 2");
  c_sweep->add_option("--threads", sweep_threads, "worker threads, 0 = auto");
  c_sweep->add_option("-o,--out", sweep_out, "output table")->capture_default_str();

  // energy
  auto* c_energy = app.add_subcommand(
      "energy", "per-cycle energy transfer against the closed-form prediction");
  CommonOpts energy_common;
  add_common(c_energy, energy_common);
  Axis energy_axis = Axis::Ty;
  double energy_ratio = 1.02, energy_phase = 0.0;
  int energy_cycles = 400;
  ToneOpts energy_tone;
  std::string energy_out = "energy.csv";
  c_energy->add_option("--axis", energy_axis, "vibration axis")
      ->transform(CLI::CheckedTransformer(kAxisNames))
      ->capture_default_str();
  c_energy->add_option("--ratio", energy_ratio, "tone frequency / mirror frequency")
      ->capture_default_str();
  add_tone(c_energy, energy_tone);
  c_energy->add_option("--phase", energy_phase, "tone phase, rad")
      ->capture_default_str();
  c_energy->add_option("--cycles", energy_cycles, "measured cycle count")
      ->capture_default_str();
  c_energy->add_option("-o,--out", energy_out, "output table")->capture_default_str();

  // plldemo
  auto* c_pll = app.add_subcommand(
      "plldemo", "closed-loop run with per-update controller records");
  CommonOpts pll_common;
  add_common(c_pll, pll_common);
  double pll_duration = 2.0, pll_ratio = 0.0;
  Axis pll_axis = Axis::Tz;
  ToneOpts pll_tone;
  double pll_kp = -1.0, pll_ki = -1.0, pll_ref = -1.0;
  std::string pll_out = "pll.csv";
  c_pll->add_option("--duration", pll_duration, "run length, s")->capture_default_str();
  c_pll->add_option("--tone-ratio", pll_ratio,
                    "optional tone frequency / mirror frequency (0 = none)")
      ->capture_default_str();
  c_pll->add_option("--axis", pll_axis, "tone axis")
      ->transform(CLI::CheckedTransformer(kAxisNames))
      ->capture_default_str();
  add_tone(c_pll, pll_tone);
  c_pll->add_option("--kp", pll_kp, "loop proportional gain override");
  c_pll->add_option("--ki", pll_ki, "loop integral gain override");
  c_pll->add_option("--t-beta-ref", pll_ref,
                    "crossing time target within the period, s");
  c_pll->add_option("-o,--out", pll_out, "output table")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_resp)
      return run_respcurve(resp_common, resp_lo, resp_hi, resp_step, resp_settle,
                           resp_measure, resp_out);
    if (*c_tran)
      return run_transient(tran_common, tran_axis, tran_ratio, tran_freq,
                           tran_tone, tran_phase, tran_t_on, tran_post, tran_mis,
                           tran_closed, tran_kp, tran_ki, tran_out,
                           tran_trace_out);
    if (*c_sweep)
      return run_sweep_cmd(sweep_common, sweep_axis, sweep_tone, sweep_closed,
                           sweep_lo, sweep_hi, sweep_step, sweep_refine,
                           sweep_threads, sweep_out);
    if (*c_energy)
      return run_energy(energy_common, energy_axis, energy_ratio, energy_tone,
                        energy_phase, energy_cycles, energy_out);
    if (*c_pll)
      return run_plldemo(pll_common, pll_duration, pll_axis, pll_ratio, pll_tone,
                         pll_kp, pll_ki, pll_ref, pll_out);
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const StiffnessError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const LockLostError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SimError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace mirrorsim
