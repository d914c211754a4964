#pragma once

// Small numeric helpers shared by the analysis tools: dispersion statistics
// for per-cycle series, single-tone amplitude and lag estimates, and a
// narrowband frequency estimator for beat envelopes.

#include <Eigen/Dense>

namespace mirrorsim {

struct SeriesStats {
  double mean = 0.0;
  double std_dev = 0.0;  // population standard deviation
  double pct = 0.0;      // 100 * std_dev / |mean|
  Eigen::Index count = 0;
};

// Basic dispersion of a sample series; requires at least min_count entries.
SeriesStats series_stats(const Eigen::ArrayXd& x, Eigen::Index min_count = 2);

// Amplitude of a sinusoid buried in x, as sqrt(2) times the RMS of the
// de-meaned series. Exact for a pure tone sampled over whole periods.
double tone_amplitude(const Eigen::ArrayXd& x);

// Integer lag (in samples, positive when a trails b) that maximizes the
// normalized cross-correlation of the de-meaned series over [-max_lag,
// max_lag]. Both series must have equal length.
Eigen::Index xcorr_lag(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b,
                       Eigen::Index max_lag);

// Dominant frequency of x(t) inside [f_lo, f_hi], from a Hann-windowed
// discrete Fourier scan at quarter-bin spacing with parabolic peak
// interpolation. The time grid must be uniform.
double beat_frequency(const Eigen::ArrayXd& t, const Eigen::ArrayXd& x,
                      double f_lo, double f_hi);

}  // namespace mirrorsim
