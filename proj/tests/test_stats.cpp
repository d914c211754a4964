#include <cmath>

#include "doctest.h"
#include "mirrorsim/errors.hpp"
#include "mirrorsim/stats.hpp"

using namespace mirrorsim;

TEST_CASE("dispersion of simple series") {
  Eigen::ArrayXd c = Eigen::ArrayXd::Constant(50, 3.25);
  const SeriesStats sc = series_stats(c);
  CHECK(sc.mean == 3.25);
  CHECK(sc.std_dev == 0.0);
  CHECK(sc.pct == 0.0);
  CHECK(sc.count == 50);

  // Two-point series: mean 1, population sigma 1.
  Eigen::ArrayXd two(2);
  two << 0.0, 2.0;
  const SeriesStats st = series_stats(two);
  CHECK(st.mean == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(st.std_dev == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(st.pct == doctest::Approx(100.0).epsilon(1e-12));

  CHECK_THROWS_AS(series_stats(two, 3), ProtocolError);
  Eigen::ArrayXd empty;
  CHECK_THROWS_AS(series_stats(empty), ProtocolError);
}

TEST_CASE("dispersion is shift-aware and scale-aware") {
  Eigen::ArrayXd x(6);
  x << 0.9, 1.1, 1.0, 0.8, 1.2, 1.0;
  const SeriesStats base = series_stats(x);
  const SeriesStats shifted = series_stats(x + 10.0);
  const SeriesStats scaled = series_stats(3.0 * x);
  CHECK(shifted.std_dev == doctest::Approx(base.std_dev).epsilon(1e-12));
  CHECK(shifted.mean == doctest::Approx(base.mean + 10.0).epsilon(1e-15));
  CHECK(scaled.std_dev == doctest::Approx(3.0 * base.std_dev).epsilon(1e-12));
  CHECK(scaled.pct == doctest::Approx(base.pct).epsilon(1e-12));
}

TEST_CASE("tone amplitude of a sampled sinusoid") {
  const int n = 400;  // 4 whole periods, 100 samples each
  Eigen::ArrayXd x(n);
  for (int i = 0; i < n; ++i)
    x[i] = 5.0 + 0.37 * std::sin(2.0 * M_PI * 4.0 * i / n + 0.6);
  CHECK(tone_amplitude(x) == doctest::Approx(0.37).epsilon(1e-9));
  Eigen::ArrayXd flat = Eigen::ArrayXd::Constant(10, 2.0);
  CHECK(tone_amplitude(flat) == 0.0);
}

TEST_CASE("cross-correlation lag of a shifted tone") {
  const int n = 512;
  Eigen::ArrayXd a(n), b(n);
  for (int i = 0; i < n; ++i) {
    a[i] = std::sin(2.0 * M_PI * 3.0 * i / n);
    b[i] = std::sin(2.0 * M_PI * 3.0 * (i - 11) / n);  // b is a delayed by 11
  }
  CHECK(xcorr_lag(b, a, 40) == 11);
  CHECK(xcorr_lag(a, b, 40) == -11);
  CHECK(xcorr_lag(a, a, 40) == 0);
  CHECK_THROWS_AS(xcorr_lag(a, b.head(100), 10), ProtocolError);
  CHECK_THROWS_AS(xcorr_lag(a.head(10), b.head(10), 40), ProtocolError);
}

TEST_CASE("narrowband frequency estimate of a beat envelope") {
  const double f = 65.4;
  const int n = 3000;
  Eigen::ArrayXd t(n), x(n);
  for (int i = 0; i < n; ++i) {
    t[i] = i * 2.5e-4;  // 0.75 s window, 4 kHz sampling
    x[i] = 1.7 * std::cos(2.0 * M_PI * f * t[i] + 0.4) + 0.3;
  }
  const double got = beat_frequency(t, x, 20.0, 120.0);
  CHECK(got == doctest::Approx(f).epsilon(2e-3));
}

TEST_CASE("frequency scan stays inside the requested band") {
  // Two tones; the band selects which one is reported.
  const int n = 4000;
  Eigen::ArrayXd t(n), x(n);
  for (int i = 0; i < n; ++i) {
    t[i] = i * 2.5e-4;
    x[i] = std::cos(2.0 * M_PI * 33.0 * t[i]) + 0.8 * std::cos(2.0 * M_PI * 71.0 * t[i]);
  }
  CHECK(beat_frequency(t, x, 20.0, 50.0) == doctest::Approx(33.0).epsilon(5e-3));
  CHECK(beat_frequency(t, x, 50.0, 110.0) == doctest::Approx(71.0).epsilon(5e-3));
}
