#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mirrorsim/errors.hpp"
#include "mirrorsim/trace.hpp"

using namespace mirrorsim;

namespace {

// Builds a trace by sampling theta(t) and its derivative on a uniform grid and
// running the crossing detector over it.
template <typename F, typename G>
Trace sampled_trace(F theta_fn, G omega_fn, double t0, double t1, double rate) {
  Trace tr;
  const int n = static_cast<int>(std::round((t1 - t0) * rate)) + 1;
  tr.times.resize(n);
  tr.theta.resize(n);
  tr.omega.resize(n);
  tr.voltage = Eigen::ArrayXd::Zero(n);
  tr.work = Eigen::ArrayXd::Zero(n);
  tr.rate = rate;
  for (int i = 0; i < n; ++i) {
    const double t = t0 + i / rate;
    tr.times[i] = t;
    tr.theta[i] = theta_fn(t);
    tr.omega[i] = omega_fn(t);
  }
  tr.crossings = detect_crossings(tr.times, tr.theta, tr.omega);
  return tr;
}

}  // namespace

TEST_CASE("crossings of a phase-offset sine land on the analytic times") {
  // theta = A sin(2 pi f t + phi) crosses zero at t = (k pi - phi) / (2 pi f).
  const double A = 0.26, f = 1987.0, phi = 0.83;
  const double w = 2.0 * M_PI * f;
  auto th = [&](double t) { return A * std::sin(w * t + phi); };
  auto om = [&](double t) { return A * w * std::cos(w * t + phi); };
  // 40 samples per period, window starts just after t = 0 to keep the first
  // crossing strictly inside the grid.
  const Trace tr = sampled_trace(th, om, 1e-5, 1e-5 + 10.0 / f, 40.0 * f);

  REQUIRE(tr.crossings.size() >= 19);
  for (const Crossing& c : tr.crossings) {
    const double k = std::round((w * c.t + phi) / M_PI);
    const double exact = (k * M_PI - phi) / w;
    CHECK(std::abs(c.t - exact) < 1e-8);
    // Rising crossings occur at even multiples of pi, falling at odd.
    const bool even = std::fmod(k, 2.0) == 0.0;
    CHECK((c.dir == CrossDir::rising) == even);
  }
}

TEST_CASE("crossing directions alternate") {
  const double f = 2000.0, w = 2.0 * M_PI * f;
  auto th = [&](double t) { return 0.2 * std::sin(w * t + 0.3); };
  auto om = [&](double t) { return 0.2 * w * std::cos(w * t + 0.3); };
  const Trace tr = sampled_trace(th, om, 0.0, 8.0 / f, 64.0 * f);
  REQUIRE(tr.crossings.size() >= 15);
  for (size_t i = 1; i < tr.crossings.size(); ++i)
    CHECK(tr.crossings[i].dir != tr.crossings[i - 1].dir);
}

TEST_CASE("two-tone crossings match a bisection oracle") {
  // Fundamental plus a third harmonic, the kind of shape a hardening spring
  // produces. Crossing times are found independently by bisection on the
  // continuous signal.
  const double f = 2000.0, w = 2.0 * M_PI * f;
  auto th = [&](double t) { return 0.25 * std::sin(w * t) + 0.02 * std::sin(3.0 * w * t + 0.4); };
  auto om = [&](double t) {
    return 0.25 * w * std::cos(w * t) + 0.06 * w * std::cos(3.0 * w * t + 0.4);
  };
  const double rate = 48.0 * f;
  const Trace tr = sampled_trace(th, om, 2e-6, 2e-6 + 6.0 / f, rate);
  REQUIRE(tr.crossings.size() >= 11);

  for (const Crossing& c : tr.crossings) {
    double lo = c.t - 0.6 / rate, hi = c.t + 0.6 / rate;
    REQUIRE(th(lo) * th(hi) < 0.0);
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (th(lo) * th(mid) <= 0.0)
        hi = mid;
      else
        lo = mid;
    }
    CHECK(std::abs(c.t - 0.5 * (lo + hi)) < 1e-8);
  }
}

TEST_CASE("pure sine cycle measurements recover period and amplitude") {
  const double A = 0.31, f = 1850.0, w = 2.0 * M_PI * f;
  auto th = [&](double t) { return A * std::sin(w * t + 0.41); };
  auto om = [&](double t) { return A * w * std::cos(w * t + 0.41); };
  const Trace tr = sampled_trace(th, om, 1e-6, 1e-6 + 12.0 / f, 50.0 * f);
  const CyclePeriods cyc = measure_cycles(tr);
  REQUIRE(cyc.half_period.size() >= 20);
  for (int i = 0; i < cyc.half_period.size(); ++i) {
    CHECK(std::abs(cyc.half_period[i] - 0.5 / f) < 1e-8);
    CHECK(std::abs(cyc.amplitude[i] - A) < 2e-6 * A);
    CHECK(std::abs(cyc.frequency()[i] - f) < 0.1);
  }
  // Midpoints sit between the bracketing crossings.
  for (int i = 0; i < cyc.t_mid.size(); ++i) {
    CHECK(cyc.t_mid[i] > tr.crossings[i].t);
    CHECK(cyc.t_mid[i] < tr.crossings[i + 1].t);
  }
}

TEST_CASE("cycle measurement needs at least three crossings") {
  const double f = 2000.0, w = 2.0 * M_PI * f;
  auto th = [&](double t) { return 0.2 * std::sin(w * t + 0.2); };
  auto om = [&](double t) { return 0.2 * w * std::cos(w * t + 0.2); };
  // Just over one period: two crossings only.
  const Trace tr = sampled_trace(th, om, 0.0, 1.05 / f, 200.0 * f);
  REQUIRE(tr.crossings.size() == 2);
  CHECK_THROWS_AS(measure_cycles(tr), ProtocolError);
}

TEST_CASE("hermite interpolation reproduces cubics exactly") {
  // y(s h) for y = 2 - 3 x + x^2 + 0.5 x^3 over a segment of length h.
  auto y = [](double x) { return 2.0 - 3.0 * x + x * x + 0.5 * x * x * x; };
  auto d = [](double x) { return -3.0 + 2.0 * x + 1.5 * x * x; };
  const double h = 0.7;
  for (double s : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    CHECK(std::abs(hermite_value(y(0.0), d(0.0), y(h), d(h), h, s) - y(s * h)) < 1e-14);
  }
  // Root fraction of a bracketing linear segment: x - 0.31 on [0, h].
  auto yr = [](double x) { return x - 0.31; };
  const double root = hermite_root(yr(0.0), 1.0, yr(h), 1.0, h);
  CHECK(std::abs(root - 0.31 / h) < 1e-12);
}

TEST_CASE("trace interpolation matches the underlying sine between samples") {
  const double A = 0.2, f = 2000.0, w = 2.0 * M_PI * f;
  auto th = [&](double t) { return A * std::sin(w * t); };
  auto om = [&](double t) { return A * w * std::cos(w * t); };
  const Trace tr = sampled_trace(th, om, 0.0, 3.0 / f, 60.0 * f);
  for (double t : {1.3e-4, 7.7e-4, 1.01e-3}) {
    CHECK(std::abs(tr.theta_at(t) - th(t)) < 3e-7);
  }
}
