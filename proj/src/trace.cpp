#include "mirrorsim/trace.hpp"

#include <algorithm>
#include <cmath>

#include "mirrorsim/errors.hpp"

namespace mirrorsim {

double hermite_value(double y0, double d0, double y1, double d1, double h,
                     double s) {
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * h * d0 +
         (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * h * d1;
}

namespace {

double hermite_slope(double y0, double d0, double y1, double d1, double h,
                     double s) {
  const double s2 = s * s;
  return ((6.0 * s2 - 6.0 * s) * y0 + (3.0 * s2 - 4.0 * s + 1.0) * h * d0 +
          (-6.0 * s2 + 6.0 * s) * y1 + (3.0 * s2 - 2.0 * s) * h * d1) / h;
}

}  // namespace

double hermite_root(double y0, double d0, double y1, double d1, double h) {
  // Newton iteration from the secant estimate, falling back to bisection on
  // the bracketing interval whenever a Newton step leaves it.
  double lo = 0.0, hi = 1.0;
  double flo = y0;
  double s = y0 / (y0 - y1);
  for (int it = 0; it < 60; ++it) {
    const double f = hermite_value(y0, d0, y1, d1, h, s);
    if (f == 0.0) return s;
    if ((f > 0.0) == (flo > 0.0)) {
      lo = s;
      flo = f;
    } else {
      hi = s;
    }
    // Newton step in the fraction variable: the slope helper returns a per-
    // time derivative, so scale by h to get d(value)/ds.
    const double df = hermite_slope(y0, d0, y1, d1, h, s) * h;
    double snew = (df != 0.0) ? s - f / df : 0.5 * (lo + hi);
    if (!(snew > lo && snew < hi)) snew = 0.5 * (lo + hi);
    if (std::abs(snew - s) < 1e-16) return snew;
    s = snew;
  }
  return s;
}

double Trace::theta_at(double t) const {
  const Eigen::Index n = times.size();
  Eigen::Index i = static_cast<Eigen::Index>((t - times[0]) * rate);
  i = std::clamp<Eigen::Index>(i, 0, n - 2);
  const double h = times[i + 1] - times[i];
  const double s = (t - times[i]) / h;
  return hermite_value(theta[i], omega[i], theta[i + 1], omega[i + 1], h, s);
}

std::vector<Crossing> detect_crossings(const Eigen::ArrayXd& times,
                                       const Eigen::ArrayXd& theta,
                                       const Eigen::ArrayXd& omega) {
  std::vector<Crossing> out;
  const Eigen::Index n = times.size();
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (theta[i] == 0.0) {
      // A sample landing exactly on zero counts as one event when the motion
      // actually passes through; a resting zero produces nothing.
      if (omega[i] != 0.0)
        out.push_back({times[i], omega[i] > 0.0 ? CrossDir::rising : CrossDir::falling});
      continue;
    }
    if (theta[i] * theta[i + 1] < 0.0) {
      const double h = times[i + 1] - times[i];
      const double s = hermite_root(theta[i], omega[i], theta[i + 1], omega[i + 1], h);
      const double om = hermite_value(omega[i], 0.0, omega[i + 1], 0.0, h, s);
      // Direction from the sign change itself; the interpolated omega agrees
      // except in degenerate grazing cases.
      const CrossDir dir = (theta[i] < 0.0) ? CrossDir::rising : CrossDir::falling;
      (void)om;
      out.push_back({times[i] + s * h, dir});
    }
  }
  return out;
}

CyclePeriods measure_cycles(const Trace& trace) {
  const auto& cr = trace.crossings;
  if (cr.size() < 3)
    throw ProtocolError("cycle measurement needs at least 3 zero crossings");
  const Eigen::Index ncyc = static_cast<Eigen::Index>(cr.size()) - 1;
  CyclePeriods cp;
  cp.t_mid.resize(ncyc);
  cp.half_period.resize(ncyc);
  cp.amplitude.resize(ncyc);

  const double t0 = trace.times[0];
  const Eigen::Index n = trace.times.size();
  for (Eigen::Index c = 0; c < ncyc; ++c) {
    const double ta = cr[c].t;
    const double tb = cr[c + 1].t;
    cp.t_mid[c] = 0.5 * (ta + tb);
    cp.half_period[c] = tb - ta;

    // Peak |theta| on the samples inside the half cycle, then refined with the
    // extremum of the local cubic interpolant.
    Eigen::Index ia = static_cast<Eigen::Index>(std::ceil((ta - t0) * trace.rate));
    Eigen::Index ib = static_cast<Eigen::Index>(std::floor((tb - t0) * trace.rate));
    ia = std::clamp<Eigen::Index>(ia, 0, n - 1);
    ib = std::clamp<Eigen::Index>(ib, 0, n - 1);
    double best = 0.0;
    Eigen::Index im = ia;
    for (Eigen::Index i = ia; i <= ib; ++i) {
      const double a = std::abs(trace.theta[i]);
      if (a > best) {
        best = a;
        im = i;
      }
    }
    for (Eigen::Index seg = std::max<Eigen::Index>(im - 1, 0);
         seg <= std::min<Eigen::Index>(im, n - 2); ++seg) {
      // Stationary points of the cubic through (theta, omega) at the segment
      // ends: solve the quadratic dtheta/ds = 0.
      const double h = trace.times[seg + 1] - trace.times[seg];
      const double y0 = trace.theta[seg], y1 = trace.theta[seg + 1];
      const double d0 = trace.omega[seg] * h, d1 = trace.omega[seg + 1] * h;
      const double a3 = 2.0 * (y0 - y1) + d0 + d1;
      const double a2 = 3.0 * (y1 - y0) - 2.0 * d0 - d1;
      const double a1 = d0;
      double cand[2];
      int ncand = 0;
      if (a3 != 0.0) {
        const double disc = a2 * a2 - 3.0 * a3 * a1;
        if (disc < 0.0) continue;
        const double sq = std::sqrt(disc);
        cand[ncand++] = (-a2 + sq) / (3.0 * a3);
        cand[ncand++] = (-a2 - sq) / (3.0 * a3);
      } else if (a2 != 0.0) {
        cand[ncand++] = -a1 / (2.0 * a2);
      }
      for (int ci = 0; ci < ncand; ++ci) {
        const double s = cand[ci];
        if (!(s > 0.0 && s < 1.0)) continue;
        const double v = std::abs(
            hermite_value(y0, trace.omega[seg], y1, trace.omega[seg + 1], h, s));
        if (v > best) best = v;
      }
    }
    cp.amplitude[c] = best;
  }
  return cp;
}

}  // namespace mirrorsim
