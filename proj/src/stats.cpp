#include "mirrorsim/stats.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "mirrorsim/errors.hpp"

namespace mirrorsim {

SeriesStats series_stats(const Eigen::ArrayXd& x, Eigen::Index min_count) {
  if (x.size() < min_count)
    throw ProtocolError("need at least " + std::to_string(min_count) +
                        " samples, got " + std::to_string(x.size()));
  SeriesStats s;
  s.count = x.size();
  s.mean = x.mean();
  s.std_dev = std::sqrt((x - s.mean).square().mean());
  s.pct = (s.mean != 0.0) ? 100.0 * s.std_dev / std::abs(s.mean)
                          : std::numeric_limits<double>::infinity();
  return s;
}

double tone_amplitude(const Eigen::ArrayXd& x) {
  if (x.size() < 2) throw ProtocolError("tone amplitude needs at least 2 samples");
  return std::sqrt(2.0 * (x - x.mean()).square().mean());
}

Eigen::Index xcorr_lag(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b,
                       Eigen::Index max_lag) {
  if (a.size() != b.size())
    throw ProtocolError("cross-correlation needs equal-length series");
  const Eigen::Index n = a.size();
  if (n < 2 * max_lag + 2) throw ProtocolError("series too short for the lag range");
  const Eigen::ArrayXd da = a - a.mean();
  const Eigen::ArrayXd db = b - b.mean();
  double best = -std::numeric_limits<double>::infinity();
  Eigen::Index best_lag = 0;
  for (Eigen::Index lag = -max_lag; lag <= max_lag; ++lag) {
    // Positive lag correlates a[i] with b[i - lag].
    const Eigen::Index lo = std::max<Eigen::Index>(0, lag);
    const Eigen::Index hi = std::min<Eigen::Index>(n, n + lag);
    const Eigen::Index len = hi - lo;
    const auto sa = da.segment(lo, len);
    const auto sb = db.segment(lo - lag, len);
    const double denom = std::sqrt(sa.square().sum() * sb.square().sum());
    if (!(denom > 0.0)) continue;
    const double r = (sa * sb).sum() / denom;
    if (r > best) {
      best = r;
      best_lag = lag;
    }
  }
  return best_lag;
}

double beat_frequency(const Eigen::ArrayXd& t, const Eigen::ArrayXd& x,
                      double f_lo, double f_hi) {
  const Eigen::Index n = t.size();
  if (n != x.size() || n < 8) throw ProtocolError("beat estimate needs a sampled series");
  if (!(f_hi > f_lo) || !(f_lo >= 0.0))
    throw ConfigError("beat search band must satisfy 0 <= f_lo < f_hi");
  const double span = t[n - 1] - t[0];
  if (!(span > 0.0)) throw ProtocolError("time grid must be increasing");

  Eigen::ArrayXd w(n);
  for (Eigen::Index i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * double(i) / double(n - 1));
  const Eigen::ArrayXd xs = (x - x.mean()) * w;

  const double df = 0.25 / span;
  const Eigen::Index m = static_cast<Eigen::Index>(std::ceil((f_hi - f_lo) / df)) + 1;
  Eigen::ArrayXd mag(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double f = f_lo + k * df;
    std::complex<double> acc(0.0, 0.0);
    for (Eigen::Index i = 0; i < n; ++i)
      acc += xs[i] * std::polar(1.0, -2.0 * M_PI * f * (t[i] - t[0]));
    mag[k] = std::norm(acc);
  }

  Eigen::Index k_best = 0;
  mag.maxCoeff(&k_best);
  double f_peak = f_lo + k_best * df;
  if (k_best > 0 && k_best < m - 1) {
    const double ym = mag[k_best - 1], y0 = mag[k_best], yp = mag[k_best + 1];
    const double denom = ym - 2.0 * y0 + yp;
    if (denom < 0.0) f_peak += 0.5 * df * (ym - yp) / denom;
  }
  return f_peak;
}

}  // namespace mirrorsim
