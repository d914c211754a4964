#include "mirrorsim/curves.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mirrorsim/errors.hpp"

namespace mirrorsim {

namespace {

// Finite-difference knot slopes for a non-uniform grid, second order at
// interior points, one-sided three-point formulas at the ends.
Eigen::ArrayXd fd_slopes(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y) {
  const Eigen::Index n = x.size();
  Eigen::ArrayXd m(n);
  if (n == 2) {
    m[0] = m[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return m;
  }
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    const double h0 = x[i] - x[i - 1];
    const double h1 = x[i + 1] - x[i];
    const double s0 = (y[i] - y[i - 1]) / h0;
    const double s1 = (y[i + 1] - y[i]) / h1;
    m[i] = (h1 * s0 + h0 * s1) / (h0 + h1);
  }
  {
    const double h0 = x[1] - x[0];
    const double h1 = x[2] - x[1];
    const double s0 = (y[1] - y[0]) / h0;
    const double s1 = (y[2] - y[1]) / h1;
    m[0] = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
  }
  {
    const double h0 = x[n - 2] - x[n - 3];
    const double h1 = x[n - 1] - x[n - 2];
    const double s0 = (y[n - 2] - y[n - 3]) / h0;
    const double s1 = (y[n - 1] - y[n - 2]) / h1;
    m[n - 1] = ((2.0 * h1 + h0) * s1 - h1 * s0) / (h0 + h1);
  }
  return m;
}

}  // namespace

NonlinearCurve NonlinearCurve::poly(const Eigen::VectorXd& coeffs,
                                    Parity parity, double domain_lo,
                                    double domain_hi) {
  if (coeffs.size() == 0) throw ConfigError("polynomial curve needs at least one coefficient");
  if (!(domain_lo < domain_hi)) throw ConfigError("curve domain must be a nonempty interval");

  NonlinearCurve c;
  c.parity_ = parity;
  c.lo_ = domain_lo;
  c.hi_ = domain_hi;
  c.is_table_ = false;

  if (parity == Parity::none) {
    c.coeffs_ = coeffs;
    return c;
  }

  if (domain_lo != -domain_hi)
    throw ConfigError("a curve with declared parity needs a symmetric domain");
  const int keep_rem = (parity == Parity::odd) ? 1 : 0;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    if (k % 2 != keep_rem && coeffs[k] != 0.0)
      throw ConfigError("coefficient of x^" + std::to_string(k) +
                        " violates the declared parity");
  }
  // Reduced coefficients of q(u) with u = x^2, so the reflection symmetry is
  // exact: odd f(x) = x q(x^2), even f(x) = q(x^2).
  const Eigen::Index nred = (coeffs.size() - keep_rem + 1) / 2;
  Eigen::VectorXd red = Eigen::VectorXd::Zero(std::max<Eigen::Index>(nred, 1));
  for (Eigen::Index k = keep_rem; k < coeffs.size(); k += 2) red[(k - keep_rem) / 2] = coeffs[k];
  c.coeffs_ = red;
  return c;
}

NonlinearCurve NonlinearCurve::table(const Eigen::ArrayXd& angles,
                                     const Eigen::ArrayXd& values,
                                     Parity parity) {
  return table(angles, values, fd_slopes(angles, values), parity);
}

NonlinearCurve NonlinearCurve::table(const Eigen::ArrayXd& angles,
                                     const Eigen::ArrayXd& values,
                                     const Eigen::ArrayXd& slopes,
                                     Parity parity) {
  const Eigen::Index n = angles.size();
  if (n < 2) throw ConfigError("table curve needs at least two knots");
  if (values.size() != n || slopes.size() != n)
    throw ConfigError("table curve arrays must have equal length");
  for (Eigen::Index i = 1; i < n; ++i)
    if (!(angles[i] > angles[i - 1]))
      throw ConfigError("table angles must be strictly increasing");

  NonlinearCurve c;
  c.parity_ = parity;
  c.is_table_ = true;
  c.xs_ = angles;
  c.ys_ = values;
  c.ms_ = slopes;

  if (parity == Parity::none) {
    c.lo_ = angles[0];
    c.hi_ = angles[n - 1];
  } else {
    if (angles[0] != 0.0)
      throw ConfigError("a table with declared parity must start at angle 0");
    if (parity == Parity::odd && values[0] != 0.0)
      throw ConfigError("an odd table must have value 0 at angle 0");
    c.lo_ = -angles[n - 1];
    c.hi_ = angles[n - 1];
  }

  // Detect a uniform grid so segment lookup is O(1).
  const double dx0 = angles[1] - angles[0];
  bool uniform = true;
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    if (std::abs((angles[i + 1] - angles[i]) - dx0) > 1e-9 * dx0) {
      uniform = false;
      break;
    }
  }
  c.uniform_ = uniform;
  c.dx_ = dx0;
  return c;
}

double NonlinearCurve::eval_table(double x) const {
  const Eigen::Index n = xs_.size();
  Eigen::Index i;
  if (uniform_) {
    i = static_cast<Eigen::Index>((x - xs_[0]) / dx_);
    i = std::clamp<Eigen::Index>(i, 0, n - 2);
  } else {
    const double* begin = xs_.data();
    i = std::upper_bound(begin, begin + n, x) - begin - 1;
    i = std::clamp<Eigen::Index>(i, 0, n - 2);
  }
  const double h = xs_[i + 1] - xs_[i];
  const double s = (x - xs_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * ys_[i] + h10 * h * ms_[i] + h01 * ys_[i + 1] + h11 * h * ms_[i + 1];
}

double NonlinearCurve::eval_core(double x) const {
  if (!is_table_) {
    if (parity_ == Parity::none) {
      double acc = 0.0;
      for (Eigen::Index k = coeffs_.size() - 1; k >= 0; --k) acc = acc * x + coeffs_[k];
      return acc;
    }
    const double u = x * x;
    double q = 0.0;
    for (Eigen::Index k = coeffs_.size() - 1; k >= 0; --k) q = q * u + coeffs_[k];
    return (parity_ == Parity::odd) ? x * q : q;
  }
  return eval_table(x);
}

double NonlinearCurve::operator()(double theta) const {
  if (!is_table_ && coeffs_.size() == 0)
    throw ConfigError("curve evaluated before being assigned");
  if (!(theta >= lo_ && theta <= hi_))
    throw CurveDomainError("curve evaluated at " + std::to_string(theta) +
                           " outside domain [" + std::to_string(lo_) + ", " +
                           std::to_string(hi_) + "]");
  if (parity_ == Parity::none || !is_table_) return eval_core(theta);
  // Table with parity: evaluate on [0, hi] and reflect.
  if (theta < 0.0) {
    const double v = eval_table(-theta);
    return (parity_ == Parity::odd) ? -v : v;
  }
  return eval_table(theta);
}

Eigen::ArrayXd NonlinearCurve::operator()(const Eigen::ArrayXd& theta) const {
  Eigen::ArrayXd out(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) out[i] = (*this)(theta[i]);
  return out;
}

}  // namespace mirrorsim
