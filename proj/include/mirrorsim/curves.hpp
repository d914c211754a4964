#pragma once

#include <Eigen/Dense>

namespace mirrorsim {

enum class Parity { odd, even, none };

// One-dimensional characteristic curve over mirror angle, either a polynomial
// or a sampled table with C1 cubic interpolation. Curves with declared odd or
// even parity are evaluated through reflection about zero, so the symmetry
// holds exactly in floating point.
class NonlinearCurve {
 public:
  // An empty curve; evaluating it throws. Parameter structs default to this
  // state until their curves are assigned.
  NonlinearCurve() = default;

  // Polynomial with ascending coefficients c0 + c1 x + c2 x^2 + ...
  // A declared parity requires the coefficients of the excluded powers to be
  // exactly zero and a symmetric domain.
  static NonlinearCurve poly(const Eigen::VectorXd& coeffs, Parity parity,
                             double domain_lo, double domain_hi);

  // Sampled table with strictly increasing angles. For odd or even parity the
  // table covers [0, hi] (first angle must be 0) and the curve is reflected to
  // [-hi, hi]; odd tables must have value 0 at angle 0. Slopes are optional
  // exact derivative samples; when absent, finite differences are used.
  static NonlinearCurve table(const Eigen::ArrayXd& angles,
                              const Eigen::ArrayXd& values, Parity parity);
  static NonlinearCurve table(const Eigen::ArrayXd& angles,
                              const Eigen::ArrayXd& values,
                              const Eigen::ArrayXd& slopes, Parity parity);

  double operator()(double theta) const;
  Eigen::ArrayXd operator()(const Eigen::ArrayXd& theta) const;

  Parity parity() const { return parity_; }
  double domain_lo() const { return lo_; }
  double domain_hi() const { return hi_; }
  bool is_table() const { return is_table_; }

 private:
  double eval_core(double x) const;  // x >= 0 for odd/even curves
  double eval_table(double x) const;

  Parity parity_ = Parity::none;
  double lo_ = 0.0, hi_ = 0.0;
  bool is_table_ = false;

  // Polynomial storage. For parity none these are the full coefficients used
  // with Horner evaluation; for odd/even they are the reduced coefficients of
  // q(x^2), with f(x) = x q(x^2) respectively f(x) = q(x^2).
  Eigen::VectorXd coeffs_;

  // Table storage.
  Eigen::ArrayXd xs_, ys_, ms_;
  bool uniform_ = false;
  double dx_ = 0.0;
};

}  // namespace mirrorsim
