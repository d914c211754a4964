#include <cmath>

#include <Eigen/Dense>

#include "doctest.h"
#include "mirrorsim/curves.hpp"
#include "mirrorsim/errors.hpp"

using namespace mirrorsim;

TEST_CASE("polynomial evaluation matches Horner by hand") {
  Eigen::VectorXd c(4);
  c << 1.5, -2.0, 0.25, 3.0;
  auto f = NonlinearCurve::poly(c, Parity::none, -2.0, 2.0);
  for (double x : {-1.7, -0.3, 0.0, 0.8, 1.99}) {
    const double want = 1.5 + x * (-2.0 + x * (0.25 + x * 3.0));
    CHECK(f(x) == doctest::Approx(want).epsilon(1e-15));
  }
}

TEST_CASE("even curve is reflection-exact in floating point") {
  Eigen::VectorXd c(5);
  c << 2.0, 0.0, -1.3, 0.0, 0.7;
  auto f = NonlinearCurve::poly(c, Parity::even, -1.0, 1.0);
  for (double x : {0.1, 0.333333, 0.77, 0.999}) {
    CHECK(f(-x) == f(x));  // bitwise, not approximate
  }
}

TEST_CASE("odd curve is reflection-exact and zero at origin") {
  Eigen::VectorXd c(4);
  c << 0.0, 1.0, 0.0, -0.45;
  auto f = NonlinearCurve::poly(c, Parity::odd, -1.0, 1.0);
  CHECK(f(0.0) == 0.0);
  for (double x : {0.05, 0.4, 0.93}) {
    CHECK(f(-x) == -f(x));
  }
}

TEST_CASE("declared parity rejects contaminated coefficients") {
  Eigen::VectorXd c(3);
  c << 1.0, 0.5, 2.0;  // odd term present
  CHECK_THROWS_AS(NonlinearCurve::poly(c, Parity::even, -1.0, 1.0), ConfigError);
  Eigen::VectorXd c2(3);
  c2 << 0.0, 1.0, 1e-30;  // even term present
  CHECK_THROWS_AS(NonlinearCurve::poly(c2, Parity::odd, -1.0, 1.0), ConfigError);
}

TEST_CASE("parity requires a symmetric domain") {
  Eigen::VectorXd c(1);
  c << 1.0;
  CHECK_THROWS_AS(NonlinearCurve::poly(c, Parity::even, -0.5, 0.6), ConfigError);
}

TEST_CASE("evaluation outside the domain throws") {
  Eigen::VectorXd c(1);
  c << 1.0;
  auto f = NonlinearCurve::poly(c, Parity::even, -0.5, 0.5);
  CHECK_THROWS_AS(f(0.51), CurveDomainError);
  CHECK_THROWS_AS(f(-0.51), CurveDomainError);
  CHECK_NOTHROW(f(0.5));
}

TEST_CASE("empty curve throws on use") {
  NonlinearCurve f;
  CHECK_THROWS_AS(f(0.0), SimError);
}

TEST_CASE("table with exact slopes reproduces a cubic exactly") {
  // f(x) = x^3 is odd; a C1 Hermite table with exact derivative samples
  // represents any cubic with no interpolation error.
  const int n = 9;
  Eigen::ArrayXd xs(n), ys(n), ms(n);
  for (int i = 0; i < n; ++i) {
    const double x = 0.1 * i;
    xs[i] = x;
    ys[i] = x * x * x;
    ms[i] = 3.0 * x * x;
  }
  auto f = NonlinearCurve::table(xs, ys, ms, Parity::odd);
  for (double x : {0.025, 0.41, -0.63, 0.7999}) {
    CHECK(f(x) == doctest::Approx(x * x * x).epsilon(1e-14));
  }
}

TEST_CASE("table without slopes interpolates a smooth function closely") {
  const int n = 101;
  Eigen::ArrayXd xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    const double x = 0.005 * i;
    xs[i] = x;
    ys[i] = std::exp(-x * x * 4.0);
  }
  auto f = NonlinearCurve::table(xs, ys, Parity::even);
  for (double x : {0.012, 0.251, 0.4321}) {
    CHECK(f(x) == doctest::Approx(std::exp(-x * x * 4.0)).epsilon(1e-6));
    CHECK(f(-x) == f(x));
  }
}

TEST_CASE("odd table must start at zero with value zero") {
  Eigen::ArrayXd xs(3), ys(3);
  xs << 0.0, 0.5, 1.0;
  ys << 0.1, 0.2, 0.3;  // nonzero at the origin
  CHECK_THROWS_AS(NonlinearCurve::table(xs, ys, Parity::odd), ConfigError);
  Eigen::ArrayXd xs2(3);
  xs2 << 0.25, 0.5, 1.0;  // does not start at zero
  Eigen::ArrayXd ys2(3);
  ys2 << 0.0, 0.2, 0.3;
  CHECK_THROWS_AS(NonlinearCurve::table(xs2, ys2, Parity::odd), ConfigError);
}

TEST_CASE("table angles must be strictly increasing") {
  Eigen::ArrayXd xs(3), ys(3);
  xs << 0.0, 0.5, 0.5;
  ys << 0.0, 0.2, 0.3;
  CHECK_THROWS_AS(NonlinearCurve::table(xs, ys, Parity::odd), ConfigError);
}

TEST_CASE("array evaluation matches scalar evaluation") {
  Eigen::VectorXd c(3);
  c << 0.5, 0.0, 1.25;
  auto f = NonlinearCurve::poly(c, Parity::even, -1.0, 1.0);
  Eigen::ArrayXd xs(5);
  xs << -0.9, -0.25, 0.0, 0.3, 0.88;
  Eigen::ArrayXd ys = f(xs);
  for (int i = 0; i < 5; ++i) CHECK(ys[i] == f(xs[i]));
}
