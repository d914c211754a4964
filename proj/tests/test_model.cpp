#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mirrorsim/errors.hpp"
#include "mirrorsim/model.hpp"

using namespace mirrorsim;
using mirrorsim::test::default_config;

namespace {

// Relative closeness against a fixed reference value.
void check_rel(double got, double want, double tol) {
  CHECK(std::abs(got - want) <= tol * std::abs(want));
}

}  // namespace

TEST_CASE("comb torque at pinned operating points") {
  const MirrorParams& p = default_config().params;
  // Half dC/dtheta V^2 with the shipped capacitance-derivative table.
  check_rel(comb_torque(p, 0.1, 100.0), -3.55232769234907746e-06, 1e-10);
  check_rel(comb_torque(p, 0.25, 80.0), -7.31122288312277582e-07, 1e-10);
  CHECK(comb_torque(p, 0.0, 120.0) == 0.0);
}

TEST_CASE("vibration torque at pinned operating points") {
  const MirrorParams& p = default_config().params;
  VibrationProfile v;
  v.amplitude = 27.74;
  v.frequency = 3900.0;
  v.phase = 0.7;
  const double t = 1.234e-4;
  const double th = 0.18;

  SUBCASE("in-plane with misalignment") {
    v.axis = Axis::Ty;
    v.misalign = 0.08;
    check_rel(vibration_torque(p, th, t, v), -5.3022851235511324e-09, 1e-13);
  }
  SUBCASE("out-of-plane") {
    v.axis = Axis::Tz;
    check_rel(vibration_torque(p, th, t, v), -9.5403203019377017e-10, 1e-13);
  }
  SUBCASE("silent before onset") {
    v.axis = Axis::Tz;
    v.t_on = 0.5;
    CHECK(vibration_torque(p, th, t, v) == 0.0);
  }
}

TEST_CASE("vibration torque magnitude is bounded by L m a") {
  const MirrorParams& p = default_config().params;
  const double bound = p.com_offset * p.mass * 30.0;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uth(-0.5, 0.5), ut(0.0, 1e-2);
  for (int axis = 0; axis < 2; ++axis) {
    VibrationProfile v;
    v.axis = axis ? Axis::Tz : Axis::Ty;
    v.amplitude = 30.0;
    v.frequency = 3777.0;
    v.phase = 1.1;
    for (int i = 0; i < 200; ++i) {
      const double tau = vibration_torque(p, uth(rng), ut(rng), v);
      CHECK(std::abs(tau) <= bound * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("restoring and comb torques are odd, damping odd in omega") {
  const MirrorParams& p = default_config().params;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uth(0.0, 0.5), uom(0.0, 5e3);
  for (int i = 0; i < 200; ++i) {
    const double th = uth(rng);
    const double om = uom(rng);
    CHECK(restoring_torque(p, -th) == -restoring_torque(p, th));
    CHECK(comb_torque(p, -th, 90.0) == -comb_torque(p, th, 90.0));
    CHECK(damping_torque(p, th, -om) == -damping_torque(p, th, om));
  }
  CHECK(restoring_torque(p, 0.0) == 0.0);
}

TEST_CASE("equation rhs is the defining torque balance") {
  const MirrorParams& p = default_config().params;
  VibrationProfile v;
  v.axis = Axis::Ty;
  v.amplitude = 20.0;
  v.frequency = 2100.0;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uth(-0.4, 0.4), uom(-4e3, 4e3),
      ut(0.0, 5e-3), uv(0.0, 110.0);
  for (int i = 0; i < 100; ++i) {
    SimState s{ut(rng), uth(rng), uom(rng)};
    const double V = uv(rng);
    const Deriv d = equation_rhs(p, s, V, v);
    CHECK(d.dtheta == s.omega);
    const double residual = p.inertia * d.domega +
                            damping_torque(p, s.theta, s.omega) +
                            restoring_torque(p, s.theta) -
                            comb_torque(p, s.theta, V) -
                            vibration_torque(p, s.theta, s.t, v);
    CHECK(std::abs(residual) <= 1e-18 + 1e-12 * p.inertia * std::abs(d.domega));
  }
}

TEST_CASE("rms gravity units convert to peak acceleration") {
  check_rel(grms_to_peak(1.0), std::sqrt(2.0) * 9.80665, 1e-15);
  check_rel(grms_to_peak(2.0), 27.737394862892227, 1e-14);
  CHECK(grms_to_peak(0.0) == 0.0);
}

TEST_CASE("mechanical energy of a linear spring is the textbook value") {
  const MirrorParams lin = mirrorsim::test::linear_params(1e-12, 1.3555e-4, 0.0);
  const double th = 0.2, om = 500.0;
  const double want = 0.5 * 1e-12 * om * om + 0.5 * 1.3555e-4 * th * th;
  check_rel(mechanical_energy(lin, th, om), want, 1e-13);
  CHECK(mechanical_energy(lin, 0.0, 0.0) == 0.0);
}

TEST_CASE("mechanical energy picks up the hardening quartic term") {
  const MirrorParams& p = default_config().params;
  // k(theta) = k0 (1 + k2 theta^2) integrates to k0 theta^2/2 + k0 k2 theta^4/4.
  const double k0 = p.stiffness(0.0);
  const double k2 = (p.stiffness(0.3) / k0 - 1.0) / (0.3 * 0.3);
  const double th = 0.25;
  const double want = 0.5 * k0 * th * th + 0.25 * k0 * k2 * th * th * th * th;
  check_rel(mechanical_energy(p, th, 0.0), want, 1e-12);
}

TEST_CASE("parameter validation rejects broken sets") {
  MirrorParams p = default_config().params;
  CHECK_NOTHROW(p.validate());

  SUBCASE("non-positive inertia") {
    p.inertia = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
  }
  SUBCASE("stiffness declared with the wrong parity") {
    Eigen::VectorXd c(2);
    c << 0.0, 1.0;
    p.stiffness = NonlinearCurve::poly(c, Parity::odd, -0.5, 0.5);
    CHECK_THROWS_AS(p.validate(), ConfigError);
  }
  SUBCASE("softening stiffness") {
    Eigen::VectorXd c(3);
    c << 1.3555e-4, 0.0, -1e-3;
    p.stiffness = NonlinearCurve::poly(c, Parity::even, -0.52, 0.52);
    CHECK_THROWS_AS(p.validate(), ConfigError);
  }
}

TEST_CASE("vibration profile validation") {
  VibrationProfile v;
  v.amplitude = 10.0;
  v.frequency = 2000.0;
  CHECK_NOTHROW(v.validate());
  v.frequency = 0.0;
  CHECK_THROWS_AS(v.validate(), ConfigError);
  v.frequency = 2000.0;
  v.misalign = 0.2;
  CHECK_THROWS_AS(v.validate(), ConfigError);
}

TEST_CASE("tone accel is a cosine with a hard onset") {
  VibrationProfile v;
  v.amplitude = 5.0;
  v.frequency = 100.0;
  v.phase = 0.25;
  v.t_on = 0.01;
  CHECK(v.accel(0.0099) == 0.0);
  const double t = 0.0123;
  check_rel(v.accel(t), 5.0 * std::cos(2.0 * M_PI * 100.0 * t + 0.25), 1e-15);
}
