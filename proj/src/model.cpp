#include "mirrorsim/model.hpp"

#include <cmath>
#include <string>

#include "mirrorsim/errors.hpp"

namespace mirrorsim {

namespace {

// Gauss-Legendre 16-point rule on [-1, 1], positive half; nodes are symmetric.
constexpr int kGlHalf = 8;
constexpr double kGlNode[kGlHalf] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeight[kGlHalf] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

}  // namespace

void MirrorParams::validate() const {
  require(inertia > 0.0, "inertia must be positive");
  require(mass > 0.0, "mass must be positive");
  require(com_offset >= 0.0, "com_offset must be non-negative");
  require(theta_ref > 0.0, "theta_ref must be positive");
  require(f_ref > 0.0, "f_ref must be positive");
  require(stiffness.parity() == Parity::even,
          "stiffness curve k(theta) must be even so the restoring torque k(theta) theta is odd");
  require(cap_deriv.parity() == Parity::odd, "cap_deriv curve must be odd");
  require(damping_base.parity() == Parity::even, "damping_base curve must be even");
  require(damping_amp.parity() == Parity::even, "damping_amp curve must be even");

  // Restoring torque monotone increasing and stiffness non-decreasing in
  // |theta| (hardening), sampled across the declared domain.
  const int n = 401;
  const double hi = stiffness.domain_hi();
  double prev_tau = -HUGE_VAL;
  double prev_k = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double th = -hi + 2.0 * hi * i / n;
    const double tau = stiffness(th) * th;
    require(tau > prev_tau, "restoring torque k(theta) theta must be monotone increasing");
    prev_tau = tau;
    if (th >= 0.0) {
      const double k = stiffness(th);
      if (th > 0.0)
        require(k >= prev_k, "stiffness k(theta) must be non-decreasing in |theta|");
      prev_k = k;
    }
  }
}

void VibrationProfile::validate() const {
  if (!(amplitude >= 0.0)) throw ConfigError("vibration amplitude must be non-negative");
  if (!(frequency > 0.0)) throw ConfigError("vibration frequency must be positive");
  if (!(std::abs(misalign) <= 0.1))
    throw ConfigError("vibration misalignment must lie in [-0.1, 0.1] rad");
}

double restoring_torque(const MirrorParams& p, double theta) {
  return p.stiffness(theta) * theta;
}

double damping_torque(const MirrorParams& p, double theta, double omega) {
  return (p.damping_base(theta) + p.damping_amp(theta) * std::abs(omega)) * omega;
}

double comb_torque(const MirrorParams& p, double theta, double voltage) {
  return 0.5 * p.cap_deriv(theta) * voltage * voltage;
}

double vibration_torque(const MirrorParams& p, double theta, double t,
                        const VibrationProfile& vib) {
  const double d = vib.accel(t);
  if (d == 0.0) return 0.0;
  const double ce = std::cos(vib.misalign);
  const double se = std::sin(vib.misalign);
  double dy, dz;
  if (vib.axis == Axis::Ty) {
    dy = d * ce;
    dz = d * se;
  } else {
    dz = d * ce;
    dy = d * se;
  }
  return p.com_offset * p.mass * (dy * std::cos(theta) + dz * std::sin(theta));
}

Deriv equation_rhs(const MirrorParams& p, const SimState& s, double voltage,
                   const VibrationProfile& vib) {
  const double tau = comb_torque(p, s.theta, voltage) +
                     vibration_torque(p, s.theta, s.t, vib) -
                     damping_torque(p, s.theta, s.omega) -
                     restoring_torque(p, s.theta);
  return {s.omega, tau / p.inertia};
}

double mechanical_energy(const MirrorParams& p, double theta, double omega) {
  // Potential int_0^theta k(s) s ds mapped onto [-1, 1].
  const double half = 0.5 * theta;
  double pot = 0.0;
  for (int i = 0; i < kGlHalf; ++i) {
    const double sa = half * (1.0 + kGlNode[i]);
    const double sb = half * (1.0 - kGlNode[i]);
    pot += kGlWeight[i] * (p.stiffness(sa) * sa + p.stiffness(sb) * sb);
  }
  pot *= half;
  return 0.5 * p.inertia * omega * omega + pot;
}

}  // namespace mirrorsim
