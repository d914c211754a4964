#pragma once

// Shared fixtures for the unit tests: the shipped default parameter file and
// a few synthetic parameter sets small enough to reason about analytically.

#include <string>

#include "mirrorsim/config.hpp"
#include "mirrorsim/model.hpp"

namespace mirrorsim::test {

inline std::string data_path(const std::string& name) {
  return std::string(MIRRORSIM_DATA_DIR) + "/" + name;
}

inline const MirrorConfig& default_config() {
  static const MirrorConfig cfg = load_mirror_config(data_path("default.mirror"));
  return cfg;
}

// Linear torsional oscillator: constant stiffness and damping, no comb
// coupling. Useful wherever a closed-form solution exists.
inline MirrorParams linear_params(double inertia, double k0, double c0) {
  MirrorParams p;
  p.inertia = inertia;
  p.mass = 2.3e-6;
  p.com_offset = 1e-4;
  p.theta_ref = 0.2617993877991494;
  p.f_ref = 2000.0;
  Eigen::VectorXd kc(1);
  kc << k0;
  p.stiffness = NonlinearCurve::poly(kc, Parity::even, -1.0, 1.0);
  Eigen::VectorXd cc(1);
  cc << c0;
  p.damping_base = NonlinearCurve::poly(cc, Parity::even, -1.0, 1.0);
  Eigen::VectorXd zero(1);
  zero << 0.0;
  p.damping_amp = NonlinearCurve::poly(zero, Parity::even, -1.0, 1.0);
  Eigen::VectorXd odd(2);
  odd << 0.0, 0.0;
  p.cap_deriv = NonlinearCurve::poly(odd, Parity::odd, -1.0, 1.0);
  return p;
}

// A quiet vibration profile for runs without external excitation.
inline VibrationProfile no_vibration() {
  VibrationProfile v;
  v.amplitude = 0.0;
  return v;
}

}  // namespace mirrorsim::test
