#pragma once

// Open-loop frequency response of the parametric oscillation. The actuation
// frequency is stepped across a grid while the mechanical state carries over
// from point to point, the way a slow hardware sweep behaves. Swept up and
// down the same grid the response shows the branch structure of the resonance:
// an upper branch that folds over at its high-frequency end and a coexisting
// low branch, with abrupt jumps where a branch loses stability.

#include <vector>

#include "mirrorsim/integrate.hpp"
#include "mirrorsim/model.hpp"

namespace mirrorsim {

struct RespPoint {
  double nu = 0.0;         // actuation frequency / (2 x reference frequency)
  double f_act = 0.0;      // Hz
  double amplitude = 0.0;  // settled zero-to-peak swing, rad
  double f_mirror = 0.0;   // measured oscillation frequency, Hz (0 when still)
};

struct SweepJump {
  double nu_before = 0.0;
  double nu_after = 0.0;
  double amp_before = 0.0;
  double amp_after = 0.0;
};

struct RespCurve {
  std::vector<RespPoint> points;
  std::vector<SweepJump> jumps;
};

struct RespConfig {
  int settle_cycles = 250;   // mirror cycles discarded after each step
  int measure_cycles = 80;   // mirror cycles averaged per point
  double reseed_level = 1e-3;  // fraction of theta_ref used to re-kick a dead state
  IntegratorConfig integ{};
};

// Sweeps the normalized actuation frequency across the given grid in the
// given order, carrying the state. A state whose swing has fallen below the
// reseed level is re-kicked before the next point so the instability has a
// perturbation to grow from. Jumps are recorded where consecutive settled
// amplitudes differ by more than 20 percent of the larger one and by more
// than 2 percent of the reference angle.
RespCurve sweep_response(const MirrorParams& p, double hv_voltage, double duty,
                         const std::vector<double>& nu_grid,
                         const RespConfig& cfg);

// Convenience builder for an inclusive uniform grid.
std::vector<double> uniform_grid(double lo, double hi, double step);

}  // namespace mirrorsim
