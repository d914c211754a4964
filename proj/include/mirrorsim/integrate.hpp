#pragma once

#include <functional>
#include <utility>

#include <Eigen/Dense>

#include "mirrorsim/drive.hpp"
#include "mirrorsim/model.hpp"
#include "mirrorsim/trace.hpp"

namespace mirrorsim {

enum class Method { rk45, rk4 };

struct IntegratorConfig {
  Method method = Method::rk45;
  double dt = 0.0;           // s, fixed step size (rk4 only)
  double rel_tol = 1e-12;
  double abs_tol = -1.0;     // <= 0 resolves to 1e-12 * theta_ref
  double output_rate = 0.0;  // Hz, <= 0 resolves to 80 * f_ref
  double max_step = 0.0;     // s, <= 0 resolves to 1 / (8 f_ref)

  // Fills the defaulted fields from the mirror normalization pair.
  IntegratorConfig resolved(const MirrorParams& p) const;
};

// One accepted integrator step. y = (theta, omega, work) and f its time
// derivative at the step ends; both ends share the same drive voltage.
struct StepRecord {
  double t0 = 0.0, t1 = 0.0;
  Eigen::Vector3d y0, f0, y1, f1;
};

using StepCallback = std::function<void(const StepRecord&)>;

// Integrates the equation of motion over span, sampling uniformly at the
// configured output rate and detecting angle zero crossings on the sampled
// grid. Steps never straddle a drive edge or the vibration onset, so the
// rectangular voltage is exact. The callback, when given, runs after every
// accepted step and may mutate the drive schedule at times later than the
// step end (feedback control).
Trace integrate(const MirrorParams& params, const SimState& initial,
                DriveSource& drive, const VibrationProfile& profile,
                std::pair<double, double> span, const IntegratorConfig& config,
                const StepCallback& on_step = nullptr);

}  // namespace mirrorsim
