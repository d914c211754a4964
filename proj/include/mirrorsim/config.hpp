#pragma once

#include <string>

#include "mirrorsim/model.hpp"

namespace mirrorsim {

// Drive and controller settings carried next to the physical parameters in
// the mirror file; command-line flags may override them.
struct DriveDefaults {
  double hv_voltage = 100.0;  // V
  double duty = 0.6;
  double kp = 0.3;         // PLL proportional gain
  double ki = 0.05;        // PLL integral gain
  double t_beta_ref = 0.0;  // s, phase reference
};

struct MirrorConfig {
  MirrorParams params;
  DriveDefaults drive;
};

// Loads and validates a mirror parameter file (JSON, format mirror-params/1).
// The schema is documented in the repository README. Throws ConfigError on
// missing keys, wrong types or invariant violations.
MirrorConfig load_mirror_config(const std::string& path);

}  // namespace mirrorsim
