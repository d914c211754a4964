#pragma once

// Brings the mirror from rest to its steady parametric oscillation. The
// resonance is subharmonic, so a drive switched on at the target frequency
// cannot grow a signal out of nothing at a useful rate; instead the drive
// chirps downward through the resonance, captures the oscillation on the
// large-amplitude branch, then holds the target frequency until the amplitude
// stops changing.

#include "mirrorsim/integrate.hpp"
#include "mirrorsim/model.hpp"

namespace mirrorsim {

struct SettledState {
  SimState state;       // settled state, time rebased to zero at a rising drive edge
  double T_act = 0.0;   // actuation period the mirror is locked to
  double amplitude = 0.0;  // zero-to-peak swing, rad
  double t_beta = 0.0;  // delay from the capture edge to the next rising zero crossing
};

// Seeds a small initial deflection, chirps the actuation frequency from
// nu_start to nu_end (in units of twice the small-signal reference frequency)
// over 2000 reference periods, then holds nu_end in 100-cycle blocks until the
// relative amplitude change per block falls below 1e-5. Gives up with a
// ProtocolError if the oscillation fails to grow or does not settle within
// 10000 cycles.
SettledState settle_operating_point(const MirrorParams& p, double hv_voltage,
                                    double duty, double nu_start = 1.10,
                                    double nu_end = 1.00,
                                    const IntegratorConfig& config = {});

}  // namespace mirrorsim
