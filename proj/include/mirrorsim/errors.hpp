#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mirrorsim {

// Base class for all errors raised by the library.
class SimError : public std::runtime_error {
 public:
  explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad or inconsistent configuration (files, parameter values, curve setup).
class ConfigError : public SimError {
 public:
  explicit ConfigError(const std::string& msg) : SimError(msg) {}
};

// Curve evaluated outside its declared angle domain.
class CurveDomainError : public SimError {
 public:
  explicit CurveDomainError(const std::string& msg) : SimError(msg) {}
};

// Input outside the validity range of an analytic formula.
class ValidityError : public SimError {
 public:
  explicit ValidityError(const std::string& msg) : SimError(msg) {}
};

// State became non-finite during integration; t_last is the last good time.
class DivergenceError : public SimError {
 public:
  DivergenceError(const std::string& msg, double t_last_)
      : SimError(msg), t_last(t_last_) {}
  double t_last;
};

// Adaptive step size collapsed below the resolvable limit.
class StiffnessError : public SimError {
 public:
  StiffnessError(const std::string& msg, double t_last_)
      : SimError(msg), t_last(t_last_) {}
  double t_last;
};

// Drive voltage queried past the end of the generated edge schedule.
class ScheduleExhaustedError : public SimError {
 public:
  explicit ScheduleExhaustedError(const std::string& msg) : SimError(msg) {}
};

// Oscillation amplitude collapsed while the feedback loop was active.
class LockLostError : public SimError {
 public:
  LockLostError(const std::string& msg, double t_last_)
      : SimError(msg), t_last(t_last_) {}
  double t_last;
};

// Experiment protocol precondition violated (not settled, window too short).
class ProtocolError : public SimError {
 public:
  explicit ProtocolError(const std::string& msg) : SimError(msg) {}
};

// Data file missing its format tag or carrying the wrong one.
class FormatError : public SimError {
 public:
  explicit FormatError(const std::string& msg) : SimError(msg) {}
};

}  // namespace mirrorsim
