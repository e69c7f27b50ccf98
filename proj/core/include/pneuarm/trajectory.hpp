#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "pneuarm/kinematics.hpp"

namespace pneuarm {

enum class Joint { kShoulder, kElbow };

/// Actuation mode: which muscle groups drive the reach.
enum class Mode {
  kBicepsOnly,   ///< only the elbow moves
  kDeltoidOnly,  ///< only the shoulder moves
  kCombined,     ///< both joints move
};

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& s);

struct NonPositiveDurationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TrajectorySpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// One joint's minimum-jerk polynomial: position c0 + c1 t + ... + c5 t^5 on
/// [0, T], at rest (zero velocity and acceleration) at both ends.
struct QuinticSegment {
  std::array<double, 6> coeff{};  ///< ascending powers of t
  double duration = 0.0;          ///< T [s]
  Joint joint = Joint::kShoulder;

  double start() const { return coeff[0]; }
  double target() const;
};

struct SegmentSample {
  double position = 0.0;      ///< [rad]
  double velocity = 0.0;      ///< [rad/s]
  double acceleration = 0.0;  ///< [rad/s^2]
};

/// A single reach event: both joints move from `start` to `target` over a
/// shared duration.
struct TrajectorySpec {
  JointAngles start;
  JointAngles target;
  double duration = 1.0;  ///< requested duration [s]; may be extended
  Mode mode = Mode::kCombined;
  std::string label = "custom";

  /// Checks joint limits and that the mode matches which joints move.
  void validate(const ArmGeometry& geom) const;
};

/// Reaching constraints from infant kinematics data: ~1 s reaches with a
/// 565.4 mm/s peak hand speed (283 mm/s average, informational only).
struct ReachingLimits {
  double default_duration = 1.0;  ///< [s]
  double peak_speed = 0.5654;     ///< hard cap on wrist speed [m/s]
  double mean_speed = 0.283;      ///< [m/s]
};

struct JointTrajectory {
  QuinticSegment shoulder;
  QuinticSegment elbow;
  double duration = 0.0;  ///< common duration of both segments [s]
};

/// Minimum-jerk quintic between two rest states. Throws
/// NonPositiveDurationError for T <= 0.
QuinticSegment solve_quintic(double start, double target, double duration,
                             Joint joint = Joint::kShoulder);

/// Position/velocity/acceleration at time t. t is clamped to [0, T]; past T
/// the segment holds the target at rest.
SegmentSample eval(const QuinticSegment& seg, double t);

/// Plans both joints over one shared duration. Starting from spec.duration,
/// the duration is grown by factors of 1.1 until the wrist speed sampled at
/// 1 ms stays within limits.peak_speed.
JointTrajectory plan(const ArmGeometry& geom, const TrajectorySpec& spec,
                     const ReachingLimits& limits = {});

/// Peak wrist speed of a planned trajectory, sampled at `dt` seconds.
double sampled_peak_speed(const ArmGeometry& geom, const JointTrajectory& traj,
                          double dt = 1e-3);

/// The eight canonical reach targets P1..P8, all starting from the rest
/// configuration (pi/2, 0).
std::vector<TrajectorySpec> reference_setpoints(double duration = 1.0);

/// Looks up one of P1..P8 by label.
TrajectorySpec setpoint_by_label(const std::string& label,
                                 double duration = 1.0);

}  // namespace pneuarm
