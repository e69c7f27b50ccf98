#include "pneuarm/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pneuarm {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::kBicepsOnly: return "BO";
    case Mode::kDeltoidOnly: return "DO";
    case Mode::kCombined: return "CM";
  }
  return "CM";
}

Mode mode_from_string(const std::string& s) {
  if (s == "BO") return Mode::kBicepsOnly;
  if (s == "DO") return Mode::kDeltoidOnly;
  if (s == "CM") return Mode::kCombined;
  throw TrajectorySpecError("unknown actuation mode: " + s);
}

double QuinticSegment::target() const {
  double t = 0.0, p = 1.0;
  for (double c : coeff) {
    t += c * p;
    p *= duration;
  }
  return t;
}

void TrajectorySpec::validate(const ArmGeometry& geom) const {
  geom.validate();
  if (!within_limits(geom, start)) {
    throw TrajectorySpecError("start configuration outside joint limits");
  }
  if (!within_limits(geom, target)) {
    throw TrajectorySpecError("target configuration outside joint limits");
  }
  if (!(duration > 0.0)) {
    throw NonPositiveDurationError("trajectory duration must be positive");
  }
  const bool moves_s = start.theta_s != target.theta_s;
  const bool moves_e = start.theta_e != target.theta_e;
  if (!moves_s && !moves_e) {
    return;  // a hold is consistent with any mode
  }
  Mode required = Mode::kCombined;
  if (moves_e && !moves_s) required = Mode::kBicepsOnly;
  if (moves_s && !moves_e) required = Mode::kDeltoidOnly;
  if (mode != required) {
    throw TrajectorySpecError("mode " + to_string(mode) +
                              " inconsistent with moving joints (expected " +
                              to_string(required) + ")");
  }
}

QuinticSegment solve_quintic(double start, double target, double duration,
                             Joint joint) {
  if (!(duration > 0.0)) {
    throw NonPositiveDurationError("quintic duration must be positive");
  }
  const double d = target - start;
  const double t3 = duration * duration * duration;
  QuinticSegment seg;
  seg.joint = joint;
  seg.duration = duration;
  seg.coeff = {start,
               0.0,
               0.0,
               10.0 * d / t3,
               -15.0 * d / (t3 * duration),
               6.0 * d / (t3 * duration * duration)};
  return seg;
}

SegmentSample eval(const QuinticSegment& seg, double t) {
  const bool held = t >= seg.duration;
  t = std::clamp(t, 0.0, seg.duration);
  const auto& c = seg.coeff;
  SegmentSample s;
  s.position = c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * (c[4] + t * c[5]))));
  if (held) {
    return s;  // terminal rest state: velocity and acceleration are zero
  }
  s.velocity =
      c[1] + t * (2.0 * c[2] + t * (3.0 * c[3] + t * (4.0 * c[4] + t * 5.0 * c[5])));
  s.acceleration =
      2.0 * c[2] + t * (6.0 * c[3] + t * (12.0 * c[4] + t * 20.0 * c[5]));
  return s;
}

double sampled_peak_speed(const ArmGeometry& geom, const JointTrajectory& traj,
                          double dt) {
  if (!(dt > 0.0)) {
    throw NonPositiveDurationError("sampling step must be positive");
  }
  double peak = 0.0;
  const long n = static_cast<long>(std::ceil(traj.duration / dt));
  for (long k = 0; k <= n; ++k) {
    const double t = std::min(k * dt, traj.duration);
    const SegmentSample s = eval(traj.shoulder, t);
    const SegmentSample e = eval(traj.elbow, t);
    const double v = end_effector_speed(geom, {s.position, e.position},
                                        {s.velocity, e.velocity});
    peak = std::max(peak, v);
  }
  return peak;
}

JointTrajectory plan(const ArmGeometry& geom, const TrajectorySpec& spec,
                     const ReachingLimits& limits) {
  spec.validate(geom);
  double duration = spec.duration;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    JointTrajectory traj;
    traj.duration = duration;
    traj.shoulder = solve_quintic(spec.start.theta_s, spec.target.theta_s,
                                  duration, Joint::kShoulder);
    traj.elbow = solve_quintic(spec.start.theta_e, spec.target.theta_e,
                               duration, Joint::kElbow);
    if (sampled_peak_speed(geom, traj) <= limits.peak_speed) {
      return traj;
    }
    duration *= 1.1;
  }
  throw TrajectorySpecError("could not satisfy the peak-speed cap");
}

std::vector<TrajectorySpec> reference_setpoints(double duration) {
  const double h = std::numbers::pi / 2.0, q = std::numbers::pi / 4.0;
  const JointAngles start{h, 0.0};
  const struct {
    const char* label;
    double ts, te;
    Mode mode;
  } rows[] = {
      {"P1", h, q, Mode::kBicepsOnly},  {"P2", h, h, Mode::kBicepsOnly},
      {"P3", q, 0.0, Mode::kDeltoidOnly}, {"P4", q, q, Mode::kCombined},
      {"P5", q, h, Mode::kCombined},    {"P6", 0.0, 0.0, Mode::kDeltoidOnly},
      {"P7", 0.0, q, Mode::kCombined},  {"P8", 0.0, h, Mode::kCombined},
  };
  std::vector<TrajectorySpec> specs;
  specs.reserve(8);
  for (const auto& r : rows) {
    TrajectorySpec s;
    s.start = start;
    s.target = {r.ts, r.te};
    s.duration = duration;
    s.mode = r.mode;
    s.label = r.label;
    specs.push_back(s);
  }
  return specs;
}

TrajectorySpec setpoint_by_label(const std::string& label, double duration) {
  for (const auto& s : reference_setpoints(duration)) {
    if (s.label == label) return s;
  }
  throw TrajectorySpecError("unknown setpoint label: " + label);
}

}  // namespace pneuarm
