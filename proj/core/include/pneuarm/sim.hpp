#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pneuarm/control.hpp"
#include "pneuarm/kinematics.hpp"
#include "pneuarm/plant.hpp"
#include "pneuarm/sensing.hpp"
#include "pneuarm/trajectory.hpp"

namespace pneuarm {

/// Everything one closed-loop run depends on. Defaults reproduce the
/// identified device: fitted plant models and tuned gains, 50 Hz, 10 s window,
/// noise-free sensing.
struct Scenario {
  ArmGeometry geometry;
  PDGains gains_shoulder = tuned_shoulder_gains();
  PDGains gains_elbow = tuned_elbow_gains();
  SecondOrderModel model_shoulder = identified_models().first;
  SecondOrderModel model_elbow = identified_models().second;
  double shoulder_rest = 1.5707963267948966;  ///< [rad]
  double shoulder_sign = -1.0;  ///< inflation abducts toward theta_s = 0
  double elbow_rest = 0.0;
  double elbow_sign = 1.0;
  NoiseModel noise{0.0, 0.0, 0};
  TrajectorySpec spec = setpoint_by_label("P1");
  ReachingLimits limits;
  double rate_hz = 50.0;
  double total_time = 10.0;  ///< [s]
  double tau_d = kDefaultTauD;

  void validate() const;
};

struct SimRow {
  double t;
  double theta_s_des, theta_e_des;
  double theta_s_true, theta_e_true;
  double theta_s_meas, theta_e_meas;
  double pwm_s, pwm_e;
  double x, y, z;
  double x_des, y_des, z_des;
};

struct SimLog {
  std::vector<SimRow> rows;
  std::vector<int> gimbal_ticks;  ///< ticks where a reading was held over
  /// Raw (unclamped) controller outputs per tick, for saturation accounting.
  std::vector<double> raw_s, raw_e;
};

struct JointMetrics {
  double rmse = 0.0;                  ///< [rad], against the desired curve
  double steady_state_error = 0.0;    ///< [rad], mean |true-desired|, last 10%
  double settling_time = 0.0;         ///< [s] to stay within 2 deg of target
  double saturation_fraction = 0.0;   ///< ticks with raw gain above 100
  double ss_saturation_fraction = 0.0;  ///< same, over the last 10% only
  bool saturation_limited = false;  ///< pinned at 100% yet missing by >= 2 deg
};

struct Metrics {
  JointMetrics shoulder, elbow;
  double terminal_wrist_error = 0.0;  ///< [m], final true vs target position
};

struct SuiteRow {
  std::string label;
  Mode mode = Mode::kCombined;
  double duration = 0.0;  ///< planned trajectory duration [s]
  Metrics metrics;        ///< mean over repetitions
};

/// Settling threshold used by the metrics [deg].
inline constexpr double kSettlingBandDeg = 2.0;

/// Closed-loop run: quintic reference, IMU synthesis/extraction, per-joint
/// PD in actuator displacement degrees, exact-hold plant steps, full logging.
/// Row count is rate * total_time + 1. Deterministic given the noise seed.
std::pair<SimLog, Metrics> run(const Scenario& scn);

Metrics compute_metrics(const Scenario& scn, const SimLog& log);

/// Runs every canonical setpoint `repetitions` times with consecutive noise
/// seeds and averages the metrics per setpoint.
std::vector<SuiteRow> run_setpoint_suite(const Scenario& base,
                                       int repetitions = 8);

/// SimLog CSV column set, fixed.
extern const char* const kLogHeader;

std::string log_to_csv(const SimLog& log);
void write_log_csv(const SimLog& log, const std::string& path);
void write_metrics_csv(const Metrics& m, const std::string& path);
void write_summary_csv(const std::vector<SuiteRow>& rows,
                       const std::string& path);

/// Standalone SVG panels (angles, pwm, error, wrist path projections),
/// byte-deterministic for a fixed log. Returns the written file paths.
std::vector<std::string> emit_plots(const SimLog& log,
                                    const std::string& directory);

/// Applies `plant.*` and `control.*` keys onto a scenario. Unknown keys with
/// these prefixes are rejected.
void apply_config(Scenario& scn,
                  const std::map<std::string, std::string>& cfg);

}  // namespace pneuarm
