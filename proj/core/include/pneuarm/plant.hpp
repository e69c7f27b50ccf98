#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace pneuarm {

struct NonPositiveStepError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Continuous second-order actuator model G(s) = b / (s^2 + a1 s + a0),
/// input PWM % in [0, 100], output angular displacement in degrees from the
/// deflated rest configuration.
struct SecondOrderModel {
  double b = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;

  double dc_gain() const { return b / a0; }
  double natural_frequency() const;  ///< [rad/s]
  double damping_ratio() const;

  void validate() const;  ///< requires b > 0 and a0 > 0
};

/// Displacement/rate state of one actuator, in degrees and degrees/s.
struct ActuatorState {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// Exact zero-order-hold discretization of a SecondOrderModel, plus the
/// mapping from displacement to joint angle.
struct DiscretePlant {
  Eigen::Matrix2d ad = Eigen::Matrix2d::Identity();
  Eigen::Vector2d bd = Eigen::Vector2d::Zero();
  double dt = 0.0;           ///< step [s]
  double rest_angle = 0.0;   ///< joint angle at zero displacement [rad]
  double sign = 1.0;         ///< +1 if inflation increases the joint angle
  SecondOrderModel model;    ///< the continuous model this was built from
};

inline constexpr double kPwmMin = 0.0;
inline constexpr double kPwmMax = 100.0;

double clamp_pwm(double pwm);

/// The two identified actuator models: shoulder (52.62, 15.57, 101.10) and
/// elbow (16.11, 0.271, 36.88).
std::pair<SecondOrderModel, SecondOrderModel> identified_models();

/// Shoulder convention: rest at theta_s = pi/2, inflation abducts toward 0.
DiscretePlant default_shoulder_plant(double dt);
/// Elbow convention: rest at theta_e = 0, inflation flexes toward pi/2.
DiscretePlant default_elbow_plant(double dt);

/// Exact hold-equivalent discretization via the augmented matrix exponential.
/// Throws NonPositiveStep for dt <= 0.
DiscretePlant discretize(const SecondOrderModel& model, double dt,
                         double rest_angle = 0.0, double sign = 1.0);

/// Advances one step under the given (internally clamped) PWM command.
ActuatorState step(const DiscretePlant& plant, const ActuatorState& state,
                   double pwm);

/// rest_angle + sign * x1 * pi/180.
double joint_angle(const DiscretePlant& plant, const ActuatorState& state);

/// Inverse of joint_angle for the displacement component: sign * (angle -
/// rest) * 180/pi, in degrees.
double displacement_deg(const DiscretePlant& plant, double angle_rad);

/// Displacement of the discrete steady state under a constant clamped PWM:
/// the first component of (I - Ad)^-1 Bd u, in degrees.
double steady_state_displacement(const DiscretePlant& plant, double pwm);

/// Displacement samples of a constant-PWM step response from rest: n samples
/// at t = 0, dt, ..., (n-1) dt, each recorded before the hold interval that
/// follows it.
std::vector<double> step_response(const SecondOrderModel& model, double dt,
                                  double pwm, int n_samples);

}  // namespace pneuarm
