#include "pneuarm/plant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace pneuarm {

double SecondOrderModel::natural_frequency() const { return std::sqrt(a0); }

double SecondOrderModel::damping_ratio() const {
  return a1 / (2.0 * std::sqrt(a0));
}

void SecondOrderModel::validate() const {
  if (!(b > 0.0) || !(a0 > 0.0)) {
    throw std::invalid_argument("second-order model needs b > 0 and a0 > 0");
  }
}

double clamp_pwm(double pwm) { return std::clamp(pwm, kPwmMin, kPwmMax); }

std::pair<SecondOrderModel, SecondOrderModel> identified_models() {
  return {{52.62, 15.57, 101.10}, {16.11, 0.271, 36.88}};
}

DiscretePlant default_shoulder_plant(double dt) {
  return discretize(identified_models().first, dt, std::numbers::pi / 2.0, -1.0);
}

DiscretePlant default_elbow_plant(double dt) {
  return discretize(identified_models().second, dt, 0.0, 1.0);
}

DiscretePlant discretize(const SecondOrderModel& model, double dt,
                         double rest_angle, double sign) {
  if (!(dt > 0.0)) {
    throw NonPositiveStepError("discretization step must be positive");
  }
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 1) = 1.0;
  m(1, 0) = -model.a0;
  m(1, 1) = -model.a1;
  m(1, 2) = model.b;
  const Eigen::Matrix3d e = (m * dt).exp();

  DiscretePlant plant;
  plant.ad = e.topLeftCorner<2, 2>();
  plant.bd = e.topRightCorner<2, 1>();
  plant.dt = dt;
  plant.rest_angle = rest_angle;
  plant.sign = sign;
  plant.model = model;
  return plant;
}

ActuatorState step(const DiscretePlant& plant, const ActuatorState& state,
                   double pwm) {
  const Eigen::Vector2d x(state.x1, state.x2);
  const Eigen::Vector2d next = plant.ad * x + plant.bd * clamp_pwm(pwm);
  return {next(0), next(1)};
}

double joint_angle(const DiscretePlant& plant, const ActuatorState& state) {
  return plant.rest_angle + plant.sign * state.x1 * std::numbers::pi / 180.0;
}

double displacement_deg(const DiscretePlant& plant, double angle_rad) {
  return plant.sign * (angle_rad - plant.rest_angle) * 180.0 / std::numbers::pi;
}

double steady_state_displacement(const DiscretePlant& plant, double pwm) {
  const Eigen::Vector2d x =
      (Eigen::Matrix2d::Identity() - plant.ad).lu().solve(plant.bd *
                                                          clamp_pwm(pwm));
  return x(0);
}

std::vector<double> step_response(const SecondOrderModel& model, double dt,
                                  double pwm, int n_samples) {
  const DiscretePlant plant = discretize(model, dt);
  std::vector<double> out;
  out.reserve(std::max(n_samples, 0));
  ActuatorState state;
  for (int k = 0; k < n_samples; ++k) {
    out.push_back(state.x1);
    state = step(plant, state, pwm);
  }
  return out;
}

}  // namespace pneuarm
