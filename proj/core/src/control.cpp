#include "pneuarm/control.hpp"

#include <numbers>

#include <Eigen/Eigenvalues>

namespace pneuarm {

void PDGains::validate() const {
  if (kp < 0.0 || kd < 0.0) {
    throw std::invalid_argument("PD gains must be non-negative");
  }
}

PDGains tuned_shoulder_gains() { return {211.0, 15.0}; }
PDGains tuned_elbow_gains() { return {213.0, 27.0}; }

double error(double theta_d_rad, double theta_m_rad) {
  return (theta_d_rad - theta_m_rad) * 180.0 / std::numbers::pi;
}

std::pair<ControlCommand, PDState> pd_step(const PDGains& gains,
                                           const PDState& state, double e_deg,
                                           double dt, double tau_d) {
  if (!(dt > 0.0)) {
    throw NonPositiveStepError("control step must be positive");
  }
  const double alpha = dt / (tau_d + dt);
  double derivative = 0.0;
  if (state.initialized) {
    derivative = (1.0 - alpha) * state.filtered_derivative +
                 alpha * (e_deg - state.prev_error) / dt;
  }
  ControlCommand cmd;
  cmd.raw_gain = gains.kp * e_deg + gains.kd * derivative;
  cmd.pwm = clamp_pwm(cmd.raw_gain);
  return {cmd, PDState{e_deg, derivative, true}};
}

std::vector<std::complex<double>> closed_loop_poles(const PDGains& gains,
                                                    const SecondOrderModel& model,
                                                    double dt, double tau_d) {
  if (!(dt > 0.0)) {
    throw NonPositiveStepError("control step must be positive");
  }
  const DiscretePlant plant = discretize(model, dt);
  const Eigen::RowVector2d c(1.0, 0.0);
  const double alpha = dt / (tau_d + dt);

  Eigen::MatrixXd m;
  if (gains.kd == 0.0) {
    m = plant.ad - plant.bd * gains.kp * c;
  } else {
    // states: plant x1, x2, filter output, previous error; zero reference
    m.setZero(4, 4);
    m.topLeftCorner<2, 2>() =
        plant.ad - plant.bd * (gains.kp + gains.kd * alpha / dt) * c;
    m.block<2, 1>(0, 2) = plant.bd * gains.kd * (1.0 - alpha);
    m.block<2, 1>(0, 3) = -plant.bd * gains.kd * alpha / dt;
    m.block<1, 2>(2, 0) = -(alpha / dt) * c;
    m(2, 2) = 1.0 - alpha;
    m(2, 3) = -alpha / dt;
    m.block<1, 2>(3, 0) = -c;
  }
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  std::vector<std::complex<double>> poles(solver.eigenvalues().size());
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    poles[i] = solver.eigenvalues()(i);
  }
  return poles;
}

}  // namespace pneuarm
