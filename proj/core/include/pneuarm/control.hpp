#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "pneuarm/plant.hpp"

namespace pneuarm {

/// PD gains in PWM % per degree and PWM % per degree/second.
struct PDGains {
  double kp = 0.0;
  double kd = 0.0;

  void validate() const;  ///< requires kp >= 0 and kd >= 0
};

/// Hand-tuned gains used on the rig: shoulder (211, 15), elbow (213, 27).
PDGains tuned_shoulder_gains();
PDGains tuned_elbow_gains();

/// Default derivative-filter time constant [s].
inline constexpr double kDefaultTauD = 0.05;

/// Per-joint controller memory. The derivative estimate stays zero until two
/// error samples exist.
struct PDState {
  double prev_error = 0.0;           ///< [deg]
  double filtered_derivative = 0.0;  ///< [deg/s]
  bool initialized = false;
};

struct ControlCommand {
  double pwm = 0.0;       ///< clamped to [0, 100]
  double raw_gain = 0.0;  ///< unclamped controller output
};

/// Tracking error in degrees: (theta_d - theta_m) * 180/pi.
double error(double theta_d_rad, double theta_m_rad);

/// One PD update: raw = kp*e + kd*d, where d is a backward-difference
/// derivative smoothed by a first-order low-pass with time constant tau_d.
/// Throws NonPositiveStep for dt <= 0.
std::pair<ControlCommand, PDState> pd_step(const PDGains& gains,
                                           const PDState& state, double e_deg,
                                           double dt,
                                           double tau_d = kDefaultTauD);

/// Poles of the discrete loop: ZOH plant, PD law with filtered derivative,
/// unit feedback, all in degrees, saturation ignored. With kd = 0 the filter
/// state drops out and the poles are the eigenvalues of Ad - Bd kp C.
std::vector<std::complex<double>> closed_loop_poles(
    const PDGains& gains, const SecondOrderModel& model, double dt,
    double tau_d = kDefaultTauD);

}  // namespace pneuarm
