#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "pneuarm/kinematics.hpp"

namespace pneuarm {

/// Both arctangent arguments of an angle extraction are below 1e-12, so the
/// reading carries no usable heading information.
struct GimbalDegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unit quaternion; renormalized on construction.
struct Quaternion {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  Quaternion() = default;
  Quaternion(double w_, double x_, double y_, double z_);
  explicit Quaternion(const Eigen::Quaterniond& q);

  Eigen::Quaterniond eigen() const { return {w, x, y, z}; }
  double norm() const;
};

/// One synchronous sample of the two segment-mounted IMUs.
struct ImuReading {
  Quaternion q_upper;  ///< upper-arm segment orientation
  Quaternion q_fore;   ///< forearm segment orientation
  double t = 0.0;      ///< [s]
};

/// Orientation perturbation model: each sensor's reading is rotated by a
/// random small rotation whose rotation vector has i.i.d. Gaussian components
/// with per-axis std sigma_deg; bias_deg adds a constant rotation angle.
struct NoiseModel {
  double sigma_deg = 0.5;
  double bias_deg = 0.0;
  std::uint64_t seed = 0;

  void validate() const;  ///< requires sigma_deg >= 0
};

/// Upper-arm segment orientation: rotation by theta_s about the base axis
/// composed with the pi/2 frame twist.
Eigen::Matrix3d upper_rotation(double theta_s);

/// Forearm segment orientation: the full chain rotation block.
Eigen::Matrix3d forearm_rotation(double theta_s, double theta_e);

/// Noise-free reading at the given configuration.
ImuReading ideal_reading(const JointAngles& q, double t = 0.0);

/// Draws one perturbation rotation from the noise model and applies it
/// (world frame) to the given orientation. Consumes exactly three normal
/// variates from the generator, even when sigma and bias are zero.
Quaternion perturb(const Quaternion& q, const NoiseModel& noise,
                   std::mt19937_64& rng);

/// Synthesizes a noisy reading, drawing upper-arm then forearm perturbations
/// from the given generator stream.
ImuReading synthesize(const JointAngles& q, const NoiseModel& noise,
                      std::mt19937_64& rng, double t = 0.0);

/// Recovers (theta_s, theta_e): theta_s from the upper-arm orientation's
/// rotation about the base axis, theta_e from the relative rotation
/// q_upper^-1 * q_fore. Throws GimbalDegenerate when an extraction
/// arctangent has both arguments below 1e-12.
JointAngles extract_angles(const ImuReading& r);

/// Owns the generator stream for one simulation sequence.
class ImuSimulator {
 public:
  explicit ImuSimulator(const NoiseModel& noise);

  ImuReading synthesize(const JointAngles& q, double t = 0.0);
  const NoiseModel& noise() const { return noise_; }

 private:
  NoiseModel noise_;
  std::mt19937_64 rng_;
};

}  // namespace pneuarm
