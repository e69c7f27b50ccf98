#include "pneuarm/sensing.hpp"

#include <cmath>
#include <numbers>

namespace pneuarm {

namespace {
constexpr double kDegenerateTol = 1e-12;
constexpr double kDegToRad = std::numbers::pi / 180.0;
}  // namespace

Quaternion::Quaternion(double w_, double x_, double y_, double z_)
    : w(w_), x(x_), y(y_), z(z_) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("quaternion must be normalizable");
  }
  w /= n;
  x /= n;
  y /= n;
  z /= n;
}

Quaternion::Quaternion(const Eigen::Quaterniond& q)
    : Quaternion(q.w(), q.x(), q.y(), q.z()) {}

double Quaternion::norm() const {
  return std::sqrt(w * w + x * x + y * y + z * z);
}

void NoiseModel::validate() const {
  if (sigma_deg < 0.0) {
    throw std::invalid_argument("noise sigma must be non-negative");
  }
}

Eigen::Matrix3d upper_rotation(double theta_s) {
  return (Eigen::AngleAxisd(theta_s, Eigen::Vector3d::UnitZ()) *
          Eigen::AngleAxisd(std::numbers::pi / 2.0, Eigen::Vector3d::UnitX()))
      .toRotationMatrix();
}

Eigen::Matrix3d forearm_rotation(double theta_s, double theta_e) {
  return upper_rotation(theta_s) *
         Eigen::AngleAxisd(theta_e, Eigen::Vector3d::UnitZ())
             .toRotationMatrix();
}

ImuReading ideal_reading(const JointAngles& q, double t) {
  ImuReading r;
  r.q_upper = Quaternion(Eigen::Quaterniond(upper_rotation(q.theta_s)));
  r.q_fore =
      Quaternion(Eigen::Quaterniond(forearm_rotation(q.theta_s, q.theta_e)));
  r.t = t;
  return r;
}

Quaternion perturb(const Quaternion& q, const NoiseModel& noise,
                   std::mt19937_64& rng) {
  std::normal_distribution<double> unit_normal(0.0, 1.0);
  Eigen::Vector3d axis;
  axis << unit_normal(rng), unit_normal(rng), unit_normal(rng);
  const double angle = noise.sigma_deg * kDegToRad * axis.norm() +
                       noise.bias_deg * kDegToRad;
  if (std::abs(angle) < 1e-300 || axis.norm() < 1e-300) {
    return q;
  }
  const Eigen::Quaterniond dq(Eigen::AngleAxisd(angle, axis.normalized()));
  return Quaternion(dq * q.eigen());
}

ImuReading synthesize(const JointAngles& q, const NoiseModel& noise,
                      std::mt19937_64& rng, double t) {
  noise.validate();
  ImuReading r = ideal_reading(q, t);
  r.q_upper = perturb(r.q_upper, noise, rng);
  r.q_fore = perturb(r.q_fore, noise, rng);
  return r;
}

namespace {
double heading(const Eigen::Matrix3d& rot, const char* what) {
  if (std::abs(rot(1, 0)) < kDegenerateTol &&
      std::abs(rot(0, 0)) < kDegenerateTol) {
    throw GimbalDegenerateError(what);
  }
  return std::atan2(rot(1, 0), rot(0, 0));
}
}  // namespace

JointAngles extract_angles(const ImuReading& r) {
  const Eigen::Matrix3d up = r.q_upper.eigen().toRotationMatrix();
  const Eigen::Matrix3d rel =
      up.transpose() * r.q_fore.eigen().toRotationMatrix();
  JointAngles q;
  q.theta_s = heading(up, "shoulder extraction degenerate");
  q.theta_e = heading(rel, "elbow extraction degenerate");
  return q;
}

ImuSimulator::ImuSimulator(const NoiseModel& noise)
    : noise_(noise), rng_(noise.seed) {
  noise_.validate();
}

ImuReading ImuSimulator::synthesize(const JointAngles& q, double t) {
  return pneuarm::synthesize(q, noise_, rng_, t);
}

}  // namespace pneuarm
