#include "pneuarm/kinematics.hpp"

#include <cmath>

namespace pneuarm {

void ArmGeometry::validate() const {
  if (!(d_se > 0.0) || !(d_ew > 0.0)) {
    throw std::invalid_argument("link lengths must be positive");
  }
  if (theta_s_min > theta_s_max || theta_e_min > theta_e_max) {
    throw std::invalid_argument("joint limit interval is empty");
  }
}

bool SubmatrixDeterminants::all_vanish(double tol) const {
  return std::abs(det_j1) < tol && std::abs(det_j2) < tol &&
         std::abs(det_j3) < tol;
}

bool within_limits(const ArmGeometry& geom, const JointAngles& q) {
  return q.theta_s >= geom.theta_s_min && q.theta_s <= geom.theta_s_max &&
         q.theta_e >= geom.theta_e_min && q.theta_e <= geom.theta_e_max;
}

Eigen::Matrix4d homogeneous_transform(const ArmGeometry& geom,
                                      const JointAngles& q) {
  const double cs = std::cos(q.theta_s), ss = std::sin(q.theta_s);
  const double ce = std::cos(q.theta_e), se = std::sin(q.theta_e);
  const double reach = geom.d_se + geom.d_ew * ce;

  Eigen::Matrix4d t;
  t << cs * ce, -cs * se,  ss, cs * reach,
       ss * ce, -ss * se, -cs, ss * reach,
       se,       ce,       0.0, geom.d_ew * se,
       0.0,      0.0,      0.0, 1.0;
  return t;
}

CartesianPoint forward_kinematics(const ArmGeometry& geom,
                                  const JointAngles& q) {
  const double ce = std::cos(q.theta_e);
  const double reach = geom.d_se + geom.d_ew * ce;
  return {std::cos(q.theta_s) * reach, std::sin(q.theta_s) * reach,
          geom.d_ew * std::sin(q.theta_e)};
}

JointAngles inverse_kinematics(const ArmGeometry& geom,
                               const CartesianPoint& p, double pos_tol) {
  const double rho = std::hypot(p.x, p.y);
  if (p.x == 0.0 && p.y == 0.0 && p.z == 0.0) {
    throw DegenerateAtanError("shoulder angle undefined at the origin");
  }
  if (p.z == 0.0 && rho - geom.d_se == 0.0) {
    throw DegenerateAtanError("elbow angle undefined: both atan2 arguments vanish");
  }

  JointAngles q;
  q.theta_s = std::atan2(p.y, p.x);
  q.theta_e = std::atan2(p.z, rho - geom.d_se);

  if (!within_limits(geom, q)) {
    throw UnreachableError("no joint-limit-respecting solution");
  }
  const CartesianPoint back = forward_kinematics(geom, q);
  const double err = std::sqrt((back.x - p.x) * (back.x - p.x) +
                               (back.y - p.y) * (back.y - p.y) +
                               (back.z - p.z) * (back.z - p.z));
  if (err > pos_tol) {
    throw UnreachableError("point does not round-trip through the arm");
  }
  return q;
}

PositionJacobian position_jacobian(const ArmGeometry& geom,
                                   const JointAngles& q) {
  const double cs = std::cos(q.theta_s), ss = std::sin(q.theta_s);
  const double ce = std::cos(q.theta_e), se = std::sin(q.theta_e);
  const double reach = geom.d_se + geom.d_ew * ce;

  PositionJacobian j;
  j << -ss * reach, -geom.d_ew * cs * se,
        cs * reach, -geom.d_ew * ss * se,
        0.0,         geom.d_ew * ce;
  return j;
}

SubmatrixDeterminants submatrix_determinants(const ArmGeometry& geom,
                                             const JointAngles& q) {
  const PositionJacobian j = position_jacobian(geom, q);
  SubmatrixDeterminants d;
  d.det_j1 = j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0);
  d.det_j2 = j(0, 0) * j(2, 1) - j(0, 1) * j(2, 0);
  d.det_j3 = j(1, 0) * j(2, 1) - j(1, 1) * j(2, 0);
  return d;
}

double end_effector_speed(const ArmGeometry& geom, const JointAngles& q,
                          const JointRates& qdot) {
  const PositionJacobian j = position_jacobian(geom, q);
  const Eigen::Vector2d rates(qdot.theta_s_dot, qdot.theta_e_dot);
  return (j * rates).norm();
}

bool is_reachable(const ArmGeometry& geom, const CartesianPoint& p,
                  double pos_tol) {
  try {
    inverse_kinematics(geom, p, pos_tol);
    return true;
  } catch (const KinematicsError&) {
    return false;
  }
}

std::vector<CartesianPoint> sample_workspace(const ArmGeometry& geom,
                                             int n_per_axis) {
  if (n_per_axis < 2) {
    throw std::invalid_argument("need at least 2 samples per axis");
  }
  std::vector<CartesianPoint> cloud;
  cloud.reserve(static_cast<size_t>(n_per_axis) * n_per_axis);
  for (int i = 0; i < n_per_axis; ++i) {
    const double ts = geom.theta_s_min + (geom.theta_s_max - geom.theta_s_min) *
                                             i / (n_per_axis - 1);
    for (int k = 0; k < n_per_axis; ++k) {
      const double te = geom.theta_e_min +
                        (geom.theta_e_max - geom.theta_e_min) * k /
                            (n_per_axis - 1);
      cloud.push_back(forward_kinematics(geom, {ts, te}));
    }
  }
  return cloud;
}

}  // namespace pneuarm
