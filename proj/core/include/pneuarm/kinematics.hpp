#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace pneuarm {

/// Link lengths and joint limits of the 2-DOF (shoulder/elbow) arm.
/// Defaults match a 7-month-old infant arm: 70 mm per link, both joints
/// confined to [0, pi/2].
struct ArmGeometry {
  double d_se = 0.070;  ///< upper-arm length, shoulder to elbow [m]
  double d_ew = 0.070;  ///< forearm length, elbow to wrist [m]
  double theta_s_min = 0.0;
  double theta_s_max = M_PI / 2.0;
  double theta_e_min = 0.0;
  double theta_e_max = M_PI / 2.0;

  void validate() const;
};

struct JointAngles {
  double theta_s = 0.0;  ///< shoulder angle [rad]
  double theta_e = 0.0;  ///< elbow angle [rad]
};

struct CartesianPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct JointRates {
  double theta_s_dot = 0.0;  ///< [rad/s]
  double theta_e_dot = 0.0;  ///< [rad/s]
};

/// 3x2 partial derivatives of the wrist position w.r.t. (theta_s, theta_e).
using PositionJacobian = Eigen::Matrix<double, 3, 2>;

struct KinematicsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested point has no joint-limit-respecting solution that forward-maps
/// back onto it.
struct UnreachableError : KinematicsError {
  using KinematicsError::KinematicsError;
};

/// Both arguments of one of the inverse-kinematics arctangents vanish, so the
/// corresponding joint angle is undefined.
struct DegenerateAtanError : KinematicsError {
  using KinematicsError::KinematicsError;
};

/// Determinants of the three 2x2 minors of the position Jacobian, obtained by
/// deleting the z, y and x rows respectively.
struct SubmatrixDeterminants {
  double det_j1 = 0.0;  ///< rows (x, y)
  double det_j2 = 0.0;  ///< rows (x, z)
  double det_j3 = 0.0;  ///< rows (y, z)

  /// Rank-deficiency test: the 3x2 Jacobian drops below rank 2 exactly when
  /// every 2x2 minor vanishes.
  bool all_vanish(double tol = 1e-9) const;
};

/// Joint-limit membership with closed intervals. Angles are taken as stored,
/// without wrapping; the workspace never leaves [0, pi/2] so wrapping would
/// only mask errors.
bool within_limits(const ArmGeometry& geom, const JointAngles& q);

/// Full 4x4 homogeneous transform from the shoulder-anchored inertial frame
/// to the wrist frame (two-link DH chain, alpha = pi/2 then 0).
Eigen::Matrix4d homogeneous_transform(const ArmGeometry& geom,
                                      const JointAngles& q);

/// Wrist position: the translation column of the homogeneous transform.
CartesianPoint forward_kinematics(const ArmGeometry& geom,
                                  const JointAngles& q);

/// Default position tolerance for inverse-kinematics validation and
/// reachability queries [m]. Loose enough to admit workspace points quoted to
/// four decimals (up to ~7e-6 m off the exact reachable surface), tight
/// enough to reject anything genuinely outside the workspace.
inline constexpr double kDefaultPositionTolerance = 5e-5;

/// Closed-form inverse kinematics via two-argument arctangents. The chain has
/// a unique solution (no elbow-up/down branch); validity is established by a
/// forward round trip within `pos_tol` meters plus a joint-limit check.
/// Throws UnreachableError or DegenerateAtanError.
JointAngles inverse_kinematics(const ArmGeometry& geom,
                               const CartesianPoint& p,
                               double pos_tol = kDefaultPositionTolerance);

PositionJacobian position_jacobian(const ArmGeometry& geom,
                                   const JointAngles& q);

SubmatrixDeterminants submatrix_determinants(const ArmGeometry& geom,
                                             const JointAngles& q);

/// Euclidean wrist speed for the given joint rates [m/s].
double end_effector_speed(const ArmGeometry& geom, const JointAngles& q,
                          const JointRates& qdot);

/// True iff inverse kinematics succeeds with limit-respecting angles.
bool is_reachable(const ArmGeometry& geom, const CartesianPoint& p,
                  double pos_tol = kDefaultPositionTolerance);

/// Wrist positions over an n x n uniform grid of the joint-limit box.
/// Requires n_per_axis >= 2.
std::vector<CartesianPoint> sample_workspace(const ArmGeometry& geom,
                                             int n_per_axis);

}  // namespace pneuarm
