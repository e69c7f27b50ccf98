#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pneuarm/kinematics.hpp"

using namespace pneuarm;

namespace {

constexpr double kPi = std::numbers::pi;

struct CatalogRow {
  double theta_s, theta_e;
  double x, y, z;
};

// Wrist positions quoted to four decimals for the eight reference targets
// plus the shared start configuration.
const CatalogRow kCatalog[] = {
    {kPi / 2, 0.0, 0.0, 0.1400, 0.0},
    {kPi / 2, kPi / 4, 0.0, 0.1195, 0.0495},
    {kPi / 2, kPi / 2, 0.0, 0.0700, 0.0700},
    {kPi / 4, 0.0, 0.0990, 0.0990, 0.0},
    {kPi / 4, kPi / 4, 0.0845, 0.0845, 0.0495},
    {kPi / 4, kPi / 2, 0.0495, 0.0495, 0.0700},
    {0.0, 0.0, 0.1400, 0.0, 0.0},
    {0.0, kPi / 4, 0.1195, 0.0, 0.0495},
    {0.0, kPi / 2, 0.0700, 0.0, 0.0700},
};

}  // namespace

TEST_SUITE("kinematics") {

TEST_CASE("forward kinematics reproduces the catalog positions") {
  const ArmGeometry geom;
  for (const CatalogRow& row : kCatalog) {
    const CartesianPoint p = forward_kinematics(geom, {row.theta_s, row.theta_e});
    CHECK(std::abs(p.x - row.x) < 5e-5);
    CHECK(std::abs(p.y - row.y) < 5e-5);
    CHECK(std::abs(p.z - row.z) < 5e-5);
  }
}

TEST_CASE("homogeneous transform carries the chain rotation") {
  const ArmGeometry geom;
  const double ts = 0.3, te = 0.8;
  const Eigen::Matrix4d T = homogeneous_transform(geom, {ts, te});

  Eigen::Matrix3d want;
  want = Eigen::AngleAxisd(ts, Eigen::Vector3d::UnitZ()) *
         Eigen::AngleAxisd(kPi / 2, Eigen::Vector3d::UnitX()) *
         Eigen::AngleAxisd(te, Eigen::Vector3d::UnitZ());
  CHECK((T.topLeftCorner<3, 3>() - want).cwiseAbs().maxCoeff() < 1e-14);

  const CartesianPoint p = forward_kinematics(geom, {ts, te});
  CHECK(T(0, 3) == doctest::Approx(p.x).epsilon(1e-14));
  CHECK(T(1, 3) == doctest::Approx(p.y).epsilon(1e-14));
  CHECK(T(2, 3) == doctest::Approx(p.z).epsilon(1e-14));
  CHECK((T.row(3) - Eigen::RowVector4d(0, 0, 0, 1)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("inverse kinematics round trips random configurations") {
  const ArmGeometry geom;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, kPi / 2);
  for (int i = 0; i < 2000; ++i) {
    const JointAngles q{u(rng), u(rng)};
    const JointAngles back = inverse_kinematics(geom, forward_kinematics(geom, q));
    CHECK(std::abs(back.theta_s - q.theta_s) < 1e-9);
    CHECK(std::abs(back.theta_e - q.theta_e) < 1e-9);
  }
}

TEST_CASE("inverse kinematics of catalog points matches the joint targets") {
  const ArmGeometry geom;
  for (const CatalogRow& row : kCatalog) {
    CHECK(is_reachable(geom, {row.x, row.y, row.z}));
    const JointAngles q = inverse_kinematics(geom, {row.x, row.y, row.z});
    CHECK(std::abs(q.theta_s - row.theta_s) < 1e-3);
    CHECK(std::abs(q.theta_e - row.theta_e) < 1e-3);
  }
}

TEST_CASE("degenerate arctangent inputs are rejected") {
  const ArmGeometry geom;
  CHECK_THROWS_AS(inverse_kinematics(geom, {0.0, 0.0, 0.0}), DegenerateAtanError);
  CHECK_THROWS_AS(inverse_kinematics(geom, {0.07, 0.0, 0.0}), DegenerateAtanError);
  CHECK_THROWS_AS(inverse_kinematics(geom, {0.0, 0.07, 0.0}), DegenerateAtanError);
}

TEST_CASE("unreachable points are rejected") {
  const ArmGeometry geom;
  CHECK_THROWS_AS(inverse_kinematics(geom, {0.2, 0.0, 0.0}), UnreachableError);
  CHECK_THROWS_AS(inverse_kinematics(geom, {0.1, 0.1, 0.1}), UnreachableError);
  CHECK_THROWS_AS(inverse_kinematics(geom, {-0.1, 0.0, 0.05}), UnreachableError);
  CHECK_THROWS_AS(inverse_kinematics(geom, {0.0, 0.0, 0.07}), UnreachableError);
  CHECK_THROWS_AS(inverse_kinematics(geom, {0.0705, 0.0, 0.0708}), UnreachableError);
  CHECK_FALSE(is_reachable(geom, {0.2, 0.0, 0.0}));
  CHECK_FALSE(is_reachable(geom, {0.1, 0.1, 0.1}));
}

TEST_CASE("limit checks use closed intervals") {
  const ArmGeometry geom;
  CHECK(within_limits(geom, {0.0, 0.0}));
  CHECK(within_limits(geom, {kPi / 2, kPi / 2}));
  CHECK_FALSE(within_limits(geom, {-1e-9, 0.0}));
  CHECK_FALSE(within_limits(geom, {0.0, kPi / 2 + 1e-9}));
}

TEST_CASE("geometry validation rejects bad links and limits") {
  ArmGeometry geom;
  geom.d_se = -0.01;
  CHECK_THROWS_AS(geom.validate(), std::invalid_argument);
  geom = ArmGeometry{};
  geom.theta_s_min = 1.0;
  geom.theta_s_max = 0.0;
  CHECK_THROWS_AS(geom.validate(), std::invalid_argument);
}

TEST_CASE("analytic Jacobian matches central differences") {
  const ArmGeometry geom;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, kPi / 2);
  const double h = 1e-6;
  for (int i = 0; i < 200; ++i) {
    const JointAngles q{u(rng), u(rng)};
    const PositionJacobian jac = position_jacobian(geom, q);
    for (int col = 0; col < 2; ++col) {
      JointAngles plus = q, minus = q;
      (col == 0 ? plus.theta_s : plus.theta_e) += h;
      (col == 0 ? minus.theta_s : minus.theta_e) -= h;
      const CartesianPoint pp = forward_kinematics(geom, plus);
      const CartesianPoint pm = forward_kinematics(geom, minus);
      CHECK(std::abs(jac(0, col) - (pp.x - pm.x) / (2 * h)) < 1e-7);
      CHECK(std::abs(jac(1, col) - (pp.y - pm.y) / (2 * h)) < 1e-7);
      CHECK(std::abs(jac(2, col) - (pp.z - pm.z) / (2 * h)) < 1e-7);
    }
  }
}

TEST_CASE("sub-determinants follow the closed forms") {
  const ArmGeometry geom;
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, kPi / 2);
  for (int i = 0; i < 500; ++i) {
    const JointAngles q{u(rng), u(rng)};
    const SubmatrixDeterminants d = submatrix_determinants(geom, q);
    const double r = geom.d_se + geom.d_ew * std::cos(q.theta_e);
    CHECK(std::abs(d.det_j1 - geom.d_ew * std::sin(q.theta_e) * r) < 1e-15);

    const PositionJacobian jac = position_jacobian(geom, q);
    const double gram = (jac.transpose() * jac).determinant();
    const double sum_sq =
        d.det_j1 * d.det_j1 + d.det_j2 * d.det_j2 + d.det_j3 * d.det_j3;
    CHECK(std::abs(gram - sum_sq) < 1e-15);
  }
}

TEST_CASE("corner configurations drop exactly two sub-determinants") {
  const ArmGeometry geom;
  const JointAngles corners[] = {
      {0.0, 0.0}, {kPi / 2, 0.0}, {0.0, kPi / 2}, {kPi / 2, kPi / 2}};
  for (const JointAngles& q : corners) {
    const SubmatrixDeterminants d = submatrix_determinants(geom, q);
    int vanished = 0;
    double largest = 0.0;
    for (double v : {d.det_j1, d.det_j2, d.det_j3}) {
      if (std::abs(v) < 1e-12) ++vanished;
      largest = std::max(largest, std::abs(v));
    }
    CHECK(vanished == 2);
    const double r = geom.d_se + geom.d_ew * std::cos(q.theta_e);
    CHECK(largest == doctest::Approx(geom.d_ew * r).epsilon(1e-12));
    CHECK_FALSE(d.all_vanish());
  }
}

TEST_CASE("the limit box contains no rank-deficient configuration") {
  const ArmGeometry geom;
  int all_vanish_count = 0;
  int pair_vanish_count = 0;
  const int n = 91;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const JointAngles q{kPi / 2 * i / (n - 1), kPi / 2 * j / (n - 1)};
      const SubmatrixDeterminants d = submatrix_determinants(geom, q);
      int below = 0;
      for (double v : {d.det_j1, d.det_j2, d.det_j3}) {
        if (std::abs(v) < 1e-9) ++below;
      }
      if (below == 3) ++all_vanish_count;
      if (below >= 2) ++pair_vanish_count;
    }
  }
  CHECK(all_vanish_count == 0);
  CHECK(pair_vanish_count == 93);
}

TEST_CASE("end-effector speed matches differentiated forward kinematics") {
  const ArmGeometry geom;
  const JointAngles q{0.7, 0.9};
  const JointRates qd{0.4, -1.1};
  const double h = 1e-7;
  const CartesianPoint pp = forward_kinematics(
      geom, {q.theta_s + h * qd.theta_s_dot, q.theta_e + h * qd.theta_e_dot});
  const CartesianPoint pm = forward_kinematics(
      geom, {q.theta_s - h * qd.theta_s_dot, q.theta_e - h * qd.theta_e_dot});
  const double vx = (pp.x - pm.x) / (2 * h);
  const double vy = (pp.y - pm.y) / (2 * h);
  const double vz = (pp.z - pm.z) / (2 * h);
  const double want = std::sqrt(vx * vx + vy * vy + vz * vz);
  CHECK(end_effector_speed(geom, q, qd) == doctest::Approx(want).epsilon(1e-7));
}

TEST_CASE("workspace samples stay inside the reach sphere") {
  const ArmGeometry geom;
  const auto cloud = sample_workspace(geom, 21);
  CHECK(cloud.size() == 441);
  for (const CartesianPoint& p : cloud) {
    CHECK(std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z) <=
          geom.d_se + geom.d_ew + 1e-12);
  }
  CHECK_THROWS_AS(sample_workspace(geom, 1), std::invalid_argument);
}

}  // TEST_SUITE
