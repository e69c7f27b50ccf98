#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "pneuarm/plant.hpp"

using namespace pneuarm;

namespace {

// Fine-step reference integration of x'' = b u - a1 x' - a0 x.
std::vector<double> rk4_step_response(const SecondOrderModel& m, double u,
                                      double t_end, double h, double sample_dt) {
  double x1 = 0.0, x2 = 0.0, t = 0.0;
  std::vector<double> samples{x1};
  const auto f2 = [&](double a, double v) { return m.b * u - m.a1 * v - m.a0 * a; };
  double next_sample = sample_dt;
  while (t < t_end - 0.5 * h) {
    const double k1x = x2, k1v = f2(x1, x2);
    const double k2x = x2 + 0.5 * h * k1v, k2v = f2(x1 + 0.5 * h * k1x, x2 + 0.5 * h * k1v);
    const double k3x = x2 + 0.5 * h * k2v, k3v = f2(x1 + 0.5 * h * k2x, x2 + 0.5 * h * k2v);
    const double k4x = x2 + h * k3v, k4v = f2(x1 + h * k3x, x2 + h * k3v);
    x1 += h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
    x2 += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    t += h;
    if (t >= next_sample - 0.5 * h) {
      samples.push_back(x1);
      next_sample += sample_dt;
    }
  }
  return samples;
}

}  // namespace

TEST_SUITE("plant") {

TEST_CASE("identified models expose the expected scalar characteristics") {
  const auto [shoulder, elbow] = identified_models();
  CHECK(shoulder.b == 52.62);
  CHECK(shoulder.a1 == 15.57);
  CHECK(shoulder.a0 == 101.10);
  CHECK(elbow.b == 16.11);
  CHECK(elbow.a1 == 0.271);
  CHECK(elbow.a0 == 36.88);

  CHECK(shoulder.dc_gain() == doctest::Approx(52.62 / 101.10).epsilon(1e-15));
  CHECK(elbow.dc_gain() == doctest::Approx(16.11 / 36.88).epsilon(1e-15));
  CHECK(elbow.natural_frequency() == doctest::Approx(std::sqrt(36.88)));
  CHECK(elbow.damping_ratio() ==
        doctest::Approx(0.271 / (2.0 * std::sqrt(36.88))).epsilon(1e-12));
  CHECK(elbow.damping_ratio() < 0.03);  // strongly underdamped
}

TEST_CASE("model validation rejects non-positive gain or stiffness") {
  SecondOrderModel m{0.0, 1.0, 1.0};
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m = {1.0, 1.0, -2.0};
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m = {1.0, 0.0, 1.0};
  CHECK_NOTHROW(m.validate());
}

TEST_CASE("discretization is stable for both identified models") {
  const auto [shoulder, elbow] = identified_models();
  for (const SecondOrderModel& m : {shoulder, elbow}) {
    const DiscretePlant p = discretize(m, 0.02);
    const auto eigs = p.ad.eigenvalues();
    CHECK(std::abs(eigs(0)) < 1.0);
    CHECK(std::abs(eigs(1)) < 1.0);
  }
  CHECK_THROWS_AS(discretize(shoulder, 0.0), NonPositiveStepError);
  CHECK_THROWS_AS(discretize(shoulder, -1.0), NonPositiveStepError);
}

TEST_CASE("hold-equivalent stepping tracks a fine reference integration") {
  const auto [shoulder, elbow] = identified_models();
  for (const SecondOrderModel& m : {shoulder, elbow}) {
    const double dt = 0.02;
    const DiscretePlant p = discretize(m, dt);
    const auto ref = rk4_step_response(m, 1.0, 1.0, 1e-4, dt);
    ActuatorState s;
    double worst = 0.0;
    for (size_t k = 0; k < ref.size(); ++k) {
      worst = std::max(worst, std::abs(s.x1 - ref[k]));
      s = step(p, s, 1.0);
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("unit-step displacement converges to the DC gain") {
  const auto elbow = identified_models().second;
  const DiscretePlant p = discretize(elbow, 0.02);
  CHECK(steady_state_displacement(p, 1.0) ==
        doctest::Approx(elbow.dc_gain()).epsilon(1e-12));

  ActuatorState s;
  for (int k = 0; k < 3000; ++k) s = step(p, s, 1.0);  // 60 s
  CHECK(std::abs(s.x1 - elbow.dc_gain()) < 2e-4);      // still ringing faintly
  for (int k = 0; k < 3000; ++k) s = step(p, s, 1.0);  // 120 s
  CHECK(std::abs(s.x1 - elbow.dc_gain()) < 5e-6);
}

TEST_CASE("commands saturate at the duty-cycle rails") {
  CHECK(clamp_pwm(150.0) == 100.0);
  CHECK(clamp_pwm(-5.0) == 0.0);
  CHECK(clamp_pwm(37.5) == 37.5);

  const DiscretePlant p = discretize(identified_models().second, 0.02);
  ActuatorState a, b, c, d;
  a = step(p, a, 150.0);
  b = step(p, b, 100.0);
  c = step(p, c, -5.0);
  d = step(p, d, 0.0);
  CHECK(a.x1 == b.x1);
  CHECK(a.x2 == b.x2);
  CHECK(c.x1 == d.x1);
  CHECK(c.x2 == d.x2);
}

TEST_CASE("joint angles map displacement through rest pose and sign") {
  const double dt = 0.02;
  const DiscretePlant shoulder = default_shoulder_plant(dt);
  const DiscretePlant elbow = default_elbow_plant(dt);
  CHECK(shoulder.rest_angle == doctest::Approx(std::numbers::pi / 2));
  CHECK(shoulder.sign == -1.0);
  CHECK(elbow.rest_angle == 0.0);
  CHECK(elbow.sign == 1.0);

  ActuatorState s;
  s.x1 = 10.0;  // degrees of displacement
  const double deg = std::numbers::pi / 180.0;
  CHECK(joint_angle(shoulder, s) ==
        doctest::Approx(std::numbers::pi / 2 - 10.0 * deg));
  CHECK(joint_angle(elbow, s) == doctest::Approx(10.0 * deg));
  CHECK(displacement_deg(shoulder, joint_angle(shoulder, s)) ==
        doctest::Approx(10.0).epsilon(1e-12));
  CHECK(displacement_deg(elbow, joint_angle(elbow, s)) ==
        doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("recorded step responses sample before the state update") {
  const auto elbow = identified_models().second;
  const auto y = step_response(elbow, 0.0625, 50.0, 160);
  REQUIRE(y.size() == 160);
  CHECK(y[0] == 0.0);
  CHECK(y[1] > 0.0);

  // consistency with manual stepping
  const DiscretePlant p = discretize(elbow, 0.0625);
  ActuatorState s;
  for (int k = 0; k < 5; ++k) s = step(p, s, 50.0);
  CHECK(y[5] == doctest::Approx(s.x1).epsilon(1e-15));
}

}  // TEST_SUITE
