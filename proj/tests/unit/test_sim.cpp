#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "pneuarm/io.hpp"
#include "pneuarm/sim.hpp"

using namespace pneuarm;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = 180.0 / kPi;

Scenario noise_free(const std::string& label) {
  Scenario scn;
  scn.spec = setpoint_by_label(label);
  scn.noise.sigma_deg = 0.0;
  return scn;
}

std::filesystem::path temp_dir(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("a 50 Hz ten-second run logs 501 uniformly spaced rows") {
  const auto [log, metrics] = run(noise_free("P1"));
  REQUIRE(log.rows.size() == 501);
  for (size_t k = 0; k < log.rows.size(); ++k) {
    CHECK(log.rows[k].t == doctest::Approx(k * 0.02).epsilon(1e-12));
  }
  CHECK(log.gimbal_ticks.empty());
  CHECK(log.raw_s.size() == 501);
}

TEST_CASE("logged wrist positions are the forward kinematics of the true angles") {
  const Scenario scn = noise_free("P4");
  const auto [log, metrics] = run(scn);
  for (size_t k = 0; k < log.rows.size(); k += 25) {
    const SimRow& r = log.rows[k];
    const CartesianPoint p = forward_kinematics(
        scn.geometry, {r.theta_s_true, r.theta_e_true});
    CHECK(std::abs(r.x - p.x) < 1e-15);
    CHECK(std::abs(r.y - p.y) < 1e-15);
    CHECK(std::abs(r.z - p.z) < 1e-15);
  }
}

TEST_CASE("an idle joint draws no effort") {
  // P1 moves only the elbow; the shoulder starts at its commanded angle.
  const auto [log, metrics] = run(noise_free("P1"));
  for (const SimRow& r : log.rows) {
    CHECK(r.pwm_s == 0.0);
    CHECK(std::abs(r.theta_s_true - kPi / 2) < 1e-15);
  }
  CHECK(metrics.shoulder.saturation_fraction == 0.0);
}

TEST_CASE("a quarter-turn elbow reach settles close to its target") {
  const auto [log, metrics] = run(noise_free("P1"));
  CHECK(metrics.elbow.steady_state_error * kDeg ==
        doctest::Approx(1.311).epsilon(0.12));
  CHECK(metrics.elbow.settling_time == doctest::Approx(4.24).epsilon(0.08));
  CHECK(metrics.elbow.settling_time < 5.0);
  CHECK_FALSE(metrics.elbow.saturation_limited);
  CHECK(metrics.terminal_wrist_error < 0.01);
  CHECK(metrics.terminal_wrist_error > 0.0);
}

TEST_CASE("a half-turn elbow reach pins the actuator at its pressure ceiling") {
  const auto [log, metrics] = run(noise_free("P2"));
  CHECK(metrics.elbow.steady_state_error * kDeg ==
        doctest::Approx(90.0 - 43.682).epsilon(0.025));
  CHECK(metrics.elbow.ss_saturation_fraction == 1.0);
  CHECK(metrics.elbow.saturation_limited);
  CHECK(std::isinf(metrics.elbow.settling_time));
}

TEST_CASE("the shoulder misses distant targets against its own ceiling") {
  const auto [log, metrics] = run(noise_free("P6"));
  CHECK(metrics.shoulder.steady_state_error * kDeg ==
        doctest::Approx(37.953).epsilon(0.03));
  CHECK(metrics.shoulder.saturation_limited);
  CHECK_FALSE(metrics.elbow.saturation_limited);
}

TEST_CASE("a quarter-turn shoulder reach limit-cycles inside the rails") {
  // The sampled loop is unstable at these gains; saturation bounds the orbit
  // around 3.4 degrees, so the joint neither settles nor counts as
  // pressure-limited.
  const auto [log, metrics] = run(noise_free("P3"));
  CHECK(metrics.shoulder.steady_state_error * kDeg ==
        doctest::Approx(3.393).epsilon(0.15));
  CHECK(std::isinf(metrics.shoulder.settling_time));
  CHECK(metrics.shoulder.ss_saturation_fraction < 0.99);
  CHECK_FALSE(metrics.shoulder.saturation_limited);
}

TEST_CASE("identical seeds give byte-identical logs, different seeds differ") {
  Scenario scn = noise_free("P1");
  scn.noise.sigma_deg = 0.5;
  scn.noise.seed = 7;
  const std::string a = log_to_csv(run(scn).first);
  const std::string b = log_to_csv(run(scn).first);
  CHECK(a == b);

  scn.noise.seed = 8;
  CHECK(log_to_csv(run(scn).first) != a);
}

TEST_CASE("the suite flags the pressure-limited setpoints and no others") {
  Scenario base = noise_free("P1");
  const std::vector<SuiteRow> table = run_setpoint_suite(base, 1);
  REQUIRE(table.size() == 8);
  std::vector<std::string> elbow_flagged, shoulder_flagged;
  for (const SuiteRow& row : table) {
    if (row.metrics.elbow.saturation_limited) elbow_flagged.push_back(row.label);
    if (row.metrics.shoulder.saturation_limited)
      shoulder_flagged.push_back(row.label);
    CHECK(row.duration == doctest::Approx(1.0));
  }
  CHECK(elbow_flagged == std::vector<std::string>{"P2", "P5", "P8"});
  CHECK(shoulder_flagged == std::vector<std::string>{"P6", "P7", "P8"});
}

TEST_CASE("scenario validation rejects an undersized time window") {
  Scenario scn = noise_free("P1");
  scn.total_time = 0.5;  // shorter than the 1 s reach
  CHECK_THROWS_AS(run(scn), std::invalid_argument);
  scn.total_time = 10.0;
  scn.rate_hz = 0.0;
  CHECK_THROWS_AS(run(scn), std::invalid_argument);
}

TEST_CASE("config keys reshape the scenario and typos are rejected") {
  Scenario scn;
  const auto cfg = parse_config_text(
      "plant.elbow.b = 20\n"
      "control.kp_e = 100\n"
      "control.rate_hz = 100\n");
  apply_config(scn, cfg);
  CHECK(scn.model_elbow.b == 20.0);
  CHECK(scn.gains_elbow.kp == 100.0);
  CHECK(scn.rate_hz == 100.0);
  CHECK(scn.model_shoulder.b == 52.62);  // untouched default

  scn.total_time = 1.0;
  const auto [log, metrics] = run(scn);
  CHECK(log.rows.size() == 101);

  CHECK_THROWS_AS(apply_config(scn, parse_config_text("control.kp_x = 1\n")),
                  IoError);
  CHECK_THROWS_AS(apply_config(scn, parse_config_text("plant.elbow.c = 1\n")),
                  IoError);
}

TEST_CASE("log csv round trips through the reader") {
  const auto [log, metrics] = run(noise_free("P1"));
  const auto dir = temp_dir("pneuarm_sim_csv");
  const std::string path = (dir / "log.csv").string();
  write_log_csv(log, path);
  const CsvTable table = read_csv(path);
  CHECK(table.rows.size() == 501);
  REQUIRE(table.header.size() == 15);
  CHECK(table.column("theta_e_true") == 4);
  CHECK(table.column("pwm_e") == 8);
  // 9 significant digits keep radians to ~1e-9 absolute here
  CHECK(std::abs(table.rows[250][4] - log.rows[250].theta_e_true) < 1e-8);

  write_metrics_csv(metrics, (dir / "metrics.csv").string());
  const CsvTable mt = read_csv((dir / "metrics.csv").string());
  CHECK(mt.rows.size() == 1);
  CHECK(mt.column("sat_limited_e") == 12);
}

TEST_CASE("summary csv lists one labelled row per setpoint") {
  Scenario base = noise_free("P1");
  const auto table = run_setpoint_suite(base, 1);
  const auto dir = temp_dir("pneuarm_suite_csv");
  const std::string path = (dir / "summary.csv").string();
  write_summary_csv(table, path);

  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line ==
        "setpoint,mode,duration,rmse_s,rmse_e,ss_err_s,ss_err_e,settle_s,"
        "settle_e,wrist_err,sat_frac_s,sat_frac_e,ss_sat_frac_s,"
        "ss_sat_frac_e,sat_limited_s,sat_limited_e");
  int rows = 0;
  std::string first_cell;
  while (std::getline(in, line)) {
    if (rows == 0) first_cell = line.substr(0, line.find(','));
    ++rows;
  }
  CHECK(rows == 8);
  CHECK(first_cell == "P1");
}

TEST_CASE("plot emission is deterministic and writes every panel") {
  const auto [log, metrics] = run(noise_free("P4"));
  const auto dir = temp_dir("pneuarm_plots");
  const auto paths = emit_plots(log, dir.string());
  REQUIRE(paths.size() == 6);
  std::vector<std::string> first;
  for (const std::string& p : paths) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::string body((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    CHECK(body.size() > 200);
    CHECK(body.find("<svg") != std::string::npos);
    first.push_back(body);
  }
  const auto again = emit_plots(log, dir.string());
  for (size_t i = 0; i < again.size(); ++i) {
    std::ifstream in(again[i], std::ios::binary);
    std::string body((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    CHECK(body == first[i]);
  }
}

}  // TEST_SUITE
