// Command-line front end: kinematics queries, trajectory export, closed-loop
// simulation, the eight-setpoint batch suite, and step-response fitting.

#include <Eigen/SVD>
#include <cstdint>
#include <numbers>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pneuarm/control.hpp"
#include "pneuarm/io.hpp"
#include "pneuarm/kinematics.hpp"
#include "pneuarm/plant.hpp"
#include "pneuarm/sensing.hpp"
#include "pneuarm/sim.hpp"
#include "pneuarm/sysid.hpp"
#include "pneuarm/trajectory.hpp"

namespace {

using namespace pneuarm;

std::string joined(const std::string& dir, const std::string& name) {
  return dir.empty() || dir == "." ? name : dir + "/" + name;
}

Scenario scenario_from_flags(const std::string& config_path,
                             const std::string& setpoint, double duration,
                             double total_time, double noise_deg,
                             std::uint64_t seed) {
  Scenario scn;
  scn.spec = setpoint_by_label(setpoint, duration);
  scn.total_time = total_time;
  scn.noise.sigma_deg = noise_deg;
  scn.noise.seed = seed;
  if (!config_path.empty()) {
    apply_config(scn, load_config(config_path));
  }
  return scn;
}

void print_metrics(const Metrics& m) {
  std::cout << "shoulder: rmse_rad=" << format_number(m.shoulder.rmse)
            << " ss_err_rad=" << format_number(m.shoulder.steady_state_error)
            << " settle_s=" << format_number(m.shoulder.settling_time)
            << " sat_frac=" << format_number(m.shoulder.saturation_fraction)
            << (m.shoulder.saturation_limited ? " saturation-limited" : "")
            << "\nelbow:    rmse_rad=" << format_number(m.elbow.rmse)
            << " ss_err_rad=" << format_number(m.elbow.steady_state_error)
            << " settle_s=" << format_number(m.elbow.settling_time)
            << " sat_frac=" << format_number(m.elbow.saturation_fraction)
            << (m.elbow.saturation_limited ? " saturation-limited" : "")
            << "\nwrist terminal error [m]: "
            << format_number(m.terminal_wrist_error) << "\n";
}

int run_fk(double theta_s, double theta_e) {
  const ArmGeometry geom;
  const CartesianPoint p = forward_kinematics(geom, {theta_s, theta_e});
  std::cout << format_number(p.x) << ',' << format_number(p.y) << ','
            << format_number(p.z) << "\n";
  return 0;
}

int run_ik(double x, double y, double z, double tol) {
  const ArmGeometry geom;
  const JointAngles q = inverse_kinematics(geom, {x, y, z}, tol);
  std::cout << format_number(q.theta_s) << ',' << format_number(q.theta_e)
            << "\n";
  return 0;
}

int run_workspace(int n, const std::string& out_dir) {
  const ArmGeometry geom;
  std::vector<std::vector<double>> rows;
  for (const CartesianPoint& p : sample_workspace(geom, n)) {
    rows.push_back({p.x, p.y, p.z});
  }
  const std::string path = joined(out_dir, "workspace.csv");
  write_csv(path, "x,y,z", rows);
  std::cout << "wrote " << path << " (" << rows.size() << " points)\n";
  return 0;
}

int run_singularities(int n, const std::string& out_dir) {
  const ArmGeometry geom;
  std::vector<std::vector<double>> rows;
  int rank_deficient = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const JointAngles q{
          geom.theta_s_min +
              (geom.theta_s_max - geom.theta_s_min) * i / (n - 1),
          geom.theta_e_min +
              (geom.theta_e_max - geom.theta_e_min) * j / (n - 1)};
      const SubmatrixDeterminants d = submatrix_determinants(geom, q);
      const PositionJacobian jac = position_jacobian(geom, q);
      const Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(jac);
      const double sigma_min = svd.singularValues().minCoeff();
      if (sigma_min < 1e-8) ++rank_deficient;
      rows.push_back({q.theta_s, q.theta_e, d.det_j1, d.det_j2, d.det_j3,
                      sigma_min});
    }
  }
  const std::string path = joined(out_dir, "singularities.csv");
  write_csv(path, "theta_s,theta_e,det_j1,det_j2,det_j3,sigma_min", rows);
  std::cout << "wrote " << path << " (" << n << "x" << n << " grid, "
            << rank_deficient << " rank-deficient configurations)\n";
  return 0;
}

int run_traj(const std::string& setpoint, double duration, double rate,
             const std::string& out_dir) {
  const ArmGeometry geom;
  const TrajectorySpec spec = setpoint_by_label(setpoint, duration);
  const JointTrajectory traj = plan(geom, spec);
  const double dt = 1.0 / rate;
  const long n = std::lround(traj.duration * rate);
  std::vector<std::vector<double>> rows;
  for (long k = 0; k <= n; ++k) {
    const double t = k * dt;
    const SegmentSample s = eval(traj.shoulder, t);
    const SegmentSample e = eval(traj.elbow, t);
    rows.push_back({t, s.position, e.position, s.velocity, e.velocity});
  }
  const std::string path = joined(out_dir, "traj.csv");
  write_csv(path, "t,theta_s_des,theta_e_des,theta_s_dot_des,theta_e_dot_des",
            rows);
  std::cout << "wrote " << path << " (duration "
            << format_number(traj.duration) << " s)\n";
  return 0;
}

int run_simulate(const std::string& config_path, const std::string& setpoint,
                 double duration, double total_time, double noise_deg,
                 std::uint64_t seed, const std::string& out_dir, bool plots) {
  const Scenario scn = scenario_from_flags(config_path, setpoint, duration,
                                           total_time, noise_deg, seed);
  const auto [log, metrics] = run(scn);
  write_log_csv(log, joined(out_dir, "log.csv"));
  write_metrics_csv(metrics, joined(out_dir, "metrics.csv"));
  if (!log.gimbal_ticks.empty()) {
    std::cerr << "warning: held measurement on " << log.gimbal_ticks.size()
              << " degenerate ticks\n";
  }
  if (plots) {
    for (const std::string& p : emit_plots(log, out_dir)) {
      std::cout << "wrote " << p << "\n";
    }
  }
  std::cout << "wrote " << joined(out_dir, "log.csv") << " ("
            << log.rows.size() << " rows) and "
            << joined(out_dir, "metrics.csv") << "\n";
  print_metrics(metrics);
  return 0;
}

int run_suite(const std::string& config_path, double duration,
              double total_time, double noise_deg, std::uint64_t seed,
              int reps, const std::string& out_dir) {
  Scenario base = scenario_from_flags(config_path, "P1", duration, total_time,
                                      noise_deg, seed);
  const std::vector<SuiteRow> table = run_setpoint_suite(base, reps);
  const std::string path = joined(out_dir, "summary.csv");
  write_summary_csv(table, path);
  std::cout << "wrote " << path << "\n";
  for (const SuiteRow& row : table) {
    std::cout << row.label << " (" << to_string(row.mode)
              << "): ss_err_deg s="
              << format_number(row.metrics.shoulder.steady_state_error *
                               180.0 / std::numbers::pi)
              << " e="
              << format_number(row.metrics.elbow.steady_state_error * 180.0 /
                               std::numbers::pi)
              << (row.metrics.shoulder.saturation_limited ? " [shoulder sat]"
                                                          : "")
              << (row.metrics.elbow.saturation_limited ? " [elbow sat]" : "")
              << "\n";
  }
  return 0;
}

int run_sysid(const std::vector<std::string>& files, double ts, double init_b,
              double init_a1, double init_a0, const std::string& out_dir,
              bool write_report) {
  std::map<long, std::vector<std::vector<double>>> by_level;
  double inferred_ts = 0.0;
  for (const std::string& file : files) {
    const CsvTable table = read_csv(file);
    const int t_col = table.column("t");
    const int pwm_col = table.column("pwm");
    const int y_col = table.column("angle_deg");
    if (t_col < 0 || pwm_col < 0 || y_col < 0) {
      throw IoError(file + ": expected columns t,pwm,angle_deg");
    }
    if (table.rows.size() < 2) {
      throw IoError(file + ": too few samples");
    }
    std::vector<double> y;
    y.reserve(table.rows.size());
    for (const auto& row : table.rows) y.push_back(row[y_col]);
    const long level = std::lround(table.rows.front()[pwm_col]);
    by_level[level].push_back(std::move(y));
    inferred_ts = table.rows[1][t_col] - table.rows[0][t_col];
  }
  if (by_level.empty()) throw IoError("no input trials");

  StepResponseDataset data;
  data.ts = ts > 0.0 ? ts : inferred_ts;
  for (auto& [level, trials] : by_level) {
    data.pwm_levels.push_back(static_cast<double>(level));
    data.trials.push_back(std::move(trials));
  }
  data = average_trials(data.ts, data.pwm_levels, data.trials);

  const FitResult fit =
      fit_second_order(data, SecondOrderModel{init_b, init_a1, init_a0});
  std::cout << "b  = " << format_number(fit.model.b)
            << "\na1 = " << format_number(fit.model.a1)
            << "\na0 = " << format_number(fit.model.a0)
            << "\nfit = " << format_number(fit.fit_percent) << " %\n";
  if (write_report) {
    const std::string path = joined(out_dir, "sysid_report.csv");
    write_csv(path, "b,a1,a0,fit_percent,residual_norm",
              {{fit.model.b, fit.model.a1, fit.model.a0, fit.fit_percent,
                fit.residual_norm}});
    std::cout << "wrote " << path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pneumatic arm workbench: kinematics, trajectories, "
               "closed-loop simulation, system identification"};
  app.require_subcommand(1);

  double theta_s = 0.0, theta_e = 0.0, x = 0.0, y = 0.0, z = 0.0;
  double tol = kDefaultPositionTolerance;
  int n = 91, reps = 8;
  double duration = 1.0, total_time = 10.0, rate = 50.0, noise_deg = 0.0;
  double ts = 0.0625;
  double init_b = 16.11, init_a1 = 0.271, init_a0 = 36.88;
  std::uint64_t seed = 0;
  std::string out_dir = ".", config_path, setpoint = "P1";
  std::vector<std::string> files;
  bool plots = false, report = false;

  auto* fk = app.add_subcommand("fk", "forward kinematics of one configuration");
  fk->add_option("--theta-s", theta_s, "shoulder angle [rad]")->required();
  fk->add_option("--theta-e", theta_e, "elbow angle [rad]")->required();

  auto* ik = app.add_subcommand("ik", "inverse kinematics of one wrist point");
  ik->add_option("--x", x, "wrist x [m]")->required();
  ik->add_option("--y", y, "wrist y [m]")->required();
  ik->add_option("--z", z, "wrist z [m]")->required();
  ik->add_option("--tol", tol, "round-trip position tolerance [m]");

  auto* ws = app.add_subcommand("workspace", "sample the reachable wrist points");
  ws->add_option("--n", n, "grid resolution per joint");
  ws->add_option("--out", out_dir, "output directory");

  auto* sing = app.add_subcommand("singularities",
                                  "scan Jacobian sub-determinants on a grid");
  sing->add_option("--n", n, "grid resolution per joint");
  sing->add_option("--out", out_dir, "output directory");

  auto* tr = app.add_subcommand("traj", "export a planned joint trajectory");
  tr->add_option("--setpoint", setpoint, "P1..P8");
  tr->add_option("--duration", duration, "requested duration [s]");
  tr->add_option("--rate", rate, "sample rate [Hz]");
  tr->add_option("--out", out_dir, "output directory");

  auto* sim = app.add_subcommand("simulate", "run one closed-loop experiment");
  sim->add_option("--config", config_path, "flat key=value config file");
  sim->add_option("--setpoint", setpoint, "P1..P8");
  sim->add_option("--duration", duration, "trajectory duration [s]");
  sim->add_option("--total-time", total_time, "simulated time [s]");
  sim->add_option("--noise-deg", noise_deg, "IMU noise std [deg]");
  sim->add_option("--seed", seed, "noise seed");
  sim->add_option("--out", out_dir, "output directory");
  sim->add_flag("--plots", plots, "also emit SVG plots");

  auto* su = app.add_subcommand("suite", "run all eight setpoints");
  su->add_option("--config", config_path, "flat key=value config file");
  su->add_option("--duration", duration, "trajectory duration [s]");
  su->add_option("--total-time", total_time, "simulated time [s]");
  su->add_option("--noise-deg", noise_deg, "IMU noise std [deg]");
  su->add_option("--seed", seed, "base noise seed");
  su->add_option("--reps", reps, "repetitions per setpoint");
  su->add_option("--out", out_dir, "output directory");

  auto* sy = app.add_subcommand("sysid", "fit a second-order model to trials");
  sy->add_option("files", files, "trial CSVs with columns t,pwm,angle_deg")
      ->required();
  sy->add_option("--ts", ts, "sample period [s] (0 = infer from t column)");
  sy->add_option("--init-b", init_b, "initial numerator gain");
  sy->add_option("--init-a1", init_a1, "initial damping coefficient");
  sy->add_option("--init-a0", init_a0, "initial stiffness coefficient");
  sy->add_option("--out", out_dir, "output directory for the report");
  sy->add_flag("--report", report, "write sysid_report.csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fk) return run_fk(theta_s, theta_e);
    if (*ik) return run_ik(x, y, z, tol);
    if (*ws) return run_workspace(n, out_dir);
    if (*sing) return run_singularities(n, out_dir);
    if (*tr) return run_traj(setpoint, duration, rate, out_dir);
    if (*sim) {
      return run_simulate(config_path, setpoint, duration, total_time,
                          noise_deg, seed, out_dir, plots);
    }
    if (*su) {
      return run_suite(config_path, duration, total_time, noise_deg, seed,
                       reps, out_dir);
    }
    if (*sy) {
      return run_sysid(files, ts, init_b, init_a1, init_a0, out_dir, report);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
