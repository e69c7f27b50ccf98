#include "pneuarm/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "pneuarm/io.hpp"

namespace pneuarm {

const char* const kLogHeader =
    "t,theta_s_des,theta_e_des,theta_s_true,theta_e_true,theta_s_meas,"
    "theta_e_meas,pwm_s,pwm_e,x,y,z,x_des,y_des,z_des";

void Scenario::validate() const {
  geometry.validate();
  gains_shoulder.validate();
  gains_elbow.validate();
  model_shoulder.validate();
  model_elbow.validate();
  noise.validate();
  spec.validate(geometry);
  if (!(rate_hz > 0.0)) {
    throw std::invalid_argument("control rate must be positive");
  }
  if (total_time < spec.duration) {
    throw std::invalid_argument("simulation shorter than the trajectory");
  }
}

std::pair<SimLog, Metrics> run(const Scenario& scn) {
  scn.validate();
  const double dt = 1.0 / scn.rate_hz;
  const long n_steps = std::lround(scn.rate_hz * scn.total_time);

  const JointTrajectory traj = plan(scn.geometry, scn.spec, scn.limits);
  const DiscretePlant plant_s = discretize(scn.model_shoulder, dt,
                                           scn.shoulder_rest, scn.shoulder_sign);
  const DiscretePlant plant_e =
      discretize(scn.model_elbow, dt, scn.elbow_rest, scn.elbow_sign);

  ImuSimulator imu(scn.noise);
  PDState pd_s, pd_e;
  ActuatorState state_s, state_e;
  JointAngles measured = scn.spec.start;

  SimLog log;
  log.rows.reserve(n_steps + 1);
  log.raw_s.reserve(n_steps + 1);
  log.raw_e.reserve(n_steps + 1);

  for (long k = 0; k <= n_steps; ++k) {
    const double t = k * dt;
    const SegmentSample des_s = eval(traj.shoulder, t);
    const SegmentSample des_e = eval(traj.elbow, t);
    const JointAngles truth{joint_angle(plant_s, state_s),
                            joint_angle(plant_e, state_e)};

    const ImuReading reading = imu.synthesize(truth, t);
    try {
      measured = extract_angles(reading);
    } catch (const GimbalDegenerateError&) {
      log.gimbal_ticks.push_back(static_cast<int>(k));
    }

    const double e_s = scn.shoulder_sign * error(des_s.position, measured.theta_s);
    const double e_e = scn.elbow_sign * error(des_e.position, measured.theta_e);
    auto [cmd_s, next_pd_s] = pd_step(scn.gains_shoulder, pd_s, e_s, dt, scn.tau_d);
    auto [cmd_e, next_pd_e] = pd_step(scn.gains_elbow, pd_e, e_e, dt, scn.tau_d);
    pd_s = next_pd_s;
    pd_e = next_pd_e;

    const CartesianPoint p = forward_kinematics(scn.geometry, truth);
    const CartesianPoint p_des = forward_kinematics(
        scn.geometry, {des_s.position, des_e.position});
    log.rows.push_back({t, des_s.position, des_e.position, truth.theta_s,
                        truth.theta_e, measured.theta_s, measured.theta_e,
                        cmd_s.pwm, cmd_e.pwm, p.x, p.y, p.z, p_des.x, p_des.y,
                        p_des.z});
    log.raw_s.push_back(cmd_s.raw_gain);
    log.raw_e.push_back(cmd_e.raw_gain);

    state_s = step(plant_s, state_s, cmd_s.pwm);
    state_e = step(plant_e, state_e, cmd_e.pwm);
  }
  return {log, compute_metrics(scn, log)};
}

namespace {

JointMetrics joint_metrics(const std::vector<SimRow>& rows,
                           const std::vector<double>& raw, double target,
                           double ss_start, double dt, bool shoulder) {
  JointMetrics m;
  const double band = kSettlingBandDeg * std::numbers::pi / 180.0;
  double sq = 0.0, ss_sum = 0.0;
  long ss_count = 0, sat = 0, ss_sat = 0;
  long last_outside = -1;
  for (size_t k = 0; k < rows.size(); ++k) {
    const double des = shoulder ? rows[k].theta_s_des : rows[k].theta_e_des;
    const double tru = shoulder ? rows[k].theta_s_true : rows[k].theta_e_true;
    const bool in_ss = rows[k].t >= ss_start - 1e-12;
    sq += (tru - des) * (tru - des);
    if (in_ss) {
      ss_sum += std::abs(tru - des);
      ++ss_count;
    }
    if (raw[k] > kPwmMax) {
      ++sat;
      if (in_ss) ++ss_sat;
    }
    if (std::abs(tru - target) > band) {
      last_outside = static_cast<long>(k);
    }
  }
  m.rmse = std::sqrt(sq / static_cast<double>(rows.size()));
  m.steady_state_error = ss_sum / static_cast<double>(ss_count);
  if (last_outside < 0) {
    m.settling_time = 0.0;
  } else if (last_outside == static_cast<long>(rows.size()) - 1) {
    m.settling_time = std::numeric_limits<double>::infinity();
  } else {
    m.settling_time = rows[last_outside].t + dt;
  }
  m.saturation_fraction = static_cast<double>(sat) / rows.size();
  m.ss_saturation_fraction =
      ss_count ? static_cast<double>(ss_sat) / ss_count : 0.0;
  m.saturation_limited = m.ss_saturation_fraction >= 0.99 &&
                         m.steady_state_error >= band;
  return m;
}

}  // namespace

Metrics compute_metrics(const Scenario& scn, const SimLog& log) {
  if (log.rows.empty()) {
    throw std::invalid_argument("cannot compute metrics of an empty log");
  }
  const double dt = 1.0 / scn.rate_hz;
  const double ss_start = 0.9 * scn.total_time;
  Metrics m;
  m.shoulder = joint_metrics(log.rows, log.raw_s, scn.spec.target.theta_s,
                             ss_start, dt, true);
  m.elbow = joint_metrics(log.rows, log.raw_e, scn.spec.target.theta_e,
                          ss_start, dt, false);
  const SimRow& last = log.rows.back();
  const CartesianPoint goal =
      forward_kinematics(scn.geometry, scn.spec.target);
  m.terminal_wrist_error = std::sqrt((last.x - goal.x) * (last.x - goal.x) +
                                     (last.y - goal.y) * (last.y - goal.y) +
                                     (last.z - goal.z) * (last.z - goal.z));
  return m;
}

std::vector<SuiteRow> run_setpoint_suite(const Scenario& base, int repetitions) {
  if (repetitions < 1) {
    throw std::invalid_argument("need at least one repetition");
  }
  std::vector<SuiteRow> table;
  for (const TrajectorySpec& sp : reference_setpoints(base.spec.duration)) {
    Scenario scn = base;
    scn.spec = sp;

    SuiteRow row;
    row.label = sp.label;
    row.mode = sp.mode;
    row.duration = plan(scn.geometry, sp, scn.limits).duration;

    Metrics sum{};
    for (int rep = 0; rep < repetitions; ++rep) {
      scn.noise.seed = base.noise.seed + static_cast<std::uint64_t>(rep);
      const Metrics m = run(scn).second;
      for (auto field : {&JointMetrics::rmse, &JointMetrics::steady_state_error,
                         &JointMetrics::settling_time,
                         &JointMetrics::saturation_fraction,
                         &JointMetrics::ss_saturation_fraction}) {
        sum.shoulder.*field += m.shoulder.*field / repetitions;
        sum.elbow.*field += m.elbow.*field / repetitions;
      }
      sum.terminal_wrist_error += m.terminal_wrist_error / repetitions;
    }
    const double band = kSettlingBandDeg * std::numbers::pi / 180.0;
    for (JointMetrics* jm : {&sum.shoulder, &sum.elbow}) {
      jm->saturation_limited = jm->ss_saturation_fraction >= 0.99 &&
                               jm->steady_state_error >= band;
    }
    row.metrics = sum;
    table.push_back(std::move(row));
  }
  return table;
}

std::string log_to_csv(const SimLog& log) {
  std::ostringstream out;
  out << kLogHeader << '\n';
  for (const SimRow& r : log.rows) {
    const double cells[] = {r.t,          r.theta_s_des, r.theta_e_des,
                            r.theta_s_true, r.theta_e_true, r.theta_s_meas,
                            r.theta_e_meas, r.pwm_s,      r.pwm_e,
                            r.x,          r.y,           r.z,
                            r.x_des,      r.y_des,       r.z_des};
    for (size_t i = 0; i < std::size(cells); ++i) {
      if (i) out << ',';
      out << format_number(cells[i]);
    }
    out << '\n';
  }
  return out.str();
}

void write_log_csv(const SimLog& log, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << log_to_csv(log);
  if (!out) throw IoError("write failed: " + path);
}

void write_metrics_csv(const Metrics& m, const std::string& path) {
  write_csv(path,
            "rmse_s,rmse_e,ss_err_s,ss_err_e,settle_s,settle_e,wrist_err,"
            "sat_frac_s,sat_frac_e,ss_sat_frac_s,ss_sat_frac_e,"
            "sat_limited_s,sat_limited_e",
            {{m.shoulder.rmse, m.elbow.rmse, m.shoulder.steady_state_error,
              m.elbow.steady_state_error, m.shoulder.settling_time,
              m.elbow.settling_time, m.terminal_wrist_error,
              m.shoulder.saturation_fraction, m.elbow.saturation_fraction,
              m.shoulder.ss_saturation_fraction,
              m.elbow.ss_saturation_fraction,
              m.shoulder.saturation_limited ? 1.0 : 0.0,
              m.elbow.saturation_limited ? 1.0 : 0.0}});
}

void write_summary_csv(const std::vector<SuiteRow>& rows,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "setpoint,mode,duration,rmse_s,rmse_e,ss_err_s,ss_err_e,settle_s,"
         "settle_e,wrist_err,sat_frac_s,sat_frac_e,ss_sat_frac_s,"
         "ss_sat_frac_e,sat_limited_s,sat_limited_e\n";
  for (const SuiteRow& r : rows) {
    const Metrics& m = r.metrics;
    const double cells[] = {r.duration,
                            m.shoulder.rmse,
                            m.elbow.rmse,
                            m.shoulder.steady_state_error,
                            m.elbow.steady_state_error,
                            m.shoulder.settling_time,
                            m.elbow.settling_time,
                            m.terminal_wrist_error,
                            m.shoulder.saturation_fraction,
                            m.elbow.saturation_fraction,
                            m.shoulder.ss_saturation_fraction,
                            m.elbow.ss_saturation_fraction,
                            m.shoulder.saturation_limited ? 1.0 : 0.0,
                            m.elbow.saturation_limited ? 1.0 : 0.0};
    out << r.label << ',' << to_string(r.mode);
    for (double c : cells) out << ',' << format_number(c);
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void apply_config(Scenario& scn,
                  const std::map<std::string, std::string>& cfg) {
  static const char* const known[] = {
      "plant.shoulder.b",  "plant.shoulder.a1", "plant.shoulder.a0",
      "plant.elbow.b",     "plant.elbow.a1",    "plant.elbow.a0",
      "control.kp_s",      "control.kd_s",      "control.kp_e",
      "control.kd_e",      "control.tau_d",     "control.rate_hz"};
  for (const auto& [key, value] : cfg) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return key == k;
        }) == std::end(known)) {
      throw IoError("unknown config key: " + key);
    }
  }
  scn.model_shoulder.b = config_double(cfg, "plant.shoulder.b", scn.model_shoulder.b);
  scn.model_shoulder.a1 = config_double(cfg, "plant.shoulder.a1", scn.model_shoulder.a1);
  scn.model_shoulder.a0 = config_double(cfg, "plant.shoulder.a0", scn.model_shoulder.a0);
  scn.model_elbow.b = config_double(cfg, "plant.elbow.b", scn.model_elbow.b);
  scn.model_elbow.a1 = config_double(cfg, "plant.elbow.a1", scn.model_elbow.a1);
  scn.model_elbow.a0 = config_double(cfg, "plant.elbow.a0", scn.model_elbow.a0);
  scn.gains_shoulder.kp = config_double(cfg, "control.kp_s", scn.gains_shoulder.kp);
  scn.gains_shoulder.kd = config_double(cfg, "control.kd_s", scn.gains_shoulder.kd);
  scn.gains_elbow.kp = config_double(cfg, "control.kp_e", scn.gains_elbow.kp);
  scn.gains_elbow.kd = config_double(cfg, "control.kd_e", scn.gains_elbow.kd);
  scn.tau_d = config_double(cfg, "control.tau_d", scn.tau_d);
  scn.rate_hz = config_double(cfg, "control.rate_hz", scn.rate_hz);
}

}  // namespace pneuarm
