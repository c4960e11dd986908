// Copyright 2026 The quadsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quadsim/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "quadsim/attitude_control.hpp"
#include "quadsim/so3.hpp"
#include "quadsim/trajectory.hpp"

namespace quadsim {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void write_criteria_file(const SuiteResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open '" + path + "'");
  for (const CriterionResult& c : result.criteria) {
    out << format_criterion(c) << "\n";
  }
}

double circle_radius_rmse(const TelemetryLog& log,
                          const TrajectorySpec& traj, double steady_start) {
  const double radius = 0.5 * traj.circle_diameter;
  double accum = 0.0;
  std::size_t count = 0;
  for (const TelemetryRecord& r : log.records) {
    if (r.t < steady_start) continue;
    const double dist =
        (r.position.head<2>() - traj.circle_center).norm();
    accum += (dist - radius) * (dist - radius);
    ++count;
  }
  return count ? std::sqrt(accum / count) : 0.0;
}

SuiteResult suite_hover(const RunConfig& config, const std::string& out_dir) {
  const RunResult result = run(config);
  write_csv(result.log, out_dir + "/telemetry.csv");
  write_metrics(result.metrics, out_dir + "/metrics.txt");

  double accum = 0.0;
  for (const TelemetryRecord& r : result.log.records) {
    accum += (r.position - sample(config.trajectory, r.t).position)
                 .squaredNorm();
  }
  const double rms =
      result.log.records.empty()
          ? 0.0
          : std::sqrt(accum / static_cast<double>(result.log.records.size()));

  SuiteResult suite;
  suite.criteria.push_back({"hover_rms", rms < 1e-3,
                            "position RMS " + fmt(rms) + " m (limit 1e-3)"});
  return suite;
}

SuiteResult suite_fast_circles(const RunConfig& config,
                               const std::string& out_dir) {
  constexpr int kSeeds = 5;
  double conv_sum = 0.0, roll_sum = 0.0, radius_sum = 0.0;
  for (int i = 0; i < kSeeds; ++i) {
    RunConfig cfg = config;
    cfg.seed = config.seed + static_cast<std::uint64_t>(i);
    const RunResult result = run(cfg);
    const std::string tag = "_seed" + std::to_string(cfg.seed);
    write_csv(result.log, out_dir + "/telemetry" + tag + ".csv");
    write_metrics(result.metrics, out_dir + "/metrics" + tag + ".txt");
    conv_sum += result.metrics.convergence_time_altitude;
    roll_sum += result.metrics.steady_state_mean_abs_roll;
    radius_sum += circle_radius_rmse(result.log, cfg.trajectory,
                                     0.5 * cfg.duration);
  }
  const double conv = conv_sum / kSeeds;
  const double roll_deg = (roll_sum / kSeeds) * 180.0 / M_PI;
  const double radius_err = radius_sum / kSeeds;

  SuiteResult suite;
  suite.criteria.push_back(
      {"altitude_convergence", conv <= 3.0,
       "altitude within band at t = " + fmt(conv) + " s (limit 3 s, " +
           std::to_string(kSeeds) + "-seed mean)"});
  suite.criteria.push_back(
      {"steady_roll_band", roll_deg >= 60.0 && roll_deg <= 80.0,
       "steady-state mean |roll| " + fmt(roll_deg) + " deg (band 60-80)"});
  suite.criteria.push_back(
      {"radius_error", radius_err < 1.0,
       "steady-state radius RMSE " + fmt(radius_err) + " m (limit 1)"});
  return suite;
}

SuiteResult suite_flipping_loops(const RunConfig& config,
                                 const std::string& out_dir) {
  const RunResult result = run(config);
  write_csv(result.log, out_dir + "/telemetry.csv");
  write_metrics(result.metrics, out_dir + "/metrics.txt");

  SuiteResult suite;
  const double rms = result.metrics.steady_state_rms_position_error;
  const double roll_deg = result.metrics.max_abs_roll * 180.0 / M_PI;
  suite.criteria.push_back(
      {"tracking_rms", rms < 0.5,
       "steady-state RMS position error " + fmt(rms) + " m (limit 0.5)"});
  suite.criteria.push_back(
      {"roll_exceeds_pi", result.metrics.max_abs_roll > M_PI,
       "max unwrapped |roll| " + fmt(roll_deg) + " deg (must exceed 180)"});
  return suite;
}

SuiteResult suite_upside_down(const RunConfig& config,
                              const std::string& out_dir) {
  RunConfig ours_cfg = config;
  ours_cfg.controller = ControllerMode::kTorque;
  const RunResult ours = run(ours_cfg);
  write_csv(ours.log, out_dir + "/telemetry_torque.csv");
  write_metrics(ours.metrics, out_dir + "/metrics_torque.txt");

  RunConfig base_cfg = config;
  base_cfg.controller = ControllerMode::kLee2010;
  const RunResult baseline = run(base_cfg);
  write_csv(baseline.log, out_dir + "/telemetry_lee2010.csv");
  write_metrics(baseline.metrics, out_dir + "/metrics_lee2010.txt");

  SuiteResult suite;
  const double drop = ours.metrics.max_altitude_drop;
  suite.criteria.push_back(
      {"recovery", ours.metrics.recovered,
       std::string("torque controller ") +
           (ours.metrics.recovered ? "recovered" : "did not recover")});
  suite.criteria.push_back(
      {"altitude_drop", drop >= 4.5 && drop <= 8.5,
       "max altitude drop " + fmt(drop) + " m (band 4.5-8.5)"});
  suite.criteria.push_back(
      {"baseline_no_recovery", !baseline.metrics.recovered,
       std::string("comparison controller ") +
           (baseline.metrics.recovered ? "recovered unexpectedly"
                                       : "did not recover (drop " +
                                             fmt(baseline.metrics
                                                     .max_altitude_drop) +
                                             " m)")});
  return suite;
}

SuiteResult suite_error_sweep(const std::string& out_dir) {
  const std::vector<ErrorSweepRow> rows = error_sweep_table();
  write_error_sweep_csv(rows, out_dir + "/error_sweep.csv");

  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double phi = rows[i].phi;
    worst = std::max(worst, std::abs(rows[i].log - phi));
    worst = std::max(worst, std::abs(rows[i].lee2010 - std::sin(phi)));
    if (i + 1 < rows.size()) {
      worst = std::max(worst, std::abs(rows[i].lee2012 - std::sin(0.5 * phi)));
    }
  }
  SuiteResult suite;
  suite.criteria.push_back(
      {"error_function_shapes", worst < 1e-9,
       "max deviation from (phi, sin phi, sin phi/2) = " + fmt(worst)});
  return suite;
}

SuiteResult suite_rate_recovery(const RunConfig& config,
                                const std::string& out_dir) {
  const RateRecoveryStats stats = rate_mode_recovery(config, 100);
  write_csv(stats.exemplar, out_dir + "/telemetry_axis0.csv");

  SuiteResult suite;
  suite.criteria.push_back(
      {"pi_escape", stats.max_escape_time <= 0.1,
       "worst escape from the 180-degree set at " +
           fmt(stats.max_escape_time) + " s (limit 0.1, " +
           std::to_string(stats.axes) + " axes)"});
  suite.criteria.push_back(
      {"exponential_decay", stats.worst_bound_margin >= 0.0,
       "min margin to pi*exp(-0.9 lmin(K_r) t) bound = " +
           fmt(stats.worst_bound_margin) + " rad"});
  return suite;
}

}  // namespace

bool SuiteResult::all_passed() const {
  for (const CriterionResult& c : criteria) {
    if (!c.passed) return false;
  }
  return true;
}

std::string format_criterion(const CriterionResult& c) {
  return std::string(c.passed ? "[PASS] " : "[FAIL] ") + c.name + ": " +
         c.detail;
}

std::vector<ErrorSweepRow> error_sweep_table(int n_points) {
  std::vector<ErrorSweepRow> rows;
  rows.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double phi = M_PI * static_cast<double>(i) / (n_points - 1);
    const Mat3 err_rot = so3::exp_map(Vec3(phi, 0.0, 0.0));
    ErrorSweepRow row;
    row.phi = phi;
    row.lee2010 = rotation_error_lee2010(err_rot).norm();
    try {
      row.lee2012 = rotation_error_lee2012(err_rot).norm();
    } catch (const SingularTrace&) {
      row.lee2012 = std::numeric_limits<double>::quiet_NaN();
    }
    row.log = rotation_error_log(err_rot).norm();
    rows.push_back(row);
  }
  return rows;
}

void write_error_sweep_csv(const std::vector<ErrorSweepRow>& rows,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open '" + path + "'");
  out << "phi,err_lee2010,err_lee2012,err_log\n";
  char buf[160];
  for (const ErrorSweepRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", r.phi,
                  r.lee2010, r.lee2012, r.log);
    out << buf;
  }
}

RateRecoveryStats rate_mode_recovery(const RunConfig& config, int n_axes) {
  const Mat3 rotation_gain = config.rotation_gain();
  const double lambda_min =
      Eigen::SelfAdjointEigenSolver<Mat3>(rotation_gain)
          .eigenvalues()
          .minCoeff();
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  RateRecoveryStats stats;
  stats.axes = n_axes;
  stats.worst_bound_margin = std::numeric_limits<double>::infinity();

  const std::size_t n_steps =
      static_cast<std::size_t>(std::llround(config.duration / config.dt));

  for (int axis_idx = 0; axis_idx < n_axes; ++axis_idx) {
    Vec3 axis;
    do {
      axis = Vec3(normal(rng), normal(rng), normal(rng));
    } while (axis.norm() < 1e-6);
    axis.normalize();

    Mat3 body = so3::exp_map(M_PI * axis);
    LogErrorTracker tracker;
    EulerUnwrapper unwrapper;
    double escape_time = std::numeric_limits<double>::infinity();

    for (std::size_t k = 0; k < n_steps; ++k) {
      const double t = static_cast<double>(k) * config.dt;
      const Mat3 err_rot = body.transpose();  // desired rotation is identity
      const Vec3 r_err = tracker.update(err_rot);
      const double angle = r_err.norm();
      if (angle < M_PI - 0.01 && t < escape_time) escape_time = t;
      if (t > 0.05) {
        const double bound =
            M_PI * std::exp(-0.9 * lambda_min * t);
        stats.worst_bound_margin =
            std::min(stats.worst_bound_margin, bound - angle);
      }
      const Vec3 rate_cmd = rate_command_from_error(r_err, err_rot,
                                                    Vec3::Zero(),
                                                    rotation_gain);
      if (axis_idx == 0) {
        TelemetryRecord rec;
        rec.t = t;
        rec.quaternion = quaternion_from_rotation(body);
        const Vec3 euler = unwrapper.update(body);
        rec.roll = euler[0];
        rec.pitch = euler[1];
        rec.yaw = euler[2];
        rec.body_rate = rate_cmd;
        rec.rotation_error = r_err;
        rec.rate_error = -rate_cmd;
        rec.lyapunov = 0.5 * r_err.squaredNorm();
        stats.exemplar.records.push_back(rec);
      }
      body = body * so3::exp_map(config.dt * rate_cmd);
    }
    stats.max_escape_time = std::max(stats.max_escape_time, escape_time);
  }
  return stats;
}

SuiteResult run_experiment_suite(const RunConfig& config,
                                 const std::string& out_dir) {
  fs::create_directories(out_dir);
  SuiteResult suite;
  switch (config.experiment) {
    case ExperimentKind::kHover:
      suite = suite_hover(config, out_dir);
      break;
    case ExperimentKind::kFastCircles:
      suite = suite_fast_circles(config, out_dir);
      break;
    case ExperimentKind::kFlippingLoops:
      suite = suite_flipping_loops(config, out_dir);
      break;
    case ExperimentKind::kUpsideDown:
      suite = suite_upside_down(config, out_dir);
      break;
    case ExperimentKind::kErrorSweep:
      suite = suite_error_sweep(out_dir);
      break;
    case ExperimentKind::kRateModeRecovery:
      suite = suite_rate_recovery(config, out_dir);
      break;
    default:
      throw UnknownExperiment("unknown experiment");
  }
  write_criteria_file(suite, out_dir + "/criteria.txt");
  return suite;
}

}  // namespace quadsim
