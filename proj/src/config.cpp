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

#include "quadsim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace quadsim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for '" + key + "'");
  }
  if (pos != value.size()) {
    throw ConfigError("config: trailing characters in value for '" + key +
                      "'");
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value for '" + key + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config: bad boolean value for '" + key + "'");
}

template <int N>
Eigen::Matrix<double, N, 1> parse_vector(const std::string& key,
                                         const std::string& value) {
  std::istringstream ss(value);
  Eigen::Matrix<double, N, 1> out;
  for (int i = 0; i < N; ++i) {
    if (!(ss >> out[i])) {
      throw ConfigError("config: expected " + std::to_string(N) +
                        " values for '" + key + "'");
    }
  }
  std::string rest;
  if (ss >> rest) {
    throw ConfigError("config: too many values for '" + key + "'");
  }
  return out;
}

void apply_key(RunConfig* cfg, const std::string& key,
               const std::string& value) {
  if (key == "experiment") {
    cfg->experiment = experiment_from_string(value);
  } else if (key == "controller") {
    cfg->controller = controller_from_string(value);
  } else if (key == "dt") {
    cfg->dt = parse_double(key, value);
  } else if (key == "duration") {
    cfg->duration = parse_double(key, value);
  } else if (key == "noise_sigma") {
    cfg->noise_sigma = parse_double(key, value);
  } else if (key == "seed") {
    cfg->seed = parse_u64(key, value);
  } else if (key == "mass") {
    cfg->vehicle.mass = parse_double(key, value);
  } else if (key == "gravity") {
    cfg->vehicle.gravity = parse_double(key, value);
  } else if (key == "inertia_diag") {
    cfg->vehicle.inertia = parse_vector<3>(key, value).asDiagonal();
  } else if (key == "arm_length") {
    cfg->vehicle.arm_length = parse_double(key, value);
  } else if (key == "rotor_max_thrust") {
    cfg->vehicle.rotor_max_thrust = parse_double(key, value);
  } else if (key == "rotor_max_torque") {
    cfg->vehicle.rotor_max_torque = parse_double(key, value);
  } else if (key == "thrust_estimate_factor") {
    cfg->vehicle.thrust_estimate_factor = parse_double(key, value);
  } else if (key == "state_weight_diag") {
    cfg->state_weight_diag = parse_vector<9>(key, value);
  } else if (key == "force_weight_diag") {
    cfg->force_weight_diag = parse_vector<3>(key, value);
  } else if (key == "integral_limit") {
    cfg->integral_limit = parse_double(key, value);
  } else if (key == "rotation_gain_diag") {
    cfg->rotation_gain_diag = parse_vector<3>(key, value);
  } else if (key == "rate_gain_diag") {
    cfg->rate_gain_diag = parse_vector<3>(key, value);
  } else if (key == "rate_gain_equals_inertia") {
    cfg->rate_gain_equals_inertia = parse_bool(key, value);
  } else if (key == "hover_position") {
    cfg->trajectory.hover_position = parse_vector<3>(key, value);
  } else if (key == "hover_heading") {
    cfg->trajectory.hover_heading = parse_double(key, value);
  } else if (key == "circle_center") {
    cfg->trajectory.circle_center = parse_vector<2>(key, value);
  } else if (key == "circle_diameter") {
    cfg->trajectory.circle_diameter = parse_double(key, value);
  } else if (key == "circle_period") {
    cfg->trajectory.circle_period = parse_double(key, value);
  } else if (key == "circle_vertical_offset") {
    cfg->trajectory.circle_vertical_offset = parse_double(key, value);
  } else if (key == "loop_y_amplitude") {
    cfg->trajectory.loop_y_amplitude = parse_double(key, value);
  } else if (key == "loop_z_amplitude") {
    cfg->trajectory.loop_z_amplitude = parse_double(key, value);
  } else if (key == "loop_vertical_offset") {
    cfg->trajectory.loop_vertical_offset = parse_double(key, value);
  } else if (key == "loop_period") {
    cfg->trajectory.loop_period = parse_double(key, value);
  } else if (key == "initial_position") {
    cfg->initial_position = parse_vector<3>(key, value);
  } else if (key == "initial_velocity") {
    cfg->initial_velocity = parse_vector<3>(key, value);
  } else if (key == "initial_attitude_axis_angle") {
    cfg->initial_attitude_axis_angle = parse_vector<3>(key, value);
  } else if (key == "initial_rate") {
    cfg->initial_rate = parse_vector<3>(key, value);
  } else if (key == "altitude_band") {
    cfg->altitude_band = parse_double(key, value);
  } else if (key == "recovery_radius") {
    cfg->recovery_radius = parse_double(key, value);
  } else if (key == "recovery_speed") {
    cfg->recovery_speed = parse_double(key, value);
  } else if (key == "recovery_hold_time") {
    cfg->recovery_hold_time = parse_double(key, value);
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

}  // namespace

void RunConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("config: dt must be > 0");
  if (!(duration > 0.0)) throw ConfigError("config: duration must be > 0");
  if (noise_sigma < 0.0) throw ConfigError("config: noise_sigma must be >= 0");
  if (!(vehicle.mass > 0.0)) throw ConfigError("config: mass must be > 0");
  if (!(vehicle.gravity > 0.0)) throw ConfigError("config: gravity must be > 0");
  if (!(vehicle.arm_length > 0.0) || !(vehicle.rotor_max_thrust > 0.0) ||
      !(vehicle.rotor_max_torque > 0.0)) {
    throw ConfigError("config: vehicle geometry must be positive");
  }
  if ((vehicle.inertia - vehicle.inertia.transpose()).norm() > 1e-12 ||
      vehicle.inertia.ldlt().info() != Eigen::Success ||
      vehicle.inertia.determinant() <= 0.0) {
    throw ConfigError("config: inertia must be symmetric positive definite");
  }
  if (state_weight_diag.minCoeff() <= 0.0 ||
      force_weight_diag.minCoeff() <= 0.0) {
    throw ConfigError("config: LQR weights must be positive");
  }
  if (rotation_gain_diag.minCoeff() <= 0.0 ||
      rate_gain_diag.minCoeff() <= 0.0) {
    throw ConfigError("config: attitude gains must be positive");
  }
  if (trajectory.kind == TrajectoryKind::kCircle &&
      !(trajectory.circle_period > 0.0)) {
    throw ConfigError("config: circle_period must be > 0");
  }
  if (trajectory.kind == TrajectoryKind::kFlippingLoop &&
      !(trajectory.loop_period > 0.0)) {
    throw ConfigError("config: loop_period must be > 0");
  }
}

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kHover: return "hover";
    case ExperimentKind::kFastCircles: return "fast_circles";
    case ExperimentKind::kFlippingLoops: return "flipping_loops";
    case ExperimentKind::kUpsideDown: return "upside_down";
    case ExperimentKind::kErrorSweep: return "error_sweep";
    case ExperimentKind::kRateModeRecovery: return "rate_mode_recovery";
  }
  return "?";
}

const char* to_string(ControllerMode mode) {
  switch (mode) {
    case ControllerMode::kTorque: return "torque";
    case ControllerMode::kRate: return "rate";
    case ControllerMode::kLee2010: return "lee2010";
  }
  return "?";
}

ExperimentKind experiment_from_string(const std::string& name) {
  if (name == "hover") return ExperimentKind::kHover;
  if (name == "fast_circles") return ExperimentKind::kFastCircles;
  if (name == "flipping_loops") return ExperimentKind::kFlippingLoops;
  if (name == "upside_down") return ExperimentKind::kUpsideDown;
  if (name == "error_sweep") return ExperimentKind::kErrorSweep;
  if (name == "rate_mode_recovery") return ExperimentKind::kRateModeRecovery;
  throw ConfigError("config: unknown experiment '" + name + "'");
}

ControllerMode controller_from_string(const std::string& name) {
  if (name == "torque") return ControllerMode::kTorque;
  if (name == "rate") return ControllerMode::kRate;
  if (name == "lee2010") return ControllerMode::kLee2010;
  throw ConfigError("config: unknown controller '" + name + "'");
}

RunConfig default_config(ExperimentKind kind) {
  RunConfig cfg;
  cfg.experiment = kind;
  cfg.controller = ControllerMode::kTorque;
  cfg.dt = 1e-3;
  cfg.state_weight_diag << 2.0, 2.0, 2.0, 1.0, 1.0, 1.0, 1e-3, 1e-3, 0.1;
  cfg.force_weight_diag << 0.1, 0.1, 1.0;
  cfg.rotation_gain_diag = Vec3(10.0, 10.0, 10.0);
  cfg.rate_gain_diag = Vec3(1.2, 1.2, 1.2);

  switch (kind) {
    case ExperimentKind::kHover:
      cfg.trajectory.kind = TrajectoryKind::kHover;
      cfg.duration = 10.0;
      cfg.noise_sigma = 0.0;
      cfg.vehicle.thrust_estimate_factor = 1.0;
      break;
    case ExperimentKind::kFastCircles:
      cfg.trajectory.kind = TrajectoryKind::kCircle;
      // Reference begins directly above the initial hover point.
      cfg.trajectory.circle_center = Eigen::Vector2d(-5.0, 0.0);
      cfg.duration = 20.0;
      cfg.noise_sigma = 0.04;
      cfg.vehicle.thrust_estimate_factor = 1.10;
      break;
    case ExperimentKind::kFlippingLoops:
      cfg.trajectory.kind = TrajectoryKind::kFlippingLoop;
      cfg.duration = 20.0;
      cfg.noise_sigma = 0.04;
      cfg.vehicle.thrust_estimate_factor = 1.10;
      cfg.initial_position = Vec3(0.0, 0.0, -1.5);
      break;
    case ExperimentKind::kUpsideDown:
      cfg.trajectory.kind = TrajectoryKind::kHover;
      cfg.duration = 15.0;
      cfg.noise_sigma = 0.04;
      cfg.vehicle.thrust_estimate_factor = 1.10;
      cfg.initial_attitude_axis_angle = Vec3(M_PI, 0.0, 0.0);
      break;
    case ExperimentKind::kErrorSweep:
      break;  // no dynamics
    case ExperimentKind::kRateModeRecovery:
      cfg.controller = ControllerMode::kRate;
      cfg.trajectory.kind = TrajectoryKind::kHover;
      cfg.duration = 1.5;
      cfg.noise_sigma = 0.0;
      cfg.vehicle.thrust_estimate_factor = 1.0;
      cfg.rotation_gain_diag = Vec3(5.0, 5.0, 5.0);
      break;
  }
  return cfg;
}

RunConfig load_config(const RunConfig& base, std::istream& in) {
  RunConfig cfg = base;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(line_no) +
                        " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config: empty key or value at line " +
                        std::to_string(line_no));
    }
    apply_key(&cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const RunConfig& base, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return load_config(base, in);
}

}  // namespace quadsim
