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

#ifndef QUADSIM_CONFIG_HPP_
#define QUADSIM_CONFIG_HPP_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "quadsim/rigid_body.hpp"
#include "quadsim/trajectory.hpp"
#include "quadsim/types.hpp"

// Run configuration and the flat key = value config file format. Unknown
// keys are rejected; the full key list lives in the README and in
// config.cpp.

namespace quadsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ControllerMode { kTorque, kRate, kLee2010 };

enum class ExperimentKind {
  kHover,
  kFastCircles,
  kFlippingLoops,
  kUpsideDown,
  kErrorSweep,
  kRateModeRecovery,
};

struct RunConfig {
  ExperimentKind experiment = ExperimentKind::kHover;
  ControllerMode controller = ControllerMode::kTorque;

  double dt = 1e-3;       // s, control and plant step
  double duration = 10.0;  // s
  double noise_sigma = 0.0;
  std::uint64_t seed = 1;

  VehicleParams vehicle;

  Vec9 state_weight_diag = Vec9::Ones();
  Vec3 force_weight_diag = Vec3::Ones();
  double integral_limit = 5.0;

  Vec3 rotation_gain_diag = Vec3(10.0, 10.0, 10.0);
  Vec3 rate_gain_diag = Vec3(1.2, 1.2, 1.2);
  // Global-attractiveness mode: K_w = J instead of rate_gain_diag.
  bool rate_gain_equals_inertia = false;

  TrajectorySpec trajectory;

  Vec3 initial_position = Vec3::Zero();
  Vec3 initial_velocity = Vec3::Zero();
  Vec3 initial_attitude_axis_angle = Vec3::Zero();
  Vec3 initial_rate = Vec3::Zero();

  // Altitude band and recovery thresholds used by the metrics.
  double altitude_band = 0.25;        // m
  double recovery_radius = 0.5;       // m
  double recovery_speed = 0.5;        // m/s
  double recovery_hold_time = 1.0;    // s

  Mat3 rotation_gain() const { return rotation_gain_diag.asDiagonal(); }
  Mat3 rate_gain() const {
    return rate_gain_equals_inertia ? vehicle.inertia
                                    : Mat3(rate_gain_diag.asDiagonal());
  }

  void validate() const;  // throws ConfigError
};

const char* to_string(ExperimentKind kind);
const char* to_string(ControllerMode mode);
ExperimentKind experiment_from_string(const std::string& name);
ControllerMode controller_from_string(const std::string& name);

// Baseline configuration for each experiment: the simulation experiments
// carry throttle noise sigma = 0.04 and a +10% controller-side thrust
// estimate; the paper's weights and gains; initial states as documented.
RunConfig default_config(ExperimentKind kind);

// Applies "key = value" overrides from a config file on top of a default
// config. '#' starts a comment; blank lines are skipped; vector values are
// whitespace-separated. Throws ConfigError on unknown keys or bad values.
RunConfig load_config(const RunConfig& base, std::istream& in);
RunConfig load_config_file(const RunConfig& base, const std::string& path);

}  // namespace quadsim

#endif  // QUADSIM_CONFIG_HPP_
