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

#ifndef QUADSIM_TELEMETRY_HPP_
#define QUADSIM_TELEMETRY_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "quadsim/config.hpp"
#include "quadsim/types.hpp"

namespace quadsim {

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One record per control step. Attitude is logged both as a unit quaternion
// (w, x, y, z) and as ZYX Euler angles unwrapped for continuity, so a
// flipping vehicle shows roll growing monotonically past pi.
struct TelemetryRecord {
  double t = 0.0;
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec4 quaternion = Vec4(1.0, 0.0, 0.0, 0.0);
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;
  Vec3 body_rate = Vec3::Zero();
  Vec3 rotation_error = Vec3::Zero();  // r~
  Vec3 rate_error = Vec3::Zero();      // w~
  Vec3 force = Vec3::Zero();
  double thrust = 0.0;
  Vec3 torque = Vec3::Zero();
  Vec4 throttle = Vec4::Zero();
  double lyapunov = 0.0;
};

struct TelemetryLog {
  std::vector<TelemetryRecord> records;
};

// Header, in column order. Values are written with 17 significant digits so
// re-runs with the same seed are byte-identical.
extern const char* const kTelemetryCsvHeader;

void write_csv(const TelemetryLog& log, const std::string& path);

struct RunMetrics {
  double convergence_time_altitude = 0.0;  // first |z - z_d| <= band; inf if never
  double steady_state_rms_position_error = 0.0;
  double steady_state_mean_abs_roll = 0.0;  // rad, unwrapped
  double steady_state_max_abs_roll = 0.0;
  double max_abs_roll = 0.0;                // whole run, unwrapped
  double max_altitude_drop = 0.0;           // m below the starting altitude
  bool recovered = false;  // ||p|| and ||v|| small, held recovery_hold_time
  double final_lyapunov = 0.0;
  bool diverged = false;
  double divergence_time = 0.0;
};

// Deterministic reduction of a telemetry log against its reference
// trajectory. The steady-state window is the last half of the run.
RunMetrics compute_metrics(const TelemetryLog& log, const RunConfig& config);

void write_metrics(const RunMetrics& metrics, const std::string& path);

// Shepperd's method; w >= 0.
Vec4 quaternion_from_rotation(const Mat3& rotation);

// ZYX (yaw-pitch-roll) angles of a body-to-inertial rotation, wrapped.
Vec3 euler_zyx_from_rotation(const Mat3& rotation);

// Keeps each Euler angle continuous across the +-pi seam.
class EulerUnwrapper {
 public:
  Vec3 update(const Mat3& rotation);

 private:
  bool has_prev_ = false;
  Vec3 prev_ = Vec3::Zero();
};

}  // namespace quadsim

#endif  // QUADSIM_TELEMETRY_HPP_
