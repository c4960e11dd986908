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

#ifndef QUADSIM_TRAJECTORY_HPP_
#define QUADSIM_TRAJECTORY_HPP_

#include <stdexcept>

#include "quadsim/types.hpp"

// Analytic C-infinity reference trajectories with exact derivatives through
// jerk, plus heading and heading rate. All positions are NED: a "vertical
// offset" of h meters is stored as z = -h.

namespace quadsim {

struct DegenerateHeading : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kHeadingSpeedEps = 1e-3;  // m/s

struct TrajectoryPoint {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 acceleration = Vec3::Zero();
  Vec3 jerk = Vec3::Zero();
  double heading = 0.0;       // rad
  double heading_rate = 0.0;  // rad/s
};

enum class TrajectoryKind { kHover, kCircle, kFlippingLoop };

struct TrajectorySpec {
  TrajectoryKind kind = TrajectoryKind::kHover;

  // hover
  Vec3 hover_position = Vec3::Zero();
  double hover_heading = 0.0;

  // circle in the xy-plane, phase 0 at t = 0, heading along the velocity
  Eigen::Vector2d circle_center = Eigen::Vector2d::Zero();
  double circle_diameter = 10.0;       // m
  double circle_period = 2.5;          // s
  double circle_vertical_offset = 5.0;  // m above ground (z = -offset)

  // vertical loop in the yz-plane, heading fixed at zero, phase 0 at the
  // bottom of the loop
  double loop_y_amplitude = 1.0;       // m
  double loop_z_amplitude = 1.5;       // m
  double loop_vertical_offset = 1.5;   // m (center at z = -offset)
  double loop_period = 1.4;            // s
};

TrajectoryPoint sample(const TrajectorySpec& spec, double t);

// Heading that points the body i-axis along the horizontal velocity:
// psi = atan2(vy, vx), psi_dot = (vx ay - vy ax) / (vx^2 + vy^2).
// Throws DegenerateHeading when the horizontal speed is at or below
// kHeadingSpeedEps; the caller holds its last heading in that case.
void heading_from_velocity(const Vec3& velocity, const Vec3& acceleration,
                           double* heading, double* heading_rate);

}  // namespace quadsim

#endif  // QUADSIM_TRAJECTORY_HPP_
