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

#include "quadsim/trajectory.hpp"

#include <cmath>

namespace quadsim {

namespace {

TrajectoryPoint sample_hover(const TrajectorySpec& spec) {
  TrajectoryPoint p;
  p.position = spec.hover_position;
  p.heading = spec.hover_heading;
  return p;
}

TrajectoryPoint sample_circle(const TrajectorySpec& spec, double t) {
  const double r = 0.5 * spec.circle_diameter;
  const double om = 2.0 * M_PI / spec.circle_period;
  const double th = om * t;
  const double c = std::cos(th);
  const double s = std::sin(th);

  TrajectoryPoint p;
  p.position << spec.circle_center.x() + r * c,
      spec.circle_center.y() + r * s, -spec.circle_vertical_offset;
  p.velocity << -r * om * s, r * om * c, 0.0;
  p.acceleration << -r * om * om * c, -r * om * om * s, 0.0;
  p.jerk << r * om * om * om * s, -r * om * om * om * c, 0.0;
  heading_from_velocity(p.velocity, p.acceleration, &p.heading,
                        &p.heading_rate);
  return p;
}

TrajectoryPoint sample_loop(const TrajectorySpec& spec, double t) {
  const double om = 2.0 * M_PI / spec.loop_period;
  const double th = om * t;
  const double ay = spec.loop_y_amplitude;
  const double az = spec.loop_z_amplitude;
  const double c = std::cos(th);
  const double s = std::sin(th);

  TrajectoryPoint p;
  p.position << 0.0, ay * s, -spec.loop_vertical_offset + az * c;
  p.velocity << 0.0, ay * om * c, -az * om * s;
  p.acceleration << 0.0, -ay * om * om * s, -az * om * om * c;
  p.jerk << 0.0, -ay * om * om * om * c, az * om * om * om * s;
  return p;  // commanded heading stays zero
}

}  // namespace

TrajectoryPoint sample(const TrajectorySpec& spec, double t) {
  switch (spec.kind) {
    case TrajectoryKind::kHover:
      return sample_hover(spec);
    case TrajectoryKind::kCircle:
      return sample_circle(spec, t);
    case TrajectoryKind::kFlippingLoop:
      return sample_loop(spec, t);
  }
  throw std::logic_error("sample: unhandled trajectory kind");
}

void heading_from_velocity(const Vec3& velocity, const Vec3& acceleration,
                           double* heading, double* heading_rate) {
  const double vx = velocity.x();
  const double vy = velocity.y();
  const double speed_sq = vx * vx + vy * vy;
  if (speed_sq <= kHeadingSpeedEps * kHeadingSpeedEps) {
    throw DegenerateHeading("heading_from_velocity: horizontal speed too low");
  }
  *heading = std::atan2(vy, vx);
  *heading_rate =
      (vx * acceleration.y() - vy * acceleration.x()) / speed_sq;
}

}  // namespace quadsim
