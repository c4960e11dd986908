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

#include "quadsim/attitude_reference.hpp"

#include <cmath>

#include "quadsim/so3.hpp"

namespace quadsim {

namespace {

Vec3 heading_shape(double heading) {
  return Vec3(std::cos(heading), std::sin(heading), 0.0);
}

Vec3 heading_shape_dot(double heading, double heading_rate) {
  return heading_rate * Vec3(-std::sin(heading), std::cos(heading), 0.0);
}

}  // namespace

Mat3 desired_rotation_with_shape(const Vec3& force, const Vec3& shape) {
  const double f_norm = force.norm();
  if (f_norm <= kForceEps) {
    throw DegenerateForce("desired_rotation: force magnitude too small");
  }
  const Vec3 k_d = -force / f_norm;
  const Vec3 cross = k_d.cross(shape);
  const double cross_norm = cross.norm();
  if (cross_norm <= kCrossEps) {
    throw HeadingParallel("desired_rotation: heading parallel to k-axis");
  }
  const Vec3 j_d = cross / cross_norm;
  const Vec3 i_d = j_d.cross(k_d);
  Mat3 rotation;
  rotation.col(0) = i_d;
  rotation.col(1) = j_d;
  rotation.col(2) = k_d;
  return rotation;
}

Mat3 desired_rotation(const Vec3& force, double heading) {
  return desired_rotation_with_shape(force, heading_shape(heading));
}

Vec3 desired_rates_with_shape(const Vec3& force, const Vec3& force_dot,
                              const Vec3& shape, const Vec3& shape_dot) {
  const double f_norm = force.norm();
  if (f_norm <= kForceEps) {
    throw DegenerateForce("desired_rates: force magnitude too small");
  }
  const Vec3 n = force / f_norm;
  const Vec3 k_d = -n;
  // d/dt (f/||f||) projects fdot off the radial direction.
  const Vec3 k_d_dot =
      -(force_dot - n * n.dot(force_dot)) / f_norm;

  const Vec3 cross = k_d.cross(shape);
  const double cross_norm = cross.norm();
  if (cross_norm <= kCrossEps) {
    throw HeadingParallel("desired_rates: heading parallel to k-axis");
  }
  const Vec3 cross_dot = k_d_dot.cross(shape) + k_d.cross(shape_dot);
  const Vec3 j_d = cross / cross_norm;
  const Vec3 j_d_dot =
      (cross_dot - j_d * j_d.dot(cross_dot)) / cross_norm;

  const Vec3 i_d = j_d.cross(k_d);
  const Vec3 i_d_dot = j_d_dot.cross(k_d) + j_d.cross(k_d_dot);

  Mat3 rotation, rotation_dot;
  rotation.col(0) = i_d;
  rotation.col(1) = j_d;
  rotation.col(2) = k_d;
  rotation_dot.col(0) = i_d_dot;
  rotation_dot.col(1) = j_d_dot;
  rotation_dot.col(2) = k_d_dot;

  const Mat3 omega_hat = rotation.transpose() * rotation_dot;
  // Exact skewness holds analytically; average off roundoff asymmetry.
  return Vec3(0.5 * (omega_hat(2, 1) - omega_hat(1, 2)),
              0.5 * (omega_hat(0, 2) - omega_hat(2, 0)),
              0.5 * (omega_hat(1, 0) - omega_hat(0, 1)));
}

Vec3 desired_rates(const Vec3& force, const Vec3& force_dot, double heading,
                   double heading_rate) {
  return desired_rates_with_shape(force, force_dot, heading_shape(heading),
                                  heading_shape_dot(heading, heading_rate));
}

Vec3 desired_rate_derivative(const std::function<Vec3(double)>& rate_at,
                             double t, double step) {
  return (rate_at(t + step) - rate_at(t - step)) / (2.0 * step);
}

double thrust_magnitude(const Vec3& force) { return force.norm(); }

}  // namespace quadsim
