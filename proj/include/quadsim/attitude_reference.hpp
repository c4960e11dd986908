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

#ifndef QUADSIM_ATTITUDE_REFERENCE_HPP_
#define QUADSIM_ATTITUDE_REFERENCE_HPP_

#include <functional>
#include <stdexcept>

#include "quadsim/types.hpp"

// Converts a desired force vector and heading into a desired rotation,
// angular rate, angular acceleration and thrust magnitude. The desired
// k-axis (third column) always points along -f so the rotors can produce
// the force; the heading constrains the rotation about it.

namespace quadsim {

struct DegenerateForce : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HeadingParallel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kForceEps = 1e-3;   // N, free-fall singularity
inline constexpr double kCrossEps = 1e-6;   // heading parallel to k-axis

struct AttitudeRef {
  Mat3 rotation = Mat3::Identity();  // desired frame -> inertial
  Vec3 rate = Vec3::Zero();          // rad/s, desired frame
  Vec3 rate_dot = Vec3::Zero();      // rad/s^2
  double thrust = 0.0;               // N
};

// Columns (i_d, j_d, k_d): k_d = -f/||f||, j_d = k_d x s_d normalized with
// s_d = (cos psi, sin psi, 0), i_d = j_d x k_d. Throws DegenerateForce when
// ||f|| <= kForceEps and HeadingParallel when ||k_d x s_d|| <= kCrossEps.
Mat3 desired_rotation(const Vec3& force, double heading);

// Same construction with an explicit heading shape vector s_d; used to
// resolve HeadingParallel by substituting the previous j_d.
Mat3 desired_rotation_with_shape(const Vec3& force, const Vec3& shape);

// Angular rate of the desired frame, (R_d^T Rd_dot)-vee, from the analytic
// time derivatives of the column construction.
Vec3 desired_rates(const Vec3& force, const Vec3& force_dot, double heading,
                   double heading_rate);

Vec3 desired_rates_with_shape(const Vec3& force, const Vec3& force_dot,
                              const Vec3& shape, const Vec3& shape_dot);

// Central finite difference of a rate sampler; the trajectory tuple stops
// at jerk, so the rate derivative is not available analytically.
Vec3 desired_rate_derivative(const std::function<Vec3(double)>& rate_at,
                             double t, double step = 1e-4);

// T = ||f||, not the projection onto the current body axis.
double thrust_magnitude(const Vec3& force);

}  // namespace quadsim

#endif  // QUADSIM_ATTITUDE_REFERENCE_HPP_
