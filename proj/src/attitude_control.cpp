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

#include "quadsim/attitude_control.hpp"

#include <cmath>

#include "quadsim/so3.hpp"

namespace quadsim {

namespace {

const Vec3 kE3(0.0, 0.0, 1.0);

Vec3 antisymmetric_vee(const Mat3& m) {
  return Vec3(0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)),
              0.5 * (m(1, 0) - m(0, 1)));
}

}  // namespace

Mat3 error_rotation(const Mat3& body_rotation, const Mat3& desired_rotation) {
  return body_rotation.transpose() * desired_rotation;
}

Vec3 rotation_error_log(const Mat3& error_rot) {
  return so3::log_map(error_rot);
}

Vec3 rotation_error_lee2010(const Mat3& error_rot) {
  return antisymmetric_vee(error_rot);
}

Vec3 rotation_error_lee2012(const Mat3& error_rot) {
  const double shifted_trace = 1.0 + error_rot.trace();
  if (shifted_trace <= 1e-9) {
    throw SingularTrace("rotation_error_lee2012: trace at -1");
  }
  return antisymmetric_vee(error_rot) / std::sqrt(shifted_trace);
}

Vec3 rate_error(const Mat3& error_rot, const Vec3& desired_rate,
                const Vec3& body_rate) {
  return error_rot * desired_rate - body_rate;
}

Vec3 omega_d_dot_body(const Mat3& error_rot, const Vec3& desired_rate,
                      const Vec3& desired_rate_dot, const Vec3& body_rate) {
  return error_rot * desired_rate_dot -
         body_rate.cross(error_rot * desired_rate);
}

Vec3 torque_from_errors(const RotationalError& error, const Vec3& body_rate,
                        const Vec3& omega_d_dot_b, const AttitudeGains& gains,
                        const Mat3& inertia) {
  return body_rate.cross(inertia * body_rate) + inertia * omega_d_dot_b +
         so3::left_jacobian_inv(error.rotation).transpose() *
             (gains.rotation * error.rotation) +
         gains.rate * error.rate;
}

Vec3 torque_command(const QuadState& state, const AttitudeRef& ref,
                    const AttitudeGains& gains, const Mat3& inertia) {
  const Mat3 err_rot = error_rotation(state.rotation, ref.rotation);
  RotationalError error;
  error.rotation = rotation_error_log(err_rot);
  error.rate = rate_error(err_rot, ref.rate, state.angular_rate);
  const Vec3 wdot_b =
      omega_d_dot_body(err_rot, ref.rate, ref.rate_dot, state.angular_rate);
  return torque_from_errors(error, state.angular_rate, wdot_b, gains, inertia);
}

Vec3 rate_command_from_error(const Vec3& rotation_error,
                             const Mat3& error_rot, const Vec3& desired_rate,
                             const Mat3& rotation_gain) {
  return error_rot * desired_rate +
         so3::left_jacobian(rotation_error) * (rotation_gain * rotation_error);
}

Vec3 rate_command(const Mat3& body_rotation, const AttitudeRef& ref,
                  const Mat3& rotation_gain) {
  const Mat3 err_rot = error_rotation(body_rotation, ref.rotation);
  return rate_command_from_error(rotation_error_log(err_rot), err_rot,
                                 ref.rate, rotation_gain);
}

WrenchCommand lee2010_baseline(const QuadState& state, const AttitudeRef& ref,
                               const AttitudeGains& gains, const Mat3& inertia,
                               const Vec3& force) {
  const Mat3 err_rot = error_rotation(state.rotation, ref.rotation);
  // e_R = 1/2 (R_d^T R_b - R_b^T R_d)-vee = -r~(2010); e_W = -w~.
  const Vec3 e_rot = -rotation_error_lee2010(err_rot);
  const Vec3 e_rate = -rate_error(err_rot, ref.rate, state.angular_rate);
  const Vec3 wdot_b =
      omega_d_dot_body(err_rot, ref.rate, ref.rate_dot, state.angular_rate);

  WrenchCommand cmd;
  cmd.torque = -gains.rotation * e_rot - gains.rate * e_rate +
               state.angular_rate.cross(inertia * state.angular_rate) +
               inertia * wdot_b;
  cmd.thrust = -force.dot(state.rotation * kE3);
  return cmd;
}

double lyapunov_value(const RotationalError& error, const Mat3& rotation_gain,
                      const Mat3& inertia) {
  return 0.5 * error.rotation.dot(rotation_gain * error.rotation) +
         0.5 * error.rate.dot(inertia * error.rate);
}

Vec3 LogErrorTracker::update(const Mat3& error_rot) {
  Vec3 r = so3::log_map(error_rot);
  if (has_prev_ && r.norm() > M_PI - so3::kPiAngleEps) {
    if ((-r - prev_).squaredNorm() < (r - prev_).squaredNorm()) r = -r;
  }
  prev_ = r;
  has_prev_ = true;
  return r;
}

void LogErrorTracker::reset() {
  has_prev_ = false;
  prev_.setZero();
}

}  // namespace quadsim
