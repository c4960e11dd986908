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

#ifndef QUADSIM_ATTITUDE_CONTROL_HPP_
#define QUADSIM_ATTITUDE_CONTROL_HPP_

#include <stdexcept>

#include "quadsim/attitude_reference.hpp"
#include "quadsim/rigid_body.hpp"
#include "quadsim/types.hpp"

// Attitude control on SO(3). The rotational error is the logarithm of the
// desired-to-body rotation, r~ = Log(R_d^b), which grows linearly with the
// geodesic angle and stays meaningful through 180 degrees. Two alternative
// error maps are provided for comparison: the classic (R - R^T)-vee form,
// whose magnitude sin(phi) collapses at 180 degrees, and its
// trace-normalized variant with magnitude sin(phi/2).
//
// torque_command implements
//   tau = w x Jw + J wdot_d^b + J_l(r~)^-T K_r r~ + K_w w~,
// which dissipates V = 1/2 r~^T K_r r~ + 1/2 w~^T J w~ at rate w~^T K_w w~.
// rate_command implements the inner-loop variant
//   w_c = R_d^b w_d + J_l(r~) K_r r~,
// which drives 1/2 ||r~||^2 down exponentially when the commanded rate is
// achieved instantaneously. Both stay finite at r~ = pi u.

namespace quadsim {

struct SingularTrace : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RotationalError {
  Vec3 rotation = Vec3::Zero();  // r~, radians, ||.|| in [0, pi]
  Vec3 rate = Vec3::Zero();      // w~ = R_d^b w_d - w_b, rad/s
};

struct AttitudeGains {
  Mat3 rotation = Mat3::Identity() * 10.0;  // K_r, SPD
  Mat3 rate = Mat3::Identity() * 1.2;       // K_w, SPD
};

// R_d^b = R_b^T R_d: rotation from the desired frame to the body frame.
Mat3 error_rotation(const Mat3& body_rotation, const Mat3& desired_rotation);

// r~ = Log(R_d^b), canonical representative.
Vec3 rotation_error_log(const Mat3& error_rot);

// 1/2 (R - R^T)-vee; magnitude sin(phi) on a single axis.
Vec3 rotation_error_lee2010(const Mat3& error_rot);

// (R - R^T)-vee / (2 sqrt(1 + tr R)); magnitude sin(phi/2). Throws
// SingularTrace as tr R -> -1 (phi -> pi).
Vec3 rotation_error_lee2012(const Mat3& error_rot);

// w~ = R_d^b w_d - w_b, the rate of the desired frame relative to the body,
// in body coordinates.
Vec3 rate_error(const Mat3& error_rot, const Vec3& desired_rate,
                const Vec3& body_rate);

// wdot_{d/i}^b = R_d^b wdot_d - w_b^ R_d^b w_d.
Vec3 omega_d_dot_body(const Mat3& error_rot, const Vec3& desired_rate,
                      const Vec3& desired_rate_dot, const Vec3& body_rate);

// Torque law from precomputed errors; the caller may have adjusted the sign
// of r~ for axis continuity at the pi branch.
Vec3 torque_from_errors(const RotationalError& error, const Vec3& body_rate,
                        const Vec3& omega_d_dot_b, const AttitudeGains& gains,
                        const Mat3& inertia);

// Convenience wrapper computing the canonical errors from the state.
Vec3 torque_command(const QuadState& state, const AttitudeRef& ref,
                    const AttitudeGains& gains, const Mat3& inertia);

Vec3 rate_command_from_error(const Vec3& rotation_error,
                             const Mat3& error_rot, const Vec3& desired_rate,
                             const Mat3& rotation_gain);

Vec3 rate_command(const Mat3& body_rotation, const AttitudeRef& ref,
                  const Mat3& rotation_gain);

// Geometric controller of the comparison baseline: proportional term on the
// sin(phi) error map and projected thrust T = -f . (R_b e3).
WrenchCommand lee2010_baseline(const QuadState& state, const AttitudeRef& ref,
                               const AttitudeGains& gains, const Mat3& inertia,
                               const Vec3& force);

// V = 1/2 r~^T K_r r~ + 1/2 w~^T J w~.
double lyapunov_value(const RotationalError& error, const Mat3& rotation_gain,
                      const Mat3& inertia);

// Log of the error rotation with axis-sign continuity across the pi branch:
// when ||r~|| lands in the eigenvector branch, the sign closer to the
// previous sample wins. Library log_map stays canonical; this lives in the
// control loop only.
class LogErrorTracker {
 public:
  Vec3 update(const Mat3& error_rot);
  void reset();

 private:
  bool has_prev_ = false;
  Vec3 prev_ = Vec3::Zero();
};

}  // namespace quadsim

#endif  // QUADSIM_ATTITUDE_CONTROL_HPP_
