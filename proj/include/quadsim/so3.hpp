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

#ifndef QUADSIM_SO3_HPP_
#define QUADSIM_SO3_HPP_

#include <stdexcept>

#include "quadsim/types.hpp"

// Exact, singularity-safe SO(3) operations on plain 3x3 matrices.
//
// Rotation matrices are body-to-inertial unless noted. Tangent vectors are
// axis-angle (rotation vector) elements of R^3 with angle phi = ||v|| and
// unit axis u = v/phi. log_map returns the canonical representative with
// phi in [0, pi]; at phi = pi, where Exp(pi*u) = Exp(-pi*u), the axis sign
// is fixed so that the first component with magnitude above 1e-9 is
// positive.

namespace quadsim::so3 {

// Branch thresholds. Below kSmallAngleEps the trig ratios are evaluated by
// 4th-order Taylor series; above kPiAngleEps short of pi the log switches to
// the eigenvector branch and the inverse left Jacobian to its limit at pi.
inline constexpr double kSmallAngleEps = 1e-6;
inline constexpr double kPiAngleEps = 1e-6;
inline constexpr double kSkewSymmetryTol = 1e-9;
inline constexpr double kRotationTol = 1e-9;

struct NonSkewInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotARotation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Skew-symmetric matrix of v, so that hat(a) * b = a x b.
Mat3 hat(const Vec3& v);

// Inverse of hat. Throws NonSkewInput if ||S + S^T||_F exceeds
// kSkewSymmetryTol.
Vec3 vee(const Mat3& skew);

// ||R^T R - I||_F; zero for an exact rotation.
double orthonormality_error(const Mat3& rotation);

// True when the orthonormality error and |det - 1| are within tol.
bool is_rotation(const Mat3& rotation, double tol = kRotationTol);

// Rodrigues formula. Any finite input is accepted; angles beyond pi wrap by
// periodicity of the trig terms.
Mat3 exp_map(const Vec3& rotation_vector);

// Inverse of exp_map, canonical range [0, pi]. Near zero uses the limit
// (R - R^T)/2; near pi the axis comes from the dominant eigenvector of
// (R + I)/2 with the canonical sign. Throws NotARotation.
Vec3 log_map(const Mat3& rotation);

// Left Jacobian of SO(3): d/dt Exp(r) = (J_l(r) rdot)^ Exp(r).
Mat3 left_jacobian(const Vec3& rotation_vector);

// Inverse of the left Jacobian; finite on [0, pi], with the closed-form
// limit I - (pi/2) u^ + u^ u^ at phi = pi.
Mat3 left_jacobian_inv(const Vec3& rotation_vector);

// Flips the sign of u, if needed, so the first component with magnitude
// above 1e-9 is positive.
Vec3 canonicalize_axis(const Vec3& axis);

}  // namespace quadsim::so3

#endif  // QUADSIM_SO3_HPP_
