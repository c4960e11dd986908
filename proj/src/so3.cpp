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

#include "quadsim/so3.hpp"

#include <cmath>

namespace quadsim::so3 {

namespace {

Vec3 vee_unchecked(const Mat3& s) { return Vec3(s(2, 1), s(0, 2), s(1, 0)); }

}  // namespace

Mat3 hat(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(),  //
      v.z(), 0.0, -v.x(),   //
      -v.y(), v.x(), 0.0;
  return s;
}

Vec3 vee(const Mat3& skew) {
  if ((skew + skew.transpose()).norm() > kSkewSymmetryTol) {
    throw NonSkewInput("vee: input is not skew-symmetric");
  }
  return vee_unchecked(skew);
}

double orthonormality_error(const Mat3& rotation) {
  return (rotation.transpose() * rotation - Mat3::Identity()).norm();
}

bool is_rotation(const Mat3& rotation, double tol) {
  return orthonormality_error(rotation) <= tol &&
         std::abs(rotation.determinant() - 1.0) <= tol;
}

Mat3 exp_map(const Vec3& rotation_vector) {
  const double phi = rotation_vector.norm();
  // R = I + a1 * v^ + a2 * v^ v^ with a1 = sin(phi)/phi,
  // a2 = (1 - cos(phi))/phi^2.
  double a1, a2;
  if (phi < kSmallAngleEps) {
    const double p2 = phi * phi;
    a1 = 1.0 - p2 / 6.0 + p2 * p2 / 120.0;
    a2 = 0.5 - p2 / 24.0 + p2 * p2 / 720.0;
  } else {
    a1 = std::sin(phi) / phi;
    a2 = (1.0 - std::cos(phi)) / (phi * phi);
  }
  const Mat3 s = hat(rotation_vector);
  return Mat3::Identity() + a1 * s + a2 * s * s;
}

Vec3 log_map(const Mat3& rotation) {
  if (!is_rotation(rotation)) {
    throw NotARotation("log_map: input violates rotation invariants");
  }
  // sin(phi) * u, exact for any rotation.
  const Vec3 sin_axis = 0.5 * vee_unchecked(rotation - rotation.transpose());
  const double cos_phi = 0.5 * (rotation.trace() - 1.0);
  const double phi = std::atan2(sin_axis.norm(), cos_phi);

  if (phi < kSmallAngleEps) {
    // Log(R) -> (R - R^T)/2 as phi -> 0; relative error O(phi^2).
    return sin_axis;
  }
  if (phi > M_PI - kPiAngleEps) {
    // sin(phi) is too small to carry the axis. u is the eigenvector of R
    // with unit eigenvalue, extracted from (R + I)/2 which tends to u u^T.
    // Symmetrizing first keeps the eigensolver well behaved.
    const Mat3 sym = 0.5 * (0.5 * (rotation + rotation.transpose()) +
                            Mat3::Identity());
    Eigen::SelfAdjointEigenSolver<Mat3> eig(sym);
    Vec3 axis = eig.eigenvectors().col(2);  // largest eigenvalue
    axis.normalize();
    return phi * canonicalize_axis(axis);
  }
  return (phi / std::sin(phi)) * sin_axis;
}

Mat3 left_jacobian(const Vec3& rotation_vector) {
  const double phi = rotation_vector.norm();
  // J = I + a2 * v^ + a3 * v^ v^ with a2 = (1 - cos(phi))/phi^2,
  // a3 = (phi - sin(phi))/phi^3.
  double a2, a3;
  if (phi < kSmallAngleEps) {
    const double p2 = phi * phi;
    a2 = 0.5 - p2 / 24.0 + p2 * p2 / 720.0;
    a3 = 1.0 / 6.0 - p2 / 120.0 + p2 * p2 / 5040.0;
  } else {
    a2 = (1.0 - std::cos(phi)) / (phi * phi);
    a3 = (phi - std::sin(phi)) / (phi * phi * phi);
  }
  const Mat3 s = hat(rotation_vector);
  return Mat3::Identity() + a2 * s + a3 * s * s;
}

Mat3 left_jacobian_inv(const Vec3& rotation_vector) {
  const double phi = rotation_vector.norm();
  if (phi < kSmallAngleEps) {
    const double p2 = phi * phi;
    const Mat3 s = hat(rotation_vector);
    return Mat3::Identity() - 0.5 * s + (1.0 / 12.0 + p2 / 720.0) * s * s;
  }
  const Vec3 axis = rotation_vector / phi;
  const Mat3 s = hat(axis);
  if (phi >= M_PI - kPiAngleEps) {
    // Limit at phi = pi; the closed form below divides by sin(phi).
    return Mat3::Identity() - (M_PI / 2.0) * s + s * s;
  }
  const double c =
      1.0 - phi * (1.0 + std::cos(phi)) / (2.0 * std::sin(phi));
  return Mat3::Identity() - (phi / 2.0) * s + c * s * s;
}

Vec3 canonicalize_axis(const Vec3& axis) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(axis[i]) > 1e-9) {
      return axis[i] < 0.0 ? Vec3(-axis) : axis;
    }
  }
  return axis;
}

}  // namespace quadsim::so3
