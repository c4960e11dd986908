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
#include <random>

#include <doctest.h>

#include "quadsim/so3.hpp"
#include "quadsim/trajectory.hpp"

using namespace quadsim;

namespace {

// Smooth force/heading profile along the circle reference used by the
// finite-difference oracles: the equilibrium force of the trajectory.
struct CircleProfile {
  TrajectorySpec spec;
  double mass = 1.0;
  double gravity = 9.81;

  CircleProfile() { spec.kind = TrajectoryKind::kCircle; }

  Vec3 force(double t) const {
    const TrajectoryPoint p = sample(spec, t);
    return mass * (-gravity * Vec3(0, 0, 1) + p.acceleration);
  }
  Vec3 force_dot(double t) const { return mass * sample(spec, t).jerk; }
  double heading(double t) const { return sample(spec, t).heading; }
  double heading_rate(double t) const { return sample(spec, t).heading_rate; }

  Mat3 rotation(double t) const {
    return desired_rotation(force(t), heading(t));
  }
  Vec3 rates(double t) const {
    return desired_rates(force(t), force_dot(t), heading(t), heading_rate(t));
  }
};

}  // namespace

TEST_CASE("hover force with zero heading gives the identity") {
  const Mat3 r = desired_rotation(Vec3(0, 0, -9.81), 0.0);
  CHECK((r - Mat3::Identity()).norm() < 1e-15);
}

TEST_CASE("hover force with quarter heading is a pure yaw") {
  const Mat3 r = desired_rotation(Vec3(0, 0, -9.81), M_PI / 2);
  Mat3 expected;
  expected << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  CHECK((r - expected).norm() < 1e-15);
}

TEST_CASE("constructed rotation is orthonormal with the force column") {
  std::mt19937_64 rng(51);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> psi(-M_PI, M_PI);
  for (int i = 0; i < 500; ++i) {
    Vec3 f(n(rng), n(rng), n(rng));
    if (f.norm() < 0.1) continue;
    f *= 5.0;
    const double heading = psi(rng);
    Mat3 r;
    try {
      r = desired_rotation(f, heading);
    } catch (const HeadingParallel&) {
      continue;  // measure-zero configuration, tested separately
    }
    CHECK(so3::orthonormality_error(r) < 1e-12);
    CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((r.col(2) + f.normalized()).norm() < 1e-12);
    CHECK(std::abs(r.col(1).dot(r.col(2))) < 1e-12);
    CHECK((r.col(0) - r.col(1).cross(r.col(2))).norm() < 1e-12);
  }
}

TEST_CASE("tiny force is degenerate") {
  CHECK_THROWS_AS(desired_rotation(Vec3(0, 0, -1e-4), 0.0), DegenerateForce);
}

TEST_CASE("heading parallel to the force axis is rejected") {
  // k_d = (1, 0, 0) is horizontal and aligned with s_d at zero heading.
  CHECK_THROWS_AS(desired_rotation(Vec3(-5.0, 0, 0), 0.0), HeadingParallel);
  // Substituting an out-of-plane shape vector resolves it.
  const Mat3 r = desired_rotation_with_shape(Vec3(-5.0, 0, 0), Vec3(0, 1, 0));
  CHECK(so3::orthonormality_error(r) < 1e-12);
}

TEST_CASE("static hover has zero desired rates") {
  const Vec3 f(0, 0, -9.81);
  CHECK(desired_rates(f, Vec3::Zero(), 0.3, 0.0).norm() < 1e-14);
}

TEST_CASE("constant-rate yaw in hover spins about e3") {
  const Vec3 f(0, 0, -9.81);
  for (double psi : {0.0, 0.4, -1.2}) {
    const Vec3 w = desired_rates(f, Vec3::Zero(), psi, 0.7);
    CHECK((w - Vec3(0, 0, 0.7)).norm() < 1e-12);
  }
}

TEST_CASE("desired rates advance the rotation to second order") {
  const CircleProfile prof;
  const double h = 1e-5;
  for (double t = 0.1; t < 2.4; t += 0.37) {
    const Mat3 r = prof.rotation(t);
    const Vec3 w = prof.rates(t);
    // R(t+h) ~ R(t) Exp(h w); the defect is O(h^2).
    const double defect =
        (prof.rotation(t + h) - r * so3::exp_map(h * w)).norm();
    CHECK(defect < 5.0 * h * h * (1.0 + w.norm() * w.norm()));
    // and the vee of R^T dR/dt matches w directly
    const Mat3 omega_fd =
        r.transpose() * (prof.rotation(t + h) - prof.rotation(t - h)) /
        (2 * h);
    const Vec3 w_fd(0.5 * (omega_fd(2, 1) - omega_fd(1, 2)),
                    0.5 * (omega_fd(0, 2) - omega_fd(2, 0)),
                    0.5 * (omega_fd(1, 0) - omega_fd(0, 1)));
    CHECK((w - w_fd).norm() < 1e-5);
  }
}

TEST_CASE("rate derivative is zero for constant rate profiles") {
  const auto constant = [](double) { return Vec3(0.1, -0.2, 0.3); };
  CHECK(desired_rate_derivative(constant, 1.0).norm() == 0.0);
  const auto hover = [](double) { return Vec3::Zero(); };
  CHECK(desired_rate_derivative(hover, 1.0).norm() == 0.0);
}

TEST_CASE("rate derivative matches the rate slope on the circle") {
  const CircleProfile prof;
  const auto sampler = [&](double t) { return prof.rates(t); };
  for (double t = 0.2; t < 2.0; t += 0.43) {
    const Vec3 wd = desired_rate_derivative(sampler, t);
    // second-order consistency against a smaller-step difference
    const double h = 1e-6;
    const Vec3 ref = (prof.rates(t + h) - prof.rates(t - h)) / (2 * h);
    CHECK((wd - ref).norm() < 1e-4);
  }
}

TEST_CASE("thrust magnitude is the force norm") {
  CHECK(thrust_magnitude(Vec3(0, 0, -9.81)) == doctest::Approx(9.81));
  CHECK(thrust_magnitude(Vec3::Zero()) == 0.0);
  std::mt19937_64 rng(52);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Vec3 f(n(rng), n(rng), n(rng));
    const Mat3 r = so3::exp_map(Vec3(n(rng), n(rng), n(rng)));
    CHECK(thrust_magnitude(r * f) ==
          doctest::Approx(thrust_magnitude(f)).epsilon(1e-12));
  }
}
