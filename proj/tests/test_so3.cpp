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
#include <random>

#include <doctest.h>

using namespace quadsim;
using namespace quadsim::so3;

namespace {

std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

Vec3 random_vector(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Vec3(u(rng), u(rng), u(rng));
}

Vec3 random_axis(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v(n(rng), n(rng), n(rng));
  while (v.norm() < 1e-6) v = Vec3(n(rng), n(rng), n(rng));
  return v.normalized();
}

// Composite Simpson quadrature of the integral form of the left Jacobian,
// int_0^1 Exp(alpha * v) dalpha. Independent of the closed form it checks.
Mat3 left_jacobian_by_quadrature(const Vec3& v, int panels = 200) {
  Mat3 sum = Mat3::Zero();
  const double h = 1.0 / panels;
  for (int i = 0; i < panels; ++i) {
    const double a = i * h;
    sum += exp_map(a * v) + 4.0 * exp_map((a + 0.5 * h) * v) +
           exp_map((a + h) * v);
  }
  return sum * (h / 6.0);
}

}  // namespace

TEST_CASE("hat of zero is the zero matrix") {
  CHECK(hat(Vec3::Zero()).isZero(0.0));
}

TEST_CASE("hat matches the componentwise definition") {
  Mat3 expected;
  expected << 0, -3, 2, 3, 0, -1, -2, 1, 0;
  CHECK((hat(Vec3(1, 2, 3)) - expected).norm() == 0.0);
}

TEST_CASE("hat is antisymmetric and hat(a)b = -hat(b)a") {
  auto rng = make_rng(11);
  for (int i = 0; i < 200; ++i) {
    const Vec3 a = random_vector(rng, 5.0);
    const Vec3 b = random_vector(rng, 5.0);
    CHECK((hat(a).transpose() + hat(a)).norm() == 0.0);
    CHECK((hat(a) * b + hat(b) * a).norm() < 1e-12);
  }
}

TEST_CASE("vee inverts hat") {
  CHECK(vee(Mat3::Zero()).isZero(0.0));
  Mat3 s;
  s << 0, -3, 2, 3, 0, -1, -2, 1, 0;
  CHECK((vee(s) - Vec3(1, 2, 3)).norm() == 0.0);

  auto rng = make_rng(12);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 v = random_vector(rng, 10.0);
    CHECK((vee(hat(v)) - v).norm() == 0.0);
  }
}

TEST_CASE("vee rejects non-skew input") {
  CHECK_THROWS_AS(vee(Mat3::Identity()), NonSkewInput);
}

TEST_CASE("exp of zero is the identity") {
  CHECK((exp_map(Vec3::Zero()) - Mat3::Identity()).norm() == 0.0);
}

TEST_CASE("exp of a half turn about x") {
  const Mat3 r = exp_map(Vec3(M_PI, 0, 0));
  CHECK((r - Vec3(1, -1, -1).asDiagonal().toDenseMatrix()).norm() < 1e-15);
}

TEST_CASE("quarter turn about e3 maps e1 to e2") {
  const Mat3 r = exp_map(Vec3(0, 0, M_PI / 2));
  CHECK((r * Vec3::UnitX() - Vec3::UnitY()).norm() < 1e-15);
}

TEST_CASE("exp lands on the manifold for any magnitude") {
  auto rng = make_rng(13);
  for (int i = 0; i < 500; ++i) {
    const Vec3 v = random_vector(rng, 8.0);  // includes ||v|| > pi
    CHECK(is_rotation(exp_map(v)));
  }
}

TEST_CASE("log of identity and of the half turn") {
  CHECK(log_map(Mat3::Identity()).isZero(0.0));
  const Vec3 r = log_map(Vec3(1, -1, -1).asDiagonal());
  CHECK((r - Vec3(M_PI, 0, 0)).norm() < 1e-12);
}

TEST_CASE("log rejects a non-rotation") {
  CHECK_THROWS_AS(log_map(2.0 * Mat3::Identity()), NotARotation);
  Mat3 reflection = Mat3::Identity();
  reflection(2, 2) = -1.0;  // orthogonal, det = -1
  CHECK_THROWS_AS(log_map(reflection), NotARotation);
}

TEST_CASE("log inverts exp away from pi") {
  auto rng = make_rng(14);
  std::uniform_real_distribution<double> mag(1e-12, M_PI - 1e-6);
  for (int i = 0; i < 10000; ++i) {
    const Vec3 v = mag(rng) * random_axis(rng);
    CHECK((log_map(exp_map(v)) - v).norm() < 1e-9);
  }
}

TEST_CASE("exp inverts log at the pi branch up to canonical sign") {
  auto rng = make_rng(15);
  for (int i = 0; i < 200; ++i) {
    const Vec3 u = random_axis(rng);
    const Vec3 r = log_map(exp_map(M_PI * u));
    CHECK(r.norm() == doctest::Approx(M_PI).epsilon(1e-12));
    const Vec3 axis = r / r.norm();
    const double align = std::abs(axis.dot(u));
    CHECK(align == doctest::Approx(1.0).epsilon(1e-9));
    // canonical sign: first significant component positive
    for (int k = 0; k < 3; ++k) {
      if (std::abs(axis[k]) > 1e-9) {
        CHECK(axis[k] > 0.0);
        break;
      }
    }
    // roundtrip through the branch
    CHECK((exp_map(r) - exp_map(M_PI * u)).norm() < 1e-9);
  }
}

TEST_CASE("axis of a half turn is a fixed eigenvector") {
  auto rng = make_rng(16);
  for (int i = 0; i < 100; ++i) {
    const Vec3 u = random_axis(rng);
    CHECK((exp_map(M_PI * u) * u - u).norm() < 1e-9);
  }
}

TEST_CASE("rotating the argument conjugates the hat map") {
  auto rng = make_rng(17);
  for (int i = 0; i < 200; ++i) {
    const Mat3 r = exp_map(random_vector(rng, 3.0));
    const Vec3 v = random_vector(rng, 5.0);
    CHECK((hat(r * v) - r * hat(v) * r.transpose()).norm() < 1e-12);
  }
}

TEST_CASE("hat squared of a unit vector is uu^T - I") {
  auto rng = make_rng(18);
  for (int i = 0; i < 100; ++i) {
    const Vec3 u = random_axis(rng);
    const Mat3 lhs = hat(u) * hat(u);
    const Mat3 rhs = -Mat3::Identity() + u * u.transpose();
    CHECK((lhs - rhs).norm() < 1e-14);
  }
}

TEST_CASE("left Jacobian limits") {
  CHECK((left_jacobian(Vec3::Zero()) - Mat3::Identity()).norm() == 0.0);
  // At pi about x the closed form has coefficients 2/pi and 1.
  const Mat3 s = hat(Vec3::UnitX());
  const Mat3 expected = Mat3::Identity() + (2.0 / M_PI) * s + s * s;
  CHECK((left_jacobian(Vec3(M_PI, 0, 0)) - expected).norm() < 1e-14);
}

TEST_CASE("left Jacobian matches its integral form") {
  auto rng = make_rng(19);
  std::uniform_real_distribution<double> mag(1e-4, M_PI);
  for (int i = 0; i < 25; ++i) {
    const Vec3 v = mag(rng) * random_axis(rng);
    CHECK((left_jacobian(v) - left_jacobian_by_quadrature(v)).norm() < 1e-6);
  }
}

TEST_CASE("inverse left Jacobian limits") {
  CHECK((left_jacobian_inv(Vec3::Zero()) - Mat3::Identity()).norm() == 0.0);
  const Mat3 s = hat(Vec3::UnitX());
  const Mat3 expected = Mat3::Identity() - (M_PI / 2.0) * s + s * s;
  CHECK((left_jacobian_inv(Vec3(M_PI, 0, 0)) - expected).norm() < 1e-14);
}

TEST_CASE("left Jacobian times its inverse is the identity") {
  auto rng = make_rng(20);
  std::uniform_real_distribution<double> mag(1e-4, M_PI);
  for (int i = 0; i < 500; ++i) {
    const Vec3 v = mag(rng) * random_axis(rng);
    CHECK((left_jacobian_inv(v) * left_jacobian(v) - Mat3::Identity())
              .norm() < 1e-9);
  }
  // pi branch included
  const Vec3 v = (M_PI - 1e-8) * random_axis(rng);
  CHECK((left_jacobian_inv(v) * left_jacobian(v) - Mat3::Identity()).norm() <
        1e-6);
}

TEST_CASE("left Jacobian fixes its own axis at pi") {
  auto rng = make_rng(21);
  for (int i = 0; i < 50; ++i) {
    const Vec3 u = random_axis(rng);
    CHECK((left_jacobian(M_PI * u) * u - u).norm() < 1e-12);
    CHECK((left_jacobian_inv(M_PI * u) * u - u).norm() < 1e-12);
  }
}

TEST_CASE("series and closed form agree at the small-angle seam") {
  // Just above the seam the closed form evaluates (1 - cos)/phi^2 with
  // heavy cancellation, so agreement is limited to ~1e-10 in absolute
  // terms; well inside every contract tolerance.
  const Vec3 u = Vec3(0.6, -0.8, 0.0);
  for (double phi : {0.9e-6, 1.1e-6}) {
    const Vec3 v = phi * u;
    const double p2 = phi * phi;
    const Mat3 ref_j = Mat3::Identity() + (0.5 - p2 / 24.0) * hat(v) +
                       (1.0 / 6.0 - p2 / 120.0) * hat(v) * hat(v);
    CHECK((left_jacobian(v) - ref_j).norm() < 1e-9);
    const Mat3 ref_exp = Mat3::Identity() + (1.0 - p2 / 6.0) * hat(v) +
                         (0.5 - p2 / 24.0) * hat(v) * hat(v);
    CHECK((exp_map(v) - ref_exp).norm() < 1e-9);
    const Mat3 ref_jinv = Mat3::Identity() - 0.5 * hat(v) +
                          (1.0 / 12.0) * hat(v) * hat(v);
    CHECK((left_jacobian_inv(v) - ref_jinv).norm() < 1e-9);
  }
}

TEST_CASE("canonicalize_axis flips on the first significant component") {
  CHECK((canonicalize_axis(Vec3(-1, 0, 0)) - Vec3(1, 0, 0)).norm() == 0.0);
  CHECK((canonicalize_axis(Vec3(0, -0.6, 0.8)) - Vec3(0, 0.6, -0.8)).norm() ==
        0.0);
  CHECK((canonicalize_axis(Vec3(1e-12, -0.6, 0.8)) -
         Vec3(-1e-12, 0.6, -0.8))
            .norm() == 0.0);
}
