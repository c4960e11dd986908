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

#include "quadsim/rigid_body.hpp"

#include <cmath>

#include "quadsim/so3.hpp"

namespace quadsim {

namespace {

const Vec3 kE3(0.0, 0.0, 1.0);

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

}  // namespace

bool QuadState::all_finite() const {
  return position.allFinite() && velocity.allFinite() &&
         rotation.allFinite() && angular_rate.allFinite();
}

Mat4 build_mixing_matrix(double arm_length, double rotor_max_thrust,
                         double rotor_max_torque) {
  if (arm_length <= 0.0 || rotor_max_thrust <= 0.0 ||
      rotor_max_torque <= 0.0) {
    throw DegenerateGeometry("mixing matrix: non-positive geometry");
  }
  const double f = rotor_max_thrust;
  const double a = arm_length / std::sqrt(2.0) * f;  // roll/pitch column
  const double q = rotor_max_torque;
  Mat4 m;
  // rotors:  1 FR     2 BL     3 FL     4 BR
  m << f, f, f, f,      //
      -a, a, a, -a,     // tau_x = -y_i * F
      a, -a, a, -a,     // tau_y =  x_i * F
      q, q, -q, -q;     // spin reaction
  return m;
}

Mat4 build_mixing_matrix(const VehicleParams& params) {
  return build_mixing_matrix(params.arm_length, params.rotor_max_thrust,
                             params.rotor_max_torque);
}

Mat4 build_controller_mixing_matrix(const VehicleParams& params) {
  return build_mixing_matrix(
      params.arm_length,
      params.rotor_max_thrust * params.thrust_estimate_factor,
      params.rotor_max_torque);
}

WrenchCommand mix(const MotorCommand& throttles, const Mat4& mixing) {
  const Vec4 w = mixing * throttles;
  return {w[0], w.tail<3>()};
}

MotorCommand unmix_and_saturate(const WrenchCommand& wrench,
                                const Mat4& mixing) {
  Vec4 w;
  w << wrench.thrust, wrench.torque;
  Vec4 throttles = mixing.partialPivLu().solve(w);
  for (int i = 0; i < 4; ++i) throttles[i] = clamp01(throttles[i]);
  return throttles;
}

StateDerivative state_derivative(const QuadState& state,
                                 const WrenchCommand& wrench,
                                 const VehicleParams& params) {
  StateDerivative d;
  d.position_dot = state.velocity;
  d.velocity_dot = params.gravity * kE3 -
                   (wrench.thrust / params.mass) * (state.rotation * kE3);
  d.body_rate = state.angular_rate;
  const Vec3 momentum = params.inertia * state.angular_rate;
  d.angular_rate_dot = params.inertia.ldlt().solve(
      -state.angular_rate.cross(momentum) + wrench.torque);
  return d;
}

namespace {

// RK4 on (p, v, theta, omega) where R(t) = R0 * Exp(theta), theta(0) = 0.
// Rdot = R omega^ gives thetadot = J_r(theta)^-1 omega = J_l(theta)^-T omega,
// so the stage rates carry the dexp correction and the combined update is a
// genuine 4th-order step on the manifold.
QuadState integrate_rk4(const QuadState& x0, const WrenchCommand& wrench,
                        double dt, const VehicleParams& params) {
  struct Rates {
    Vec3 p, v, theta, w;
  };
  const auto eval = [&](const Vec3& p, const Vec3& v, const Vec3& theta,
                        const Vec3& w) -> Rates {
    QuadState s;
    s.position = p;
    s.velocity = v;
    s.rotation = x0.rotation * so3::exp_map(theta);
    s.angular_rate = w;
    const StateDerivative d = state_derivative(s, wrench, params);
    return {d.position_dot, d.velocity_dot,
            so3::left_jacobian_inv(theta).transpose() * w, d.angular_rate_dot};
  };

  const Rates k1 = eval(x0.position, x0.velocity, Vec3::Zero(),
                        x0.angular_rate);
  const Rates k2 =
      eval(x0.position + 0.5 * dt * k1.p, x0.velocity + 0.5 * dt * k1.v,
           0.5 * dt * k1.theta, x0.angular_rate + 0.5 * dt * k1.w);
  const Rates k3 =
      eval(x0.position + 0.5 * dt * k2.p, x0.velocity + 0.5 * dt * k2.v,
           0.5 * dt * k2.theta, x0.angular_rate + 0.5 * dt * k2.w);
  const Rates k4 = eval(x0.position + dt * k3.p, x0.velocity + dt * k3.v,
                        dt * k3.theta, x0.angular_rate + dt * k3.w);

  QuadState out;
  out.position =
      x0.position + dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
  out.velocity =
      x0.velocity + dt / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
  const Vec3 theta =
      dt / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
  out.rotation = x0.rotation * so3::exp_map(theta);
  out.angular_rate =
      x0.angular_rate + dt / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w);
  return out;
}

}  // namespace

QuadState step(const QuadState& state, const MotorCommand& throttles,
               double dt, const VehicleParams& params, std::mt19937_64* rng,
               double noise_sigma) {
  MotorCommand applied = throttles;
  if (noise_sigma > 0.0) {
    if (rng == nullptr) {
      throw std::invalid_argument("step: noise requested without an rng");
    }
    std::normal_distribution<double> noise(0.0, noise_sigma);
    for (int i = 0; i < 4; ++i) applied[i] = clamp01(applied[i] + noise(*rng));
  }
  const WrenchCommand wrench = mix(applied, build_mixing_matrix(params));
  return step_wrench(state, wrench, dt, params);
}

QuadState step_wrench(const QuadState& state, const WrenchCommand& wrench,
                      double dt, const VehicleParams& params) {
  if (dt <= 0.0) throw std::invalid_argument("step: dt must be positive");
  QuadState out = integrate_rk4(state, wrench, dt, params);
  if (!out.all_finite()) {
    throw NonFiniteState("step: state diverged");
  }
  return out;
}

}  // namespace quadsim
