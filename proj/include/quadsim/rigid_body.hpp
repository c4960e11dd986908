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

#ifndef QUADSIM_RIGID_BODY_HPP_
#define QUADSIM_RIGID_BODY_HPP_

#include <random>
#include <stdexcept>

#include "quadsim/types.hpp"

// Quadrotor rigid-body dynamics in a north-east-down inertial frame
// (gravity along +e3, rotors thrust along -body z), motor mixing for an
// X configuration, and a structure-preserving RK4 integrator that advances
// the rotation through the exponential map.

namespace quadsim {

struct DegenerateGeometry : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonFiniteState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VehicleParams {
  double mass = 1.0;          // kg
  double gravity = 9.81;      // m/s^2
  Mat3 inertia = Vec3(0.07, 0.07, 0.12).asDiagonal();  // kg m^2
  double arm_length = 0.25;         // m, rotor to center
  double rotor_max_thrust = 9.81;   // N
  double rotor_max_torque = 5.0;    // N m, reaction torque about body z
  // The controller builds its mixing matrix with rotor_max_thrust scaled by
  // this factor; the plant always uses the true value.
  double thrust_estimate_factor = 1.0;
};

// State tuple (p, v, R, omega): inertial position and velocity,
// body-to-inertial rotation, body-frame angular rate.
struct QuadState {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Mat3 rotation = Mat3::Identity();
  Vec3 angular_rate = Vec3::Zero();

  bool all_finite() const;
};

struct WrenchCommand {
  double thrust = 0.0;  // N, total along -body z
  Vec3 torque = Vec3::Zero();  // N m, body frame
};

// Four throttles, each in [0, 1] once saturated.
using MotorCommand = Vec4;

struct StateDerivative {
  Vec3 position_dot;
  Vec3 velocity_dot;
  Vec3 body_rate;  // drives the rotation update
  Vec3 angular_rate_dot;
};

// Rows map throttles to (T, tau_x, tau_y, tau_z). Rotors sit on +-45 deg
// diagonals at arm_length from the center with alternating spin direction:
//   1: front-right, 2: back-left (both +yaw reaction),
//   3: front-left, 4: back-right (both -yaw reaction).
// Throws DegenerateGeometry when any parameter is non-positive.
Mat4 build_mixing_matrix(double arm_length, double rotor_max_thrust,
                         double rotor_max_torque);
Mat4 build_mixing_matrix(const VehicleParams& params);
// Same geometry with rotor_max_thrust * thrust_estimate_factor.
Mat4 build_controller_mixing_matrix(const VehicleParams& params);

WrenchCommand mix(const MotorCommand& throttles, const Mat4& mixing);

// M^-1 (T, tau) clamped componentwise to [0, 1]; infeasible wrenches are
// absorbed by the saturation.
MotorCommand unmix_and_saturate(const WrenchCommand& wrench,
                                const Mat4& mixing);

StateDerivative state_derivative(const QuadState& state,
                                 const WrenchCommand& wrench,
                                 const VehicleParams& params);

// One RK4 step of dt seconds. Gaussian throttle noise (std noise_sigma,
// re-clamped to [0,1]) is applied first when noise_sigma > 0, then the
// throttles are mixed through the true mixing matrix, which is held
// constant over the step. The rotation advances as R * Exp(theta) where
// theta integrates the body rate through the inverse right Jacobian, so the
// result stays on the manifold to roundoff.
// Throws NonFiniteState if the result diverged.
QuadState step(const QuadState& state, const MotorCommand& throttles,
               double dt, const VehicleParams& params,
               std::mt19937_64* rng = nullptr, double noise_sigma = 0.0);

// Variant for externally-imposed motion: integrates the given wrench with
// no throttle stage (used by tests and the attitude-only experiments).
QuadState step_wrench(const QuadState& state, const WrenchCommand& wrench,
                      double dt, const VehicleParams& params);

}  // namespace quadsim

#endif  // QUADSIM_RIGID_BODY_HPP_
