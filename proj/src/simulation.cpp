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

#include "quadsim/simulation.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "quadsim/attitude_control.hpp"
#include "quadsim/attitude_reference.hpp"
#include "quadsim/lqr.hpp"
#include "quadsim/so3.hpp"
#include "quadsim/trajectory.hpp"

namespace quadsim {

namespace {

const Vec3 kE3(0.0, 0.0, 1.0);

// Holds the previous reference to ride through the free-fall and
// heading-parallel singularities of the column construction.
class AttitudeRefGenerator {
 public:
  AttitudeRef update(const Vec3& force, const Vec3& force_dot, double heading,
                     double heading_rate,
                     const std::function<Vec3(double)>& rate_sampler,
                     double t, double fd_step) {
    AttitudeRef ref = prev_;
    ref.thrust = thrust_magnitude(force);
    try {
      ref.rotation = desired_rotation(force, heading);
      ref.rate = desired_rates(force, force_dot, heading, heading_rate);
    } catch (const HeadingParallel&) {
      try {
        ref.rotation = desired_rotation_with_shape(force, prev_jd_);
        ref.rate = desired_rates_with_shape(force, force_dot, prev_jd_,
                                            Vec3::Zero());
      } catch (const std::runtime_error&) {
        prev_ = ref;
        return ref;  // hold previous rotation and rate
      }
    } catch (const DegenerateForce&) {
      prev_ = ref;
      return ref;
    }
    if (t >= fd_step) {
      ref.rate_dot = desired_rate_derivative(rate_sampler, t, fd_step);
    } else {
      ref.rate_dot.setZero();
    }
    prev_jd_ = ref.rotation.col(1);
    prev_ = ref;
    return ref;
  }

 private:
  AttitudeRef prev_;
  Vec3 prev_jd_ = Vec3::UnitY();
};

MotorCommand apply_throttle_noise(const MotorCommand& throttles,
                                  std::mt19937_64* rng, double sigma) {
  if (sigma <= 0.0) return throttles;
  std::normal_distribution<double> noise(0.0, sigma);
  MotorCommand out;
  for (int i = 0; i < 4; ++i) {
    out[i] = std::clamp(throttles[i] + noise(*rng), 0.0, 1.0);
  }
  return out;
}

}  // namespace

QuadState initial_state(const RunConfig& config) {
  QuadState state;
  state.position = config.initial_position;
  state.velocity = config.initial_velocity;
  state.rotation = so3::exp_map(config.initial_attitude_axis_angle);
  state.angular_rate = config.initial_rate;
  return state;
}

QuadState step_rate_mode(const QuadState& state, double thrust,
                         const Vec3& rate_cmd, double dt,
                         const VehicleParams& params) {
  const auto accel = [&](double s) -> Vec3 {
    const Mat3 rot = state.rotation * so3::exp_map(s * rate_cmd);
    return params.gravity * kE3 - (thrust / params.mass) * (rot * kE3);
  };
  const Vec3 a1 = accel(0.0);
  const Vec3 v2 = state.velocity + 0.5 * dt * a1;
  const Vec3 a2 = accel(0.5 * dt);
  const Vec3 v3 = state.velocity + 0.5 * dt * a2;
  const Vec3 a3 = a2;  // same attitude sample at the midpoint
  const Vec3 v4 = state.velocity + dt * a3;
  const Vec3 a4 = accel(dt);

  QuadState out;
  out.position = state.position +
                 dt / 6.0 *
                     (state.velocity + 2.0 * v2 + 2.0 * v3 + v4);
  out.velocity =
      state.velocity + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
  out.rotation = state.rotation * so3::exp_map(dt * rate_cmd);
  out.angular_rate = rate_cmd;
  if (!out.all_finite()) throw NonFiniteState("step_rate_mode: diverged");
  return out;
}

RunResult run(const RunConfig& config) {
  config.validate();

  const Mat4 mixing_true = build_mixing_matrix(config.vehicle);
  const Mat4 mixing_ctrl = build_controller_mixing_matrix(config.vehicle);
  const LqrWeights weights{config.state_weight_diag.asDiagonal(),
                           config.force_weight_diag.asDiagonal()};
  const LqrGain gain = design_position_gain(config.vehicle.mass, weights);
  const AttitudeGains gains{config.rotation_gain(), config.rate_gain()};
  const Mat3 inertia = config.vehicle.inertia;
  const double g = config.vehicle.gravity;
  const double mass = config.vehicle.mass;

  std::mt19937_64 rng(config.seed);
  QuadState state = initial_state(config);
  ErrorState error;
  Vec3 prev_position_error = Vec3::Zero();
  bool have_prev_error = false;

  AttitudeRefGenerator ref_gen;
  LogErrorTracker log_tracker;
  EulerUnwrapper unwrapper;

  RunResult result;
  const std::size_t n_steps =
      static_cast<std::size_t>(std::llround(config.duration / config.dt));
  result.log.records.reserve(n_steps + 1);

  // One record per control step plus the final state at t = duration.
  for (std::size_t k = 0; k <= n_steps; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    const TrajectoryPoint ref_point = sample(config.trajectory, t);

    error.position = state.position - ref_point.position;
    error.velocity = state.velocity - ref_point.velocity;
    if (have_prev_error) {
      error.integral = update_integral(error.integral, prev_position_error,
                                       error.position, config.dt,
                                       config.integral_limit);
    } else {
      have_prev_error = true;  // integral starts at zero
    }
    prev_position_error = error.position;

    const Vec3 force = force_command(error, ref_point, gain, config.vehicle);
    const Vec3 force_dot =
        force_derivative(error, force, ref_point, gain, config.vehicle);

    // Rate sampler for the reference angular acceleration: the error state
    // is propagated linearly so the central difference of the desired rate
    // stays second-order accurate.
    const Vec9 e_now = error.stacked();
    Vec9 e_dot;
    e_dot << error.velocity, g * kE3 + force / mass - ref_point.acceleration,
        error.position;
    const auto rate_at = [&](double s) -> Vec3 {
      const TrajectoryPoint pt = sample(config.trajectory, s);
      const Vec9 e_s = e_now + (s - t) * e_dot;
      const Vec3 f_eq = mass * (-g * kE3 + pt.acceleration);
      const Vec3 f_s = -gain.K * e_s + f_eq;
      Vec9 e_dot_s;
      e_dot_s << e_s.segment<3>(3), g * kE3 + f_s / mass - pt.acceleration,
          e_s.head<3>();
      const Vec3 f_dot_s = -gain.K * e_dot_s + mass * pt.jerk;
      try {
        return desired_rates(f_s, f_dot_s, pt.heading, pt.heading_rate);
      } catch (const std::runtime_error&) {
        return Vec3::Zero();
      }
    };

    const AttitudeRef att_ref =
        ref_gen.update(force, force_dot, ref_point.heading,
                       ref_point.heading_rate, rate_at, t, 1e-4);

    const Mat3 err_rot = error_rotation(state.rotation, att_ref.rotation);
    const Vec3 r_err = log_tracker.update(err_rot);
    Vec3 w_err = rate_error(err_rot, att_ref.rate, state.angular_rate);

    WrenchCommand wrench_cmd;
    Vec3 rate_cmd = Vec3::Zero();
    double lyapunov = 0.0;
    switch (config.controller) {
      case ControllerMode::kTorque: {
        const Vec3 wdot_b = omega_d_dot_body(err_rot, att_ref.rate,
                                             att_ref.rate_dot,
                                             state.angular_rate);
        wrench_cmd.thrust = att_ref.thrust;
        wrench_cmd.torque = torque_from_errors({r_err, w_err},
                                               state.angular_rate, wdot_b,
                                               gains, inertia);
        lyapunov = lyapunov_value({r_err, w_err}, gains.rotation, inertia);
        break;
      }
      case ControllerMode::kRate: {
        rate_cmd = rate_command_from_error(r_err, err_rot, att_ref.rate,
                                           gains.rotation);
        w_err = err_rot * att_ref.rate - rate_cmd;
        wrench_cmd.thrust = att_ref.thrust;
        lyapunov = 0.5 * r_err.squaredNorm();
        break;
      }
      case ControllerMode::kLee2010: {
        wrench_cmd =
            lee2010_baseline(state, att_ref, gains, inertia, force);
        lyapunov = lyapunov_value({r_err, w_err}, gains.rotation, inertia);
        break;
      }
    }

    const MotorCommand throttles =
        unmix_and_saturate(wrench_cmd, mixing_ctrl);

    TelemetryRecord rec;
    rec.t = t;
    rec.position = state.position;
    rec.velocity = state.velocity;
    rec.quaternion = quaternion_from_rotation(state.rotation);
    const Vec3 euler = unwrapper.update(state.rotation);
    rec.roll = euler[0];
    rec.pitch = euler[1];
    rec.yaw = euler[2];
    rec.body_rate = state.angular_rate;
    rec.rotation_error = r_err;
    rec.rate_error = w_err;
    rec.force = force;
    rec.thrust = wrench_cmd.thrust;
    rec.torque = wrench_cmd.torque;
    rec.throttle = throttles;
    rec.lyapunov = lyapunov;
    result.log.records.push_back(rec);

    if (k == n_steps) break;
    try {
      if (config.controller == ControllerMode::kRate) {
        const MotorCommand noisy =
            apply_throttle_noise(throttles, &rng, config.noise_sigma);
        const WrenchCommand applied = mix(noisy, mixing_true);
        state = step_rate_mode(state, applied.thrust, rate_cmd, config.dt,
                               config.vehicle);
      } else {
        state = step(state, throttles, config.dt, config.vehicle,
                     &rng, config.noise_sigma);
      }
    } catch (const NonFiniteState&) {
      result.metrics.diverged = true;
      result.metrics.divergence_time = t;
      break;
    }
  }

  const bool diverged = result.metrics.diverged;
  const double divergence_time = result.metrics.divergence_time;
  result.metrics = compute_metrics(result.log, config);
  result.metrics.diverged = diverged;
  result.metrics.divergence_time = divergence_time;
  return result;
}

}  // namespace quadsim
