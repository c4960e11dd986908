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

#ifndef QUADSIM_SIMULATION_HPP_
#define QUADSIM_SIMULATION_HPP_

#include "quadsim/config.hpp"
#include "quadsim/rigid_body.hpp"
#include "quadsim/telemetry.hpp"
#include "quadsim/types.hpp"

// Closed-loop simulation: trajectory -> position LQR -> attitude reference
// -> attitude controller -> mixer (controller-side matrix) -> plant (true
// matrix, throttle noise). Control and plant advance together at 1/dt.

namespace quadsim {

struct RunResult {
  TelemetryLog log;
  RunMetrics metrics;
};

QuadState initial_state(const RunConfig& config);

// Runs the configured experiment's closed loop. A NonFiniteState from the
// plant is caught and reported through metrics.diverged / divergence_time
// with the log truncated at the point of failure.
RunResult run(const RunConfig& config);

// Plant step under the instantaneous-rate assumption: the rotation follows
// the commanded rate exactly, R <- R Exp(w_c dt), while position and
// velocity integrate the applied thrust along the rotating attitude.
QuadState step_rate_mode(const QuadState& state, double thrust,
                         const Vec3& rate_cmd, double dt,
                         const VehicleParams& params);

}  // namespace quadsim

#endif  // QUADSIM_SIMULATION_HPP_
