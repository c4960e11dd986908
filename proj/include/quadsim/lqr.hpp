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

#ifndef QUADSIM_LQR_HPP_
#define QUADSIM_LQR_HPP_

#include <stdexcept>

#include "quadsim/rigid_body.hpp"
#include "quadsim/trajectory.hpp"
#include "quadsim/types.hpp"

// Integrator-augmented LQR on the position error dynamics. The augmented
// error state is e_a = (e_p, e_v, e_i) with e_i the clamped integral of the
// position error; the force law is f = -K e_a + m(-g e3 + pdd_d).

namespace quadsim {

struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ErrorState {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 integral = Vec3::Zero();

  Vec9 stacked() const {
    Vec9 e;
    e << position, velocity, integral;
    return e;
  }
};

struct LqrWeights {
  Mat9 state = Mat9::Identity();   // W_e, symmetric positive definite
  Mat3 force = Mat3::Identity();   // W_f, symmetric positive definite
};

struct LqrGain {
  Mat3x9 K = Mat3x9::Zero();
  Mat9 P = Mat9::Zero();  // CARE solution
};

// Exact block structure: d/dt (e_p, e_v, e_i) = A e_a + B f~ with
// A = [0 I 0; 0 0 0; I 0 0], B = [0; I/m; 0].
void augmented_matrices(double mass, Mat9* A, Mat9x3* B);

// Rank of [B AB A^2B ...]; 9 for the augmented system above.
int controllability_rank(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

struct CareSolution {
  Eigen::MatrixXd P;
  Eigen::MatrixXd K;  // R^-1 B^T P
  double residual = 0.0;
  int iterations = 0;
};

// Solves A^T P + P A - P B R^-1 B^T P + Q = 0 for stabilizable (A, B) by
// Kleinman-Newton iteration with vectorized Lyapunov inner solves. The
// initial stabilizing gain comes from Bass's shifted Lyapunov construction.
// Throws NoConvergence when the residual does not reach 1e-8.
CareSolution solve_care(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                        const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R);

// Solves F^T P + P F = -Q for P (F need not be symmetric; solution is
// symmetrized). Exposed for tests.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& F,
                               const Eigen::MatrixXd& Q);

// CARE gain for the augmented position system; validates that the closed
// loop is Hurwitz and the residual is below 1e-8.
LqrGain design_position_gain(double mass, const LqrWeights& weights);

Vec3 force_command(const ErrorState& error, const TrajectoryPoint& ref,
                   const LqrGain& gain, const VehicleParams& params);

// Model-based rate of the force command: fdot = -K ea_dot + m * jerk with
// ea_dot = (e_v, g e3 + f/m - pdd_d, e_p).
Vec3 force_derivative(const ErrorState& error, const Vec3& force,
                      const TrajectoryPoint& ref, const LqrGain& gain,
                      const VehicleParams& params);

// Trapezoidal accumulation over one step, clamped componentwise to
// [-limit, limit].
Vec3 update_integral(const Vec3& integral, const Vec3& error_prev,
                     const Vec3& error_now, double dt, double limit);

}  // namespace quadsim

#endif  // QUADSIM_LQR_HPP_
