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

#include "quadsim/lqr.hpp"

#include <algorithm>
#include <cmath>

namespace quadsim {

namespace {

const Vec3 kE3(0.0, 0.0, 1.0);

bool is_hurwitz(const Eigen::MatrixXd& m) {
  const Eigen::VectorXcd eigs = Eigen::EigenSolver<Eigen::MatrixXd>(m, false)
                                    .eigenvalues();
  for (int i = 0; i < eigs.size(); ++i) {
    if (eigs[i].real() >= 0.0) return false;
  }
  return true;
}

double care_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                     const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                     const Eigen::MatrixXd& P) {
  const Eigen::MatrixXd BtP = B.transpose() * P;
  return (A.transpose() * P + P * A -
          BtP.transpose() * R.llt().solve(BtP) + Q)
      .norm();
}

}  // namespace

void augmented_matrices(double mass, Mat9* A, Mat9x3* B) {
  if (mass <= 0.0) throw std::invalid_argument("augmented_matrices: mass");
  A->setZero();
  A->block<3, 3>(0, 3) = Mat3::Identity();  // e_p_dot = e_v
  A->block<3, 3>(6, 0) = Mat3::Identity();  // e_i_dot = e_p
  B->setZero();
  B->block<3, 3>(3, 0) = Mat3::Identity() / mass;
}

int controllability_rank(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  const Eigen::Index n = A.rows();
  Eigen::MatrixXd ctrb(n, n * B.cols());
  Eigen::MatrixXd block = B;
  for (Eigen::Index k = 0; k < n; ++k) {
    ctrb.middleCols(k * B.cols(), B.cols()) = block;
    block = A * block;
  }
  return static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(ctrb).rank());
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& F,
                               const Eigen::MatrixXd& Q) {
  const Eigen::Index n = F.rows();
  // vec(F^T P + P F) = (I (x) F^T + F^T (x) I) vec(P), column-major.
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(n * n, n * n);
  const Eigen::MatrixXd Ft = F.transpose();
  for (Eigen::Index j = 0; j < n; ++j) {
    lhs.block(j * n, j * n, n, n) += Ft;          // I (x) F^T
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index k = 0; k < n; ++k) {
        lhs(j * n + k, i * n + k) += Ft(j, i);    // F^T (x) I
      }
    }
  }
  Eigen::VectorXd rhs(n * n);
  for (Eigen::Index j = 0; j < n; ++j) rhs.segment(j * n, n) = -Q.col(j);
  const Eigen::VectorXd p = lhs.partialPivLu().solve(rhs);
  Eigen::MatrixXd P(n, n);
  for (Eigen::Index j = 0; j < n; ++j) P.col(j) = p.segment(j * n, n);
  return 0.5 * (P + P.transpose());
}

CareSolution solve_care(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                        const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B.rows() != n || Q.rows() != n || Q.cols() != n ||
      R.rows() != B.cols() || R.cols() != B.cols()) {
    throw std::invalid_argument("solve_care: inconsistent dimensions");
  }
  Eigen::LLT<Eigen::MatrixXd> r_chol(R);
  if (r_chol.info() != Eigen::Success) {
    throw std::invalid_argument("solve_care: R must be positive definite");
  }

  // Bass: with beta > max Re(eig A), (A + beta I) Z + Z (A + beta I)^T =
  // 2 B B^T has Z > 0 for controllable (A, B) and K0 = B^T Z^-1 stabilizes.
  const double beta = A.norm() + 1.0;
  const Eigen::MatrixXd shifted = A + beta * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd Z =
      solve_lyapunov(shifted.transpose(), -2.0 * B * B.transpose());
  Eigen::MatrixXd K = Z.partialPivLu().solve(B).transpose();

  constexpr int kMaxIterations = 100;
  constexpr double kResidualTarget = 1e-10;
  CareSolution sol;
  for (int it = 1; it <= kMaxIterations; ++it) {
    const Eigen::MatrixXd closed = A - B * K;
    const Eigen::MatrixXd P =
        solve_lyapunov(closed, Q + K.transpose() * R * K);
    K = r_chol.solve(B.transpose() * P);
    sol.P = P;
    sol.K = K;
    sol.iterations = it;
    sol.residual = care_residual(A, B, Q, R, P);
    if (sol.residual < kResidualTarget) break;
  }
  if (!(sol.residual < 1e-8) || !is_hurwitz(A - B * sol.K)) {
    throw NoConvergence("solve_care: Kleinman iteration did not converge");
  }
  return sol;
}

LqrGain design_position_gain(double mass, const LqrWeights& weights) {
  if ((weights.state - weights.state.transpose()).norm() > 1e-12 ||
      (weights.force - weights.force.transpose()).norm() > 1e-12) {
    throw std::invalid_argument("design_position_gain: weights not symmetric");
  }
  Mat9 A;
  Mat9x3 B;
  augmented_matrices(mass, &A, &B);
  const CareSolution sol = solve_care(A, B, weights.state, weights.force);
  LqrGain gain;
  gain.K = sol.K;
  gain.P = sol.P;
  return gain;
}

Vec3 force_command(const ErrorState& error, const TrajectoryPoint& ref,
                   const LqrGain& gain, const VehicleParams& params) {
  const Vec3 equilibrium =
      params.mass * (-params.gravity * kE3 + ref.acceleration);
  return -gain.K * error.stacked() + equilibrium;
}

Vec3 force_derivative(const ErrorState& error, const Vec3& force,
                      const TrajectoryPoint& ref, const LqrGain& gain,
                      const VehicleParams& params) {
  Vec9 e_dot;
  e_dot << error.velocity,
      params.gravity * kE3 + force / params.mass - ref.acceleration,
      error.position;
  return -gain.K * e_dot + params.mass * ref.jerk;
}

Vec3 update_integral(const Vec3& integral, const Vec3& error_prev,
                     const Vec3& error_now, double dt, double limit) {
  if (dt <= 0.0) throw std::invalid_argument("update_integral: dt");
  Vec3 out = integral + 0.5 * dt * (error_prev + error_now);
  for (int i = 0; i < 3; ++i) out[i] = std::clamp(out[i], -limit, limit);
  return out;
}

}  // namespace quadsim
