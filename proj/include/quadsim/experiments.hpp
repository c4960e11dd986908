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

#ifndef QUADSIM_EXPERIMENTS_HPP_
#define QUADSIM_EXPERIMENTS_HPP_

#include <string>
#include <vector>

#include "quadsim/config.hpp"
#include "quadsim/simulation.hpp"

// Experiment orchestration: each suite runs its scenario, writes telemetry
// and metrics under an output directory, and reports one pass/fail line per
// acceptance check.

namespace quadsim {

struct UnknownExperiment : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::vector<CriterionResult> criteria;
  bool all_passed() const;
};

std::string format_criterion(const CriterionResult& c);

// Magnitudes of the three rotational error maps for R = Exp(phi e1) on a
// uniform grid over [0, pi]. The trace-normalized map is NaN at the last
// grid point, where it is singular.
struct ErrorSweepRow {
  double phi = 0.0;
  double lee2010 = 0.0;  // sin(phi)
  double lee2012 = 0.0;  // sin(phi/2)
  double log = 0.0;      // phi
};

std::vector<ErrorSweepRow> error_sweep_table(int n_points = 1001);
void write_error_sweep_csv(const std::vector<ErrorSweepRow>& rows,
                           const std::string& path);

// Rate-mode attitude regulation from 180-degree error: for each random
// axis u, starts at R = Exp(pi u) with the desired rotation fixed at the
// identity and the commanded rate followed exactly.
struct RateRecoveryStats {
  int axes = 0;
  double max_escape_time = 0.0;      // first ||r~|| < pi - 0.01, worst axis
  double worst_bound_margin = 0.0;   // min over t > 0.05 of bound - ||r~||
  TelemetryLog exemplar;             // first axis
};

RateRecoveryStats rate_mode_recovery(const RunConfig& config, int n_axes);

// Runs the named experiment (taken from config.experiment), writes
// artifacts under out_dir, and evaluates its acceptance checks.
SuiteResult run_experiment_suite(const RunConfig& config,
                                 const std::string& out_dir);

}  // namespace quadsim

#endif  // QUADSIM_EXPERIMENTS_HPP_
