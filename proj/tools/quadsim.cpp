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

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "quadsim/config.hpp"
#include "quadsim/experiments.hpp"

namespace {

// Exit codes: 0 all criteria pass, 1 criterion failure, 2 config/IO error.
constexpr int kExitPass = 0;
constexpr int kExitCriterionFailure = 1;
constexpr int kExitConfigError = 2;

int run_suite(const std::string& experiment, const std::string& config_path,
              std::uint64_t seed, bool seed_given, const std::string& out) {
  quadsim::RunConfig config =
      quadsim::default_config(quadsim::experiment_from_string(experiment));
  if (!config_path.empty()) {
    config = quadsim::load_config_file(config, config_path);
  }
  if (seed_given) config.seed = seed;
  config.validate();

  const quadsim::SuiteResult result =
      quadsim::run_experiment_suite(config, out);
  for (const quadsim::CriterionResult& c : result.criteria) {
    std::cout << quadsim::format_criterion(c) << "\n";
  }
  return result.all_passed() ? kExitPass : kExitCriterionFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadsim: quadrotor flight-dynamics simulator and geometric "
               "control experiments"};
  app.require_subcommand(1);

  std::string experiment;
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;

  CLI::App* run_cmd =
      app.add_subcommand("run", "run an experiment and its checks");
  run_cmd->add_option("--experiment", experiment,
                      "hover | fast_circles | flipping_loops | upside_down | "
                      "error_sweep | rate_mode_recovery")
      ->required();
  run_cmd->add_option("--config", config_path,
                      "key = value config file applied over the experiment "
                      "defaults");
  CLI::Option* seed_opt =
      run_cmd->add_option("--seed", seed, "RNG seed override");
  run_cmd->add_option("--out", out_dir, "output directory (default: out)");

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "write the rotational error-function sweep table");
  sweep_cmd
      ->add_option("--experiment", experiment, "must be error_sweep")
      ->required();
  sweep_cmd->add_option("--out", out_dir, "output directory (default: out)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep_cmd->parsed() && experiment != "error_sweep") {
      std::cerr << "sweep supports only --experiment error_sweep\n";
      return kExitConfigError;
    }
    return run_suite(experiment, config_path, seed, seed_opt->count() > 0,
                     out_dir);
  } catch (const quadsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const quadsim::IoFailure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}
