// Copyright 2026 The capot Authors
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


// Command-line front end; see README.md for the flag grammar.

#include <iostream>

#include "CLI11.hpp"
#include "capot_cli/run.hpp"

namespace {

using capot::cli::Command;
using capot::cli::RunConfig;

void add_common(CLI::App* sub, RunConfig& config) {
  sub->add_option("--input", config.input_path, "Problem JSON")->required();
  sub->add_option("--report", config.report_path, "Also write the JSON report here");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capot: capacity-constrained optimal transport"};
  app.require_subcommand(1);
  RunConfig config;

  auto* feasible = app.add_subcommand("feasible", "Max-flow feasibility check with cut certificate");
  add_common(feasible, config);
  feasible->add_option("--scale", config.scale, "Check plans under scale * hbar")
      ->capture_default_str();
  feasible->add_flag("--oracle", config.oracle, "Cross-check by rectangle enumeration");
  feasible->callback([&] { config.command = Command::kFeasible; });

  auto* solve = app.add_subcommand("solve", "Primal optimum by the transport simplex");
  add_common(solve, config);
  solve->add_option("--plan", config.plan_path, "Write the optimal plan as CSV");
  solve->add_flag("--oracle", config.oracle, "Cross-check with the exact rational LP");
  solve->add_option("--oracle-tol", config.oracle_tol, "Allowed |value - oracle|")
      ->capture_default_str();
  solve->callback([&] { config.command = Command::kSolve; });

  auto* dual = app.add_subcommand("dual", "Minimize the dual functional");
  add_common(dual, config);
  dual->add_flag("--target-from-primal", config.target_from_primal,
                 "Use the primal optimum as step target and stopping gap");
  dual->add_option("--max-iter", config.max_iter, "Iteration cap")->capture_default_str();
  dual->add_option("--tol", config.tol, "Gap tolerance")->capture_default_str();
  dual->add_option("--step-floor", config.step_floor, "Stop when a/sqrt(t) drops below")
      ->capture_default_str();
  dual->callback([&] { config.command = Command::kDual; });

  auto* verify = app.add_subcommand("verify", "Complementary slackness certificate");
  add_common(verify, config);
  verify->add_option("--plan", config.plan_path, "Plan CSV")->required();
  verify->add_option("--potentials", config.potentials_path, "Potentials JSON")->required();
  verify->add_option("--tol", config.tol, "Slackness and gap tolerance")->capture_default_str();
  verify->callback([&] { config.command = Command::kVerify; });

  auto* sweep = app.add_subcommand("sweep", "Capacity sweep towards the unconstrained limit");
  add_common(sweep, config);
  sweep->add_option("--ks", config.ks, "Capacity levels (default K * 2^0..2^8)")->delimiter(',');
  sweep->add_option("--max-iter", config.max_iter, "Dual iteration cap per level")
      ->capture_default_str();
  sweep->callback([&] { config.command = Command::kSweep; });

  auto* generate = app.add_subcommand("generate", "Write a synthetic problem");
  generate->add_option("--kind", config.kind, "uniform_product_cap | random_feasible | random_tight")
      ->capture_default_str();
  generate->add_option("--m", config.m, "Cells in X")->capture_default_str();
  generate->add_option("--n", config.n, "Cells in Y")->capture_default_str();
  generate->add_option("--seed", config.seed, "Random seed")->capture_default_str();
  generate->add_option("--output", config.output_path, "Destination (default stdout)");
  generate->callback([&] { config.command = Command::kGenerate; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : capot::cli::kExitInputError;
  }
  return capot::cli::run(config, std::cout, std::cerr);
}
