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


#ifndef CAPOT_CLI_RUN_HPP_
#define CAPOT_CLI_RUN_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace capot::cli {

enum class Command { kFeasible, kSolve, kDual, kVerify, kSweep, kGenerate };

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitNotReached = 3;

struct RunConfig {
  Command command = Command::kSolve;
  std::filesystem::path input_path;
  double tol = 1e-6;
  std::size_t max_iter = 50000;
  // feasible: also enumerate rectangles; solve: also run the rational LP.
  bool oracle = false;
  double oracle_tol = 1e-9;
  std::optional<std::filesystem::path> report_path;

  // feasible
  double scale = 1.0;
  // solve: where to write the plan; verify: where to read it.
  std::optional<std::filesystem::path> plan_path;
  // verify
  std::optional<std::filesystem::path> potentials_path;
  // dual
  bool target_from_primal = false;
  double step_floor = 1e-10;
  // sweep; empty means K * {1, 2, ..., 256}.
  std::vector<double> ks;
  // generate
  std::string kind = "random_feasible";
  std::size_t m = 8;
  std::size_t n = 8;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> output_path;
};

// Throws capot::InvalidArgument when a numeric field is out of range.
void validate(const RunConfig& config);

// Executes one command. The JSON report goes to `out` (and to report_path
// when set); diagnostics go to `err`. Returns one of the exit codes above.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace capot::cli

#endif  // CAPOT_CLI_RUN_HPP_
