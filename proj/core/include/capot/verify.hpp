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

#ifndef CAPOT_VERIFY_HPP_
#define CAPOT_VERIFY_HPP_

#include <cstddef>
#include <string_view>
#include <vector>

#include "capot/grid.hpp"
#include "capot/potentials.hpp"

namespace capot {

// I(u, v) minus the integrated surplus of the plan. Non-negative for every
// feasible plan; zero exactly when the pair is jointly optimal. Throws
// InvalidArgument when the plan is not feasible.
double weak_duality_gap(const TransportPlan& plan, const DualPotentials& potentials,
                        const Problem& problem);

enum class CellClass { kZero, kMiddle, kSaturated };

std::string_view to_string(CellClass c);

struct SlacknessViolation {
  std::size_t i;
  std::size_t j;
  CellClass cell_class;
  double reduced = 0.0;   // s_ij + u_i + v_j
  double residual = 0.0;  // amount by which the required sign fails
};

struct SlacknessReport {
  double gap = 0.0;
  std::size_t n_zero_ok = 0;
  std::size_t n_mid_ok = 0;
  std::size_t n_sat_ok = 0;
  std::vector<SlacknessViolation> violations;
  double max_violation = 0.0;
  bool optimal = false;
};

inline constexpr double kDefaultSlacknessTol = 1e-6;

// Classifies cells relative to their capacity (h <= tol hbar is empty,
// h >= (1 - tol) hbar is saturated, otherwise middle) and checks
// s + u + v <= tol, |s + u + v| <= tol and s + u + v >= -tol respectively.
// The pair is optimal when every cell passes and gap <= tol.
SlacknessReport verify_slackness(const TransportPlan& plan,
                                 const DualPotentials& potentials,
                                 const Problem& problem,
                                 double tol = kDefaultSlacknessTol);

}  // namespace capot

#endif  // CAPOT_VERIFY_HPP_
