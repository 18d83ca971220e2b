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

#ifndef CAPOT_FEASIBILITY_HPP_
#define CAPOT_FEASIBILITY_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "capot/grid.hpp"

namespace capot {

// A product set A x B of cells, stored as sorted index lists.
struct Rectangle {
  std::vector<std::size_t> a;  // indices into X
  std::vector<std::size_t> b;  // indices into Y

  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

// Outcome of a feasibility check for plans bounded by scale * hbar.
//
// The max-flow route carries exactly one of `plan` (feasible) or
// `rectangle` (infeasible, with its positive `deficit`). The enumeration
// oracle never builds a plan and reports only the rectangle.
struct FeasibilityCertificate {
  bool feasible = false;
  std::optional<TransportPlan> plan;
  std::optional<Rectangle> rectangle;
  std::optional<double> deficit;
  // Total flow routed from sources to sinks; the enumeration oracle reports
  // 1 - max(0, max_deficit) here.
  double flow_value = 0.0;
  // Largest Levin deficit found. For max flow this is 1 - flow_value.
  double max_deficit = 0.0;
};

inline constexpr double kFlowTolerance = 1e-12;
inline constexpr double kFeasibilityTol = 1e-9;

// f(A) + g(B) - 1 - scale * integral of hbar over A x B.
double levin_deficit(const Problem& problem, double scale, const Rectangle& rect);

// Decides whether some plan h with marginals f, g satisfies
// h <= scale * hbar. Builds the source / X / Y / sink network with masses as
// capacities and runs highest-label push-relabel. On failure the source side
// of a minimum cut yields the rectangle (A, Y minus B'), whose deficit is
// 1 - max flow.
FeasibilityCertificate check_feasibility(const Problem& problem, double scale = 1.0);

inline constexpr std::size_t kMaxLevinEnumerationAxis = 12;

// Exhaustive search over all 2^m * 2^n rectangles for the largest deficit.
// Throws TooLargeError when m or n exceeds kMaxLevinEnumerationAxis.
FeasibilityCertificate brute_force_levin(const Problem& problem, double scale = 1.0);

}  // namespace capot

#endif  // CAPOT_FEASIBILITY_HPP_
