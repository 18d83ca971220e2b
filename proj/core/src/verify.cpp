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

#include "capot/verify.hpp"

#include <algorithm>
#include <cmath>

#include "capot/dual.hpp"
#include "capot/error.hpp"

namespace capot {

double weak_duality_gap(const TransportPlan& plan, const DualPotentials& potentials,
                        const Problem& problem) {
  require_feasible_plan(plan, problem);
  return eval_I(potentials, problem) - integrate_surplus(plan, problem);
}

std::string_view to_string(CellClass c) {
  switch (c) {
    case CellClass::kZero:
      return "zero";
    case CellClass::kMiddle:
      return "middle";
    case CellClass::kSaturated:
      return "saturated";
  }
  return "unknown";
}

SlacknessReport verify_slackness(const TransportPlan& plan,
                                 const DualPotentials& potentials,
                                 const Problem& problem, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("slackness tolerance must be positive");
  if (plan.rows() != problem.m() || plan.cols() != problem.n()) {
    throw DimensionError("plan does not match the problem dimensions");
  }
  SlacknessReport report;
  report.gap = eval_I(potentials, problem) - integrate_surplus(plan, problem);
  for (std::size_t i = 0; i < problem.m(); ++i) {
    for (std::size_t j = 0; j < problem.n(); ++j) {
      const double h = plan(i, j);
      const double cap = problem.hbar()(i, j);
      const double r = problem.s()(i, j) + potentials.u(i) + potentials.v(j);
      CellClass cls;
      double residual;
      if (h <= tol * cap) {
        cls = CellClass::kZero;
        residual = r;
      } else if (h >= (1.0 - tol) * cap) {
        cls = CellClass::kSaturated;
        residual = -r;
      } else {
        cls = CellClass::kMiddle;
        residual = std::abs(r);
      }
      if (residual <= tol) {
        switch (cls) {
          case CellClass::kZero:
            ++report.n_zero_ok;
            break;
          case CellClass::kMiddle:
            ++report.n_mid_ok;
            break;
          case CellClass::kSaturated:
            ++report.n_sat_ok;
            break;
        }
        continue;
      }
      report.violations.push_back({i, j, cls, r, residual});
      report.max_violation = std::max(report.max_violation, residual);
    }
  }
  report.optimal = report.violations.empty() && report.gap <= tol;
  return report;
}

}  // namespace capot
