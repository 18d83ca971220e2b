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


#include "capot/limit.hpp"

#include <gtest/gtest.h>

#include "capot/error.hpp"
#include "support/fixtures.hpp"

namespace capot {
namespace {

void expect_kantorovich_potentials(const UnconstrainedSolution& sol, const Kernel& s) {
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
      const double r = s(i, j) + sol.potentials.u(i) + sol.potentials.v(j);
      EXPECT_LE(r, 1e-7);
      if (sol.plan(i, j) > 1e-9) EXPECT_NEAR(r, 0.0, 1e-7);
    }
  }
}

TEST(SolveUnconstrained, TwoByTwoAntidiagonal) {
  const Problem t3 = testing::t3();
  const UnconstrainedSolution sol = solve_unconstrained(t3.x(), t3.y(), t3.s());
  EXPECT_NEAR(sol.value, 1.0, 1e-12);
  EXPECT_NEAR(sol.plan(0, 1), 2.0, 1e-12);
  EXPECT_NEAR(sol.plan(0, 0), 0.0, 1e-12);
  expect_kantorovich_potentials(sol, t3.s());
}

TEST(SolveUnconstrained, ProductSurplusIsDiagonal) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const Axis axis = Axis::uniform(n);
    const Kernel s = builtin_surplus("product", axis, axis);
    const UnconstrainedSolution sol =
        solve_unconstrained(Marginal::uniform(axis), Marginal::uniform(axis), s);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_NEAR(sol.plan(i, j), i == j ? static_cast<double>(n) : 0.0, 1e-9);
      }
    }
    expect_kantorovich_potentials(sol, s);
  }
}

TEST(SolveUnconstrained, ZeroSurplus) {
  const Axis axis = Axis::uniform(3);
  const Kernel s = Kernel::constant(3, 3, 0.0, KernelKind::kSurplus);
  const UnconstrainedSolution sol =
      solve_unconstrained(Marginal::uniform(axis), Marginal(axis, {0.5, 1.0, 1.5}), s);
  EXPECT_NEAR(sol.value, 0.0, 1e-15);
  expect_kantorovich_potentials(sol, s);
}

TEST(SolveUnconstrained, Product3FrozenValue) {
  const Problem p = testing::product3(2.0);
  EXPECT_NEAR(solve_unconstrained(p.x(), p.y(), p.s()).value,
              testing::kProduct3UnconstrainedValue, 1e-12);
}

TEST(CapacityLevels, Defaults) {
  const Problem p = testing::t3();
  EXPECT_DOUBLE_EQ(min_capacity_level(p.x(), p.y()), 2.0);
  const std::vector<double> ks = default_capacity_levels(p.x(), p.y());
  ASSERT_EQ(ks.size(), 9u);
  EXPECT_DOUBLE_EQ(ks.front(), 2.0);
  EXPECT_DOUBLE_EQ(ks.back(), 512.0);
}

TEST(LimitSweep, TwoByTwoSaturatesImmediately) {
  const Problem p = testing::t3();
  const SweepResult r = limit_sweep(p.x(), p.y(), p.s(), {8.0, 2.0, 4.0});
  ASSERT_EQ(r.points.size(), 3u);
  EXPECT_EQ(r.points[0].k, 2.0);
  EXPECT_EQ(r.points[2].k, 8.0);
  for (const SweepPoint& pt : r.points) {
    EXPECT_NEAR(pt.primal_value, 1.0, 1e-12);
    EXPECT_NEAR(pt.plan_distance, 0.0, 1e-12);
    EXPECT_TRUE(pt.dual_converged);
  }
}

TEST(LimitSweep, Product3) {
  const Problem p = testing::product3(2.0);
  const SweepResult r = limit_sweep(p.x(), p.y(), p.s(), {2.0, 4.0, 8.0, 16.0, 32.0});
  EXPECT_NEAR(r.unconstrained_value, testing::kProduct3UnconstrainedValue, 1e-12);
  EXPECT_NEAR(r.points.front().primal_value, testing::kT4Value, 1e-12);
  for (std::size_t k = 1; k < r.points.size(); ++k) {
    EXPECT_GE(r.points[k].primal_value, r.points[k - 1].primal_value - 1e-12);
    EXPECT_NEAR(r.points[k].primal_value, testing::kProduct3UnconstrainedValue, 1e-12);
  }
  EXPECT_LE(std::abs(r.points.back().primal_value - r.unconstrained_value),
            std::abs(r.points.front().primal_value - r.unconstrained_value));
  for (const SweepPoint& pt : r.points) {
    EXPECT_TRUE(pt.dual_converged);
    EXPECT_LE(pt.primal_value, r.unconstrained_value + 1e-12);
    EXPECT_NEAR(pt.pos_part_mass * pt.k, pt.dual_value + pt.mean_uf + pt.mean_vg, 1e-9);
    EXPECT_LE(pt.mean_uf + pt.mean_vg, pt.mean_bound + 1e-9);
    EXPECT_LE(pt.pos_part_mass, r.decay_constant / pt.k + 1e-12);
  }
  EXPECT_LE(r.points.back().potential_l1, 2.0 * r.points.front().potential_l1);
}

TEST(LimitSweep, RejectsLowLevels) {
  const Problem p = testing::t3();
  EXPECT_THROW(limit_sweep(p.x(), p.y(), p.s(), {1.5, 4.0}), InvalidArgument);
  EXPECT_THROW(limit_sweep(p.x(), p.y(), p.s(), {}), InvalidArgument);
}

}  // namespace
}  // namespace capot
