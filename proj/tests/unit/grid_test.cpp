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


#include "capot/grid.hpp"

#include <gtest/gtest.h>

#include "capot/error.hpp"
#include "support/fixtures.hpp"

namespace capot {
namespace {

TEST(Axis, UniformMidpoints) {
  const Axis axis = Axis::uniform(4);
  ASSERT_EQ(axis.cell_count(), 4u);
  EXPECT_DOUBLE_EQ(axis.weight(2), 0.25);
  EXPECT_DOUBLE_EQ(axis.midpoint(0), 0.125);
  EXPECT_DOUBLE_EQ(axis.midpoint(3), 0.875);
}

TEST(Axis, CentersFollowWidths) {
  const Axis axis({0.5, 0.25, 0.25});
  EXPECT_DOUBLE_EQ(axis.midpoint(0), 0.25);
  EXPECT_DOUBLE_EQ(axis.midpoint(1), 0.625);
  EXPECT_DOUBLE_EQ(axis.midpoint(2), 0.875);
}

TEST(Axis, RejectsBadWeights) {
  EXPECT_THROW(Axis::uniform(0), InvalidArgument);
  EXPECT_THROW(Axis({0.5, 0.4}), InvalidArgument);
  EXPECT_THROW(Axis({1.5, -0.5}), InvalidArgument);
  EXPECT_THROW(Axis({0.5, 0.5}, {0.1}), DimensionError);
}

TEST(Marginal, MassAndPositivity) {
  const Marginal f(Axis::uniform(2), {1.5, 0.5});
  EXPECT_DOUBLE_EQ(f.mass(0), 0.75);
  EXPECT_DOUBLE_EQ(f.total_mass(), 1.0);
  EXPECT_TRUE(f.strictly_positive());
  const Marginal g(Axis::uniform(2), {2.0, 0.0});
  EXPECT_FALSE(g.strictly_positive());
  EXPECT_THROW(Marginal(Axis::uniform(2), {1.0, 0.5}), InvalidArgument);
  EXPECT_THROW(Marginal(Axis::uniform(2), {1.0}), DimensionError);
  EXPECT_THROW(Marginal(Axis::uniform(2), {2.5, -0.5}), InvalidArgument);
}

TEST(Kernel, CapacityMustBeNonNegative) {
  Matrix m(1, 2);
  m(0, 1) = -1.0;
  EXPECT_THROW(Kernel(m, KernelKind::kCapacity), InvalidArgument);
  EXPECT_NO_THROW(Kernel(m, KernelKind::kSurplus));
  EXPECT_DOUBLE_EQ(Kernel(m, KernelKind::kSurplus).max_abs(), 1.0);
}

TEST(BuiltinSurplus, ProductOnTwoCells) {
  const Axis axis = Axis::uniform(2);
  const Kernel s = builtin_surplus("product", axis, axis);
  EXPECT_DOUBLE_EQ(s(0, 0), 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(s(0, 1), 3.0 / 16.0);
  EXPECT_DOUBLE_EQ(s(1, 0), 3.0 / 16.0);
  EXPECT_DOUBLE_EQ(s(1, 1), 9.0 / 16.0);
  EXPECT_EQ(builtin_surplus("xy", axis, axis).values(), s.values());
}

TEST(BuiltinSurplus, ProductOnThreeCells) {
  const Axis axis = Axis::uniform(3);
  EXPECT_DOUBLE_EQ(builtin_surplus("product", axis, axis)(0, 2), 5.0 / 36.0);
}

TEST(BuiltinSurplus, NegSqDistVanishesOnDiagonal) {
  const Axis axis = Axis::uniform(5);
  const Kernel s = builtin_surplus("neg_sq_dist", axis, axis);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(s(i, i), 0.0);
  EXPECT_DOUBLE_EQ(s(0, 4), -0.5 * 0.8 * 0.8);
  EXPECT_THROW(builtin_surplus("cosine", axis, axis), InvalidArgument);
}

TEST(Problem, Validation) {
  const Axis a2 = Axis::uniform(2);
  const Axis a3 = Axis::uniform(3);
  const Kernel cap = Kernel::constant(2, 2, 1.0, KernelKind::kCapacity);
  const Kernel s = Kernel::constant(2, 2, 0.0, KernelKind::kSurplus);
  EXPECT_THROW(Problem(Marginal::uniform(a2), Marginal::uniform(a3), cap, s), DimensionError);
  EXPECT_THROW(Problem(Marginal::uniform(a2), Marginal::uniform(a2), s, s), InvalidArgument);
  EXPECT_THROW(Problem(Marginal::uniform(a2), Marginal::uniform(a2), cap, s, 1.0),
               InvalidArgument);
  const Problem zero_row(Marginal(a2, {2.0, 0.0}), Marginal::uniform(a2), cap, s);
  EXPECT_THROW(zero_row.require_positive_marginals(), InvalidArgument);
  EXPECT_NO_THROW(testing::t1().require_positive_marginals());
}

TEST(Plan, FeasibilityResiduals) {
  const Problem p = testing::t1();
  EXPECT_TRUE(is_feasible_plan(TransportPlan(Matrix(2, 2, 1.0)), p));
  Matrix over(2, 2, 1.0);
  over(0, 0) = 1.5;
  over(0, 1) = 0.5;
  const PlanResiduals r = plan_residuals(TransportPlan(over), p);
  EXPECT_DOUBLE_EQ(r.bound, 0.5);
  EXPECT_DOUBLE_EQ(r.marginal, 0.25);
  EXPECT_THROW(require_feasible_plan(TransportPlan(over), p), InvalidArgument);
}

TEST(IntegrateSurplus, T1IsMeanOfS) {
  EXPECT_DOUBLE_EQ(integrate_surplus(TransportPlan(Matrix(2, 2, 1.0)), testing::t1()), 0.5);
}

TEST(IntegrateSurplus, ZeroSurplus) {
  const Axis axis = Axis::uniform(3);
  const Problem p(Marginal::uniform(axis), Marginal::uniform(axis),
                  Kernel::constant(3, 3, 2.0, KernelKind::kCapacity),
                  Kernel::constant(3, 3, 0.0, KernelKind::kSurplus));
  Matrix h(3, 3, 1.0);
  h(0, 0) = 1.7;
  EXPECT_EQ(integrate_surplus(TransportPlan(h), p), 0.0);
}

TEST(IntegrateSurplus, ScalesLinearly) {
  std::mt19937_64 rng(3);
  const Problem p = testing::random_capacity_problem(5, 4, 2.0, rng);
  Matrix h(5, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double& x : h.data()) x = unit(rng);
  Matrix h3 = h;
  for (double& x : h3.data()) x *= 3.0;
  EXPECT_NEAR(integrate_surplus(TransportPlan(h3), p), 3.0 * integrate_surplus(TransportPlan(h), p),
              1e-14);
}

TEST(PlanDistance, WeightedL1) {
  const Problem p = testing::t3();
  Matrix a(2, 2, 1.0);
  Matrix b(2, 2);
  b(0, 1) = 2.0;
  b(1, 0) = 2.0;
  EXPECT_DOUBLE_EQ(plan_distance(TransportPlan(a), TransportPlan(b), p), 1.0);
}

}  // namespace
}  // namespace capot
