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

#include <gtest/gtest.h>

#include "capot/dual.hpp"
#include "capot/error.hpp"
#include "capot/instances.hpp"
#include "capot/primal.hpp"
#include "support/fixtures.hpp"

namespace capot {
namespace {

TransportPlan antidiagonal() {
  Matrix h(2, 2);
  h(0, 1) = 2.0;
  h(1, 0) = 2.0;
  return TransportPlan(h);
}

TEST(WeakDualityGap, Examples) {
  const Problem t1 = testing::t1();
  const Problem t3 = testing::t3();
  const TransportPlan ones(Matrix(2, 2, 1.0));
  EXPECT_DOUBLE_EQ(weak_duality_gap(ones, DualPotentials::zero(t1), t1), 0.0);
  EXPECT_DOUBLE_EQ(weak_duality_gap(antidiagonal(), DualPotentials::zero(t3), t3), 0.0);
  EXPECT_DOUBLE_EQ(weak_duality_gap(ones, DualPotentials::zero(t3), t3), 0.5);
}

TEST(WeakDualityGap, RejectsInfeasiblePlan) {
  const Problem t3 = testing::t3();
  EXPECT_THROW(weak_duality_gap(TransportPlan(Matrix(2, 2, 3.0)), DualPotentials::zero(t3), t3),
               InvalidArgument);
}

TEST(VerifySlackness, T3Optimal) {
  const Problem t3 = testing::t3();
  const SlacknessReport r = verify_slackness(antidiagonal(), DualPotentials::zero(t3), t3);
  EXPECT_TRUE(r.optimal);
  EXPECT_EQ(r.n_zero_ok, 2u);
  EXPECT_EQ(r.n_sat_ok, 2u);
  EXPECT_EQ(r.n_mid_ok, 0u);
  EXPECT_TRUE(r.violations.empty());
}

TEST(VerifySlackness, T1AllSaturated) {
  const Problem t1 = testing::t1();
  const SlacknessReport r =
      verify_slackness(TransportPlan(Matrix(2, 2, 1.0)), DualPotentials::zero(t1), t1);
  EXPECT_TRUE(r.optimal);
  EXPECT_EQ(r.n_sat_ok, 4u);
}

TEST(VerifySlackness, T3ProductPlanIsNotOptimal) {
  const Problem t3 = testing::t3();
  const SlacknessReport r =
      verify_slackness(TransportPlan(Matrix(2, 2, 1.0)), DualPotentials::zero(t3), t3);
  EXPECT_FALSE(r.optimal);
  EXPECT_DOUBLE_EQ(r.gap, 0.5);
  EXPECT_DOUBLE_EQ(r.max_violation, 1.0);
  // Middle cells need s + u + v = 0; only the two cells with s = 1 fail.
  EXPECT_EQ(r.n_mid_ok, 2u);
  ASSERT_EQ(r.violations.size(), 2u);
  for (const SlacknessViolation& v : r.violations) {
    EXPECT_EQ(v.cell_class, CellClass::kMiddle);
    EXPECT_NE(v.i, v.j);
    EXPECT_DOUBLE_EQ(v.reduced, 1.0);
    EXPECT_DOUBLE_EQ(v.residual, 1.0);
  }
}

TEST(VerifySlackness, SimplexPotentialsCertifyTheirPlan) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Problem p = generate_instance("random_feasible", 3 + seed % 6, 4 + seed % 3, seed);
    const PrimalSolution sol = solve_primal(p);
    const SlacknessReport r = verify_slackness(sol.plan, sol.potentials, p);
    EXPECT_TRUE(r.optimal) << "seed " << seed;
    EXPECT_GE(r.gap, -1e-9);
  }
}

TEST(VerifySlackness, PerturbationNeverClaimsOptimalWithGap) {
  std::mt19937_64 rng(12);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Problem p = generate_instance("random_feasible", 5, 5, seed);
    const PrimalSolution sol = solve_primal(p);
    std::vector<double> u(sol.potentials.u().begin(), sol.potentials.u().end());
    std::vector<double> v(sol.potentials.v().begin(), sol.potentials.v().end());
    std::uniform_int_distribution<std::size_t> pick(0, 9);
    const std::size_t k = pick(rng);
    (k < 5 ? u[k] : v[k - 5]) += 1e-3;
    const DualPotentials moved(u, v, p);
    const SlacknessReport r = verify_slackness(sol.plan, moved, p);
    EXPECT_GE(r.gap, -1e-9);
    if (r.gap > kDefaultSlacknessTol) EXPECT_FALSE(r.optimal);
    if (r.optimal) EXPECT_LE(r.max_violation, kDefaultSlacknessTol);
  }
}

TEST(VerifySlackness, ClassesAreRelativeToCapacity) {
  // Capacity 1e-3 on one cell: a plan value of 1e-3 there is saturated, not
  // middle, even though it is small in absolute terms.
  const Axis a2 = Axis::uniform(2);
  Matrix cap(2, 2, 2.0);
  cap(0, 0) = 1e-3;
  const Problem p(Marginal::uniform(a2), Marginal::uniform(a2),
                  Kernel(cap, KernelKind::kCapacity),
                  Kernel::constant(2, 2, 0.0, KernelKind::kSurplus));
  Matrix h(2, 2);
  h(0, 0) = 1e-3;
  h(0, 1) = 2.0 - 1e-3;
  h(1, 0) = 2.0 - 1e-3;
  h(1, 1) = 1e-3;
  const SlacknessReport r = verify_slackness(TransportPlan(h), DualPotentials::zero(p), p);
  EXPECT_EQ(r.n_sat_ok, 1u);
  EXPECT_EQ(r.n_mid_ok, 3u);
  EXPECT_TRUE(r.optimal);
}

TEST(VerifySlackness, Validation) {
  const Problem t1 = testing::t1();
  EXPECT_THROW(verify_slackness(TransportPlan(Matrix(2, 2, 1.0)), DualPotentials::zero(t1), t1, 0.0),
               InvalidArgument);
  EXPECT_THROW(verify_slackness(TransportPlan(Matrix(3, 2, 1.0)), DualPotentials::zero(t1), t1),
               DimensionError);
  EXPECT_EQ(to_string(CellClass::kSaturated), "saturated");
}

}  // namespace
}  // namespace capot
