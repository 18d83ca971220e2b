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


// Small named instances and random helpers shared by the unit tests and the
// acceptance binary.

#ifndef CAPOT_TESTS_SUPPORT_FIXTURES_HPP_
#define CAPOT_TESTS_SUPPORT_FIXTURES_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "capot/grid.hpp"
#include "capot/potentials.hpp"
#include "capot/primal.hpp"

namespace capot::testing {

// s = [[0, 1], [1, 0]] on the uniform 2 x 2 grid with constant capacity.
inline Problem two_by_two(double capacity) {
  const Axis axis = Axis::uniform(2);
  Matrix s(2, 2);
  s(0, 1) = 1.0;
  s(1, 0) = 1.0;
  return Problem(Marginal::uniform(axis), Marginal::uniform(axis),
                 Kernel::constant(2, 2, capacity, KernelKind::kCapacity),
                 Kernel(s, KernelKind::kSurplus));
}

// Capacity 1: the product plan is the only feasible one.
inline Problem t1() { return two_by_two(1.0); }

// Capacity 2: the antidiagonal plan [[0, 2], [2, 0]] is optimal.
inline Problem t3() { return two_by_two(2.0); }

// Uniform 3 x 3 grid, product surplus at midpoints, constant capacity.
inline Problem product3(double capacity) {
  const Axis axis = Axis::uniform(3);
  return Problem(Marginal::uniform(axis), Marginal::uniform(axis),
                 Kernel::constant(3, 3, capacity, KernelKind::kCapacity),
                 builtin_surplus("product", axis, axis));
}

inline Problem t4() { return product3(2.0); }

// Optimal values computed offline with an exact LP solve.
inline constexpr double kT4Value = 97.0 / 324.0;
inline constexpr double kProduct3UnconstrainedValue = 35.0 / 108.0;

inline DualPotentials random_potentials(const Problem& problem, std::mt19937_64& rng,
                                        double spread = 1.0) {
  std::uniform_real_distribution<double> dist(-spread, spread);
  std::vector<double> u(problem.m());
  std::vector<double> v(problem.n());
  for (double& x : u) x = dist(rng);
  for (double& x : v) x = dist(rng);
  return DualPotentials(std::move(u), std::move(v), problem);
}

// Vertices of the feasible polytope reached by maximizing random surpluses.
inline std::vector<TransportPlan> random_vertices(const Problem& problem, std::size_t count,
                                                  std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<TransportPlan> out;
  for (std::size_t k = 0; k < count; ++k) {
    Matrix s(problem.m(), problem.n());
    for (std::size_t i = 0; i < s.rows(); ++i) {
      for (std::size_t j = 0; j < s.cols(); ++j) s(i, j) = dist(rng);
    }
    const Problem tilted(problem.x(), problem.y(), problem.hbar(),
                         Kernel(std::move(s), KernelKind::kSurplus), problem.eta());
    out.push_back(solve_primal(tilted).plan);
  }
  return out;
}

// Random convex combination of the given plans; stays feasible.
inline TransportPlan random_mixture(const std::vector<TransportPlan>& plans,
                                    std::mt19937_64& rng) {
  std::exponential_distribution<double> dist(1.0);
  std::vector<double> weights(plans.size());
  double total = 0.0;
  for (double& w : weights) total += (w = dist(rng));
  Matrix out(plans.front().rows(), plans.front().cols());
  for (std::size_t k = 0; k < plans.size(); ++k) {
    for (std::size_t i = 0; i < out.rows(); ++i) {
      for (std::size_t j = 0; j < out.cols(); ++j) {
        out(i, j) += weights[k] / total * plans[k](i, j);
      }
    }
  }
  return TransportPlan(std::move(out));
}

// Positive random marginals and an arbitrary random capacity; feasibility
// varies with `level`.
inline Problem random_capacity_problem(std::size_t m, std::size_t n, double level,
                                       std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mass(0.3, 1.7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto density = [&](std::size_t count) {
    std::vector<double> d(count);
    double total = 0.0;
    for (double& x : d) total += (x = mass(rng));
    for (double& x : d) x *= static_cast<double>(count) / total;
    return d;
  };
  const Axis x = Axis::uniform(m);
  const Axis y = Axis::uniform(n);
  Matrix hbar(m, n);
  Matrix s(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      hbar(i, j) = level * (0.1 + 2.0 * unit(rng));
      s(i, j) = 2.0 * unit(rng) - 1.0;
    }
  }
  return Problem(Marginal(x, density(m)), Marginal(y, density(n)),
                 Kernel(std::move(hbar), KernelKind::kCapacity),
                 Kernel(std::move(s), KernelKind::kSurplus));
}

}  // namespace capot::testing

#endif  // CAPOT_TESTS_SUPPORT_FIXTURES_HPP_
