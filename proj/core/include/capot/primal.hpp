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

#ifndef CAPOT_PRIMAL_HPP_
#define CAPOT_PRIMAL_HPP_

#include <cstddef>
#include <vector>

#include "capot/error.hpp"
#include "capot/feasibility.hpp"
#include "capot/grid.hpp"
#include "capot/potentials.hpp"

namespace capot {

struct Cell {
  std::size_t i;
  std::size_t j;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Raised by solve_primal when no plan fits under hbar.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(FeasibilityCertificate certificate);
  const FeasibilityCertificate& certificate() const { return certificate_; }

 private:
  FeasibilityCertificate certificate_;
};

struct PrimalSolution {
  TransportPlan plan;
  double value = 0.0;
  // Node potentials of the final basis tree, shifted onto mean_uf == mean_vg.
  DualPotentials potentials;
  // Grid cells among the spanning-tree arcs; every fractional cell is here.
  std::vector<Cell> basis_cells;
  std::size_t iterations = 0;
};

struct PrimalOptions {
  // Pivot cap; 0 picks 100 (mn + m + n) + 10000.
  std::size_t max_iterations = 0;
};

// Maximizes the integrated surplus over plans 0 <= h <= hbar with marginals
// f, g. Cell masses h_ij wx_i wy_j are the flow on arcs x_i -> y_j of a
// capacitated bipartite network; the network simplex minimizes the cost -s
// from a big-M artificial start and keeps a strongly feasible spanning tree.
//
// With reduced cost r_ij = -s_ij - u_i - v_j the returned potentials obey
// s + u + v <= 0 on empty cells, = 0 on fractional cells and >= 0 on
// saturated cells.
//
// Throws InfeasibleError (carrying the max-flow certificate) when no plan
// exists and IterationLimitError when the pivot cap is hit.
PrimalSolution solve_primal(const Problem& problem, const PrimalOptions& options = {});

inline constexpr std::size_t kMaxExactCells = 64;

struct ExactPrimalSolution {
  double value = 0.0;
  TransportPlan plan;  // vertex of the rounded polytope, in density units
};

// Same LP through a dense bounded-variable simplex in exact rational
// arithmetic with Bland's rule. Inputs are rounded to multiples of 1e-12 and
// both marginal mass vectors are rescaled to sum to exactly one.
// Throws TooLargeError when m * n > kMaxExactCells.
ExactPrimalSolution brute_force_primal_solution(const Problem& problem);

// Optimal value of brute_force_primal_solution.
double brute_force_primal(const Problem& problem);

struct StructureReport {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t count_zero = 0;
  std::size_t count_saturated = 0;
  std::size_t count_fractional = 0;
  std::vector<bool> w_mask;  // row-major; true on saturated cells

  bool in_w(std::size_t i, std::size_t j) const { return w_mask[i * cols + j]; }
};

// Splits cells into |h| <= tol, |h - hbar| <= tol and the rest. Cells that
// meet both tests (hbar <= 2 tol) count as zero.
StructureReport support_structure(const TransportPlan& plan, const Problem& problem,
                                  double tol = 1e-9);

}  // namespace capot

#endif  // CAPOT_PRIMAL_HPP_
