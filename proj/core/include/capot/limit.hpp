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

#ifndef CAPOT_LIMIT_HPP_
#define CAPOT_LIMIT_HPP_

#include <cstddef>
#include <vector>

#include "capot/grid.hpp"
#include "capot/potentials.hpp"

namespace capot {

// Classical (uncapacitated) transport optimum.
struct UnconstrainedSolution {
  TransportPlan plan;
  double value = 0.0;
  // s + u + v <= 0 on every cell, with equality on the support of the plan.
  DualPotentials potentials;
  Problem problem;  // the never-binding capacitated instance that was solved
};

// Solves the classical problem with the transport simplex by giving every
// cell capacity mass 2, which no plan can reach. Throws InvalidArgument when
// the marginal masses differ.
UnconstrainedSolution solve_unconstrained(const Marginal& f, const Marginal& g,
                                          const Kernel& s);

// Smallest admissible capacity level K = max f_i g_j + 1.
double min_capacity_level(const Marginal& f, const Marginal& g);

// K * {1, 2, 4, ..., 2^8}.
std::vector<double> default_capacity_levels(const Marginal& f, const Marginal& g);

struct SweepPoint {
  double k = 0.0;
  double primal_value = 0.0;   // I*(k)
  double dual_value = 0.0;     // I_k(u_k, v_k)
  double dual_gap = 0.0;
  std::size_t dual_iterations = 0;
  bool dual_converged = false;
  double mean_uf = 0.0;
  double mean_vg = 0.0;
  double pos_part_mass = 0.0;  // sum [s + u_k + v_k]_+ wx wy
  double plan_distance = 0.0;  // weighted L1 distance to the unconstrained plan
  double potential_l1 = 0.0;   // ||u_k||_1 + ||v_k||_1
  double mean_bound = 0.0;     // (I*(inf) + eta ||s||_1 ||f g||_inf) / (eta - 1)
  TransportPlan plan;
  DualPotentials potentials;
};

struct SweepResult {
  std::vector<SweepPoint> points;  // ordered by k
  double unconstrained_value = 0.0;
  TransportPlan unconstrained_plan;
  DualPotentials unconstrained_potentials;
  double min_level = 0.0;  // K
  double eta = 0.0;        // K / max f g
  // sup over the sweep of dual_value + mean_uf + mean_vg; bounds
  // k * pos_part_mass.
  double decay_constant = 0.0;
};

struct SweepOptions {
  std::size_t dual_max_iter = 200000;
  // Dual gap tolerance relative to 1 + |primal value|.
  double dual_rel_tol = 1e-9;
};

// For every level k solves the capacitated problem with hbar = k, minimizes
// the dual with the primal value as target and records the limit quantities.
// Levels below K are rejected with InvalidArgument. Points are independent
// and are solved concurrently when CAPOT_THREADS allows.
SweepResult limit_sweep(const Marginal& f, const Marginal& g, const Kernel& s,
                        const std::vector<double>& ks, const SweepOptions& options = {});

}  // namespace capot

#endif  // CAPOT_LIMIT_HPP_
