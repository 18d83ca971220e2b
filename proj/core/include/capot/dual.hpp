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

#ifndef CAPOT_DUAL_HPP_
#define CAPOT_DUAL_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "capot/grid.hpp"
#include "capot/potentials.hpp"

namespace capot {

// I(u, v) = sum [s + u + v]_+ hbar wx wy - mean_uf - mean_vg.
double eval_I(const DualPotentials& potentials, const Problem& problem);

struct Subgradient {
  std::vector<double> du;
  std::vector<double> dv;

  double squared_norm() const;
};

// du_i = wx_i (sum_j 1[s_ij + u_i + v_j > 0] hbar_ij wy_j - f_i), and the
// symmetric expression for dv. Kinks select the strict indicator.
Subgradient subgradient_I(const DualPotentials& potentials, const Problem& problem);

// Shifts (u - k, v + k) so that mean_uf == mean_vg. I is unchanged.
DualPotentials normalize(const DualPotentials& potentials, const Problem& problem);

struct DualIterate {
  std::size_t iteration;
  const DualPotentials& potentials;
  double value;
};

struct DualOptions {
  std::size_t max_iter = 50000;
  double tol = 1e-6;
  // Known optimal value (usually the primal optimum). Enables the Polyak
  // step and makes convergence a gap test.
  std::optional<double> target_value;
  // Without a target: stop once the a / sqrt(t) step drops below this.
  double step_floor = 1e-10;
  // With a target, each step projects onto the intersection of the halfspaces
  // {I(x_k) + g_k (x - x_k) <= target} of the last `cuts` iterates, computed
  // with at most `cut_sweeps` passes of Hildreth's method. cuts == 1 is the
  // plain Polyak step (I_t - target) / |g_t|^2.
  std::size_t cuts = 16;
  std::size_t cut_sweeps = 20;
  // Every this many steps the best iterate is rounded to the nearest vertex
  // of the kink arrangement and kept if that lowers I. 0 disables.
  std::size_t vertex_snap_every = 25;
  // Starting point; zero potentials when absent.
  std::optional<DualPotentials> initial;
  // Called with every iterate, including the starting point.
  std::function<void(const DualIterate&)> observer;
};

struct DualSolveResult {
  DualPotentials potentials;  // best iterate found, normalized
  double value = 0.0;
  std::optional<double> gap;  // value - target when a target was supplied
  std::size_t iterations = 0;
  bool converged = false;
  // Whether plans bounded by hbar / eta exist, the hypothesis under which a
  // minimizer is guaranteed.
  bool attainment_hypothesis = false;
};

// Projected subgradient descent on the normalized subspace, with periodic
// vertex rounding of the best iterate (see DualOptions). Throws
// InvalidArgument when f or g has a zero entry.
DualSolveResult minimize_dual(const Problem& problem, const DualOptions& options = {});

// Quantities of the mean and oscillation bounds for a pair (u, v).
//
// mean_lower <= mean_sum <= mean_upper holds whenever a witness plan h with
// hbar >= eta h exists; osc_lhs <= osc_rhs holds whenever
// hbar >= eps f g with 0 < eps <= 1.
struct CoercivityDiagnostics {
  double eta = 0.0;
  double eps = 0.0;        // min(1, min hbar / (f g))
  double eps_prime = 0.0;  // min(eps, min f, min g)
  double I_value = 0.0;
  double mean_uf = 0.0;
  double mean_vg = 0.0;
  double mean_sum = 0.0;
  double mean_lower = 0.0;
  bool witness_available = false;
  std::optional<double> mean_upper;  // (I + ||eta h s||_1) / (eta - 1)
  double surplus_fg_l1 = 0.0;        // ||s f g||_1

  double sigma_u = 0.0;  // ||u f - mean_uf||_1
  double osc_lhs_u = 0.0;
  double osc_rhs_u = 0.0;
  double sigma_v = 0.0;
  double osc_lhs_v = 0.0;
  double osc_rhs_v = 0.0;

  double l1_u = 0.0;
  double l1_v = 0.0;
  // Bound on ||u||_1 and ||v||_1 for normalized pairs, assembled from the two
  // inequalities above; absent without a witness or with eps_prime == 0.
  std::optional<double> l1_bound;

  // True when every applicable inequality holds up to tol * (1 + |sides|).
  bool inequalities_hold(double tol = 1e-9) const;
};

// Computes the witness from check_feasibility(problem, 1 / eta).
CoercivityDiagnostics coercivity_diagnostics(const DualPotentials& potentials,
                                             const Problem& problem);

// Same with a precomputed witness plan (h <= hbar / eta); std::nullopt when
// none exists.
CoercivityDiagnostics coercivity_diagnostics(const DualPotentials& potentials,
                                             const Problem& problem,
                                             const std::optional<TransportPlan>& witness);

}  // namespace capot

#endif  // CAPOT_DUAL_HPP_
