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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "capot/dual.hpp"
#include "capot/error.hpp"
#include "capot/parallel.hpp"
#include "capot/primal.hpp"

namespace capot {
namespace {

constexpr double kMassMatchTol = 1e-9;
constexpr double kLevelTol = 1e-12;

double max_product_density(const Marginal& f, const Marginal& g) {
  const auto fd = f.density();
  const auto gd = g.density();
  return *std::max_element(fd.begin(), fd.end()) * *std::max_element(gd.begin(), gd.end());
}

double weighted_l1(const Kernel& s, const Problem& problem) {
  std::vector<double> terms(problem.m() * problem.n());
  for (std::size_t i = 0; i < problem.m(); ++i) {
    for (std::size_t j = 0; j < problem.n(); ++j) {
      terms[i * problem.n() + j] = std::abs(s(i, j)) * problem.cell_volume(i, j);
    }
  }
  return pairwise_sum(terms);
}

double positive_part_mass(const DualPotentials& p, const Problem& problem) {
  std::vector<double> terms(problem.m() * problem.n());
  for (std::size_t i = 0; i < problem.m(); ++i) {
    for (std::size_t j = 0; j < problem.n(); ++j) {
      const double w = problem.s()(i, j) + p.u(i) + p.v(j);
      terms[i * problem.n() + j] = w > 0.0 ? w * problem.cell_volume(i, j) : 0.0;
    }
  }
  return pairwise_sum(terms);
}

}  // namespace

UnconstrainedSolution solve_unconstrained(const Marginal& f, const Marginal& g,
                                          const Kernel& s) {
  if (std::abs(f.total_mass() - g.total_mass()) > kMassMatchTol) {
    throw InvalidArgument("marginal masses differ");
  }
  Matrix cap(f.cell_count(), g.cell_count());
  for (std::size_t i = 0; i < cap.rows(); ++i) {
    for (std::size_t j = 0; j < cap.cols(); ++j) {
      cap(i, j) = 2.0 / (f.axis().weight(i) * g.axis().weight(j));
    }
  }
  Problem problem(f, g, Kernel(std::move(cap), KernelKind::kCapacity), s);
  PrimalSolution sol = solve_primal(problem);
  return UnconstrainedSolution{std::move(sol.plan), sol.value, std::move(sol.potentials),
                               std::move(problem)};
}

double min_capacity_level(const Marginal& f, const Marginal& g) {
  return max_product_density(f, g) + 1.0;
}

std::vector<double> default_capacity_levels(const Marginal& f, const Marginal& g) {
  const double base = min_capacity_level(f, g);
  std::vector<double> ks;
  for (int p = 0; p <= 8; ++p) ks.push_back(base * std::ldexp(1.0, p));
  return ks;
}

SweepResult limit_sweep(const Marginal& f, const Marginal& g, const Kernel& s,
                        const std::vector<double>& ks, const SweepOptions& options) {
  if (ks.empty()) throw InvalidArgument("sweep needs at least one capacity level");
  SweepResult result;
  const double fg_max = max_product_density(f, g);
  result.min_level = fg_max + 1.0;
  result.eta = result.min_level / fg_max;
  for (double k : ks) {
    if (!(k >= result.min_level * (1.0 - kLevelTol)) || !std::isfinite(k)) {
      std::ostringstream os;
      os << "capacity level " << k << " is below K = " << result.min_level;
      throw InvalidArgument(os.str());
    }
  }
  std::vector<double> levels = ks;
  std::sort(levels.begin(), levels.end());

  const UnconstrainedSolution unconstrained = solve_unconstrained(f, g, s);
  result.unconstrained_value = unconstrained.value;
  result.unconstrained_plan = unconstrained.plan;
  result.unconstrained_potentials = unconstrained.potentials;

  const double s_l1 = weighted_l1(s, unconstrained.problem);
  const double mean_bound =
      (unconstrained.value + result.eta * s_l1 * fg_max) / (result.eta - 1.0);

  result.points.resize(levels.size());
  parallel_for(
      levels.size(),
      [&](std::size_t idx) {
        const double k = levels[idx];
        const Problem problem(f, g, Kernel::constant(f.cell_count(), g.cell_count(), k,
                                                     KernelKind::kCapacity),
                              s, result.eta);
        PrimalSolution primal = solve_primal(problem);
        DualOptions dual_opts;
        dual_opts.max_iter = options.dual_max_iter;
        dual_opts.tol = options.dual_rel_tol * (1.0 + std::abs(primal.value));
        dual_opts.target_value = primal.value;
        const DualSolveResult dual = minimize_dual(problem, dual_opts);

        SweepPoint& pt = result.points[idx];
        pt.k = k;
        pt.primal_value = primal.value;
        pt.dual_value = dual.value;
        pt.dual_gap = dual.gap.value_or(0.0);
        pt.dual_iterations = dual.iterations;
        pt.dual_converged = dual.converged;
        pt.mean_uf = dual.potentials.mean_uf();
        pt.mean_vg = dual.potentials.mean_vg();
        pt.pos_part_mass = positive_part_mass(dual.potentials, problem);
        pt.plan_distance = plan_distance(primal.plan, unconstrained.plan, problem);
        pt.potential_l1 = dual.potentials.l1_u(problem) + dual.potentials.l1_v(problem);
        pt.mean_bound = mean_bound;
        pt.plan = std::move(primal.plan);
        pt.potentials = dual.potentials;
      },
      1);

  for (const SweepPoint& pt : result.points) {
    result.decay_constant =
        std::max(result.decay_constant, pt.dual_value + pt.mean_uf + pt.mean_vg);
  }
  return result;
}

}  // namespace capot
