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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "capot/error.hpp"
#include "capot/parallel.hpp"

namespace capot {
namespace {

constexpr double kAxisWeightTol = 1e-12;
constexpr double kMarginalMassTol = 1e-9;

std::vector<double> centered_midpoints(std::span<const double> weights) {
  std::vector<double> mid(weights.size());
  double left = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    mid[i] = left + 0.5 * weights[i];
    left += weights[i];
  }
  return mid;
}

void check_shape(const TransportPlan& plan, const Problem& problem) {
  if (plan.rows() != problem.m() || plan.cols() != problem.n()) {
    std::ostringstream os;
    os << "plan is " << plan.rows() << "x" << plan.cols() << " but problem is "
       << problem.m() << "x" << problem.n();
    throw DimensionError(os.str());
  }
}

}  // namespace

Axis Axis::uniform(std::size_t count) {
  if (count == 0) throw InvalidArgument("axis needs at least one cell");
  return Axis(std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

Axis::Axis(std::vector<double> weights)
    : Axis(weights, centered_midpoints(weights)) {}

Axis::Axis(std::vector<double> weights, std::vector<double> midpoints)
    : weights_(std::move(weights)), midpoints_(std::move(midpoints)) {
  if (weights_.empty()) throw InvalidArgument("axis needs at least one cell");
  if (midpoints_.size() != weights_.size()) {
    throw DimensionError("axis midpoints and weights differ in length");
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw InvalidArgument("axis weight " + std::to_string(i) + " is not positive");
    }
    if (!std::isfinite(midpoints_[i])) {
      throw InvalidArgument("axis midpoint " + std::to_string(i) + " is not finite");
    }
  }
  const double total = pairwise_sum(weights_);
  if (std::abs(total - 1.0) > kAxisWeightTol) {
    std::ostringstream os;
    os.precision(17);
    os << "axis weights sum to " << total << ", expected 1";
    throw InvalidArgument(os.str());
  }
}

Marginal::Marginal(Axis axis, std::vector<double> density)
    : axis_(std::move(axis)), density_(std::move(density)) {
  if (density_.size() != axis_.cell_count()) {
    throw DimensionError("density has " + std::to_string(density_.size()) +
                         " entries for an axis of " +
                         std::to_string(axis_.cell_count()) + " cells");
  }
  for (std::size_t i = 0; i < density_.size(); ++i) {
    if (!(density_[i] >= 0.0) || !std::isfinite(density_[i])) {
      throw InvalidArgument("density entry " + std::to_string(i) +
                            " is negative or not finite");
    }
  }
  const double mass = total_mass();
  if (std::abs(mass - 1.0) > kMarginalMassTol) {
    std::ostringstream os;
    os.precision(17);
    os << "density integrates to " << mass << ", expected 1";
    throw InvalidArgument(os.str());
  }
}

Marginal Marginal::uniform(Axis axis) {
  const std::size_t n = axis.cell_count();
  return Marginal(std::move(axis), std::vector<double>(n, 1.0));
}

double Marginal::total_mass() const {
  std::vector<double> masses(density_.size());
  for (std::size_t i = 0; i < masses.size(); ++i) masses[i] = mass(i);
  return pairwise_sum(masses);
}

bool Marginal::strictly_positive() const {
  return std::all_of(density_.begin(), density_.end(),
                     [](double d) { return d > 0.0; });
}

Kernel::Kernel(Matrix values, KernelKind kind)
    : values_(std::move(values)), kind_(kind) {
  if (values_.empty()) throw InvalidArgument("kernel has no entries");
  for (double x : values_.data()) {
    if (!std::isfinite(x)) throw InvalidArgument("kernel entry is not finite");
    if (kind_ == KernelKind::kCapacity && x < 0.0) {
      throw InvalidArgument("capacity entry is negative");
    }
  }
}

Kernel Kernel::constant(std::size_t rows, std::size_t cols, double value,
                        KernelKind kind) {
  return Kernel(Matrix(rows, cols, value), kind);
}

double Kernel::max_abs() const {
  double best = 0.0;
  for (double x : values_.data()) best = std::max(best, std::abs(x));
  return best;
}

Kernel builtin_surplus(std::string_view name, const Axis& x, const Axis& y) {
  Matrix s(x.cell_count(), y.cell_count());
  if (name == "product" || name == "xy") {
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < s.cols(); ++j) s(i, j) = x.midpoint(i) * y.midpoint(j);
  } else if (name == "neg_sq_dist") {
    for (std::size_t i = 0; i < s.rows(); ++i) {
      for (std::size_t j = 0; j < s.cols(); ++j) {
        const double d = x.midpoint(i) - y.midpoint(j);
        s(i, j) = -0.5 * d * d;
      }
    }
  } else {
    throw InvalidArgument("unknown builtin surplus '" + std::string(name) + "'");
  }
  return Kernel(std::move(s), KernelKind::kSurplus);
}

Problem::Problem(Marginal x, Marginal y, Kernel hbar, Kernel s, double eta)
    : x_(std::move(x)),
      y_(std::move(y)),
      hbar_(std::move(hbar)),
      s_(std::move(s)),
      eta_(eta) {
  if (hbar_.kind() != KernelKind::kCapacity) {
    throw InvalidArgument("hbar must be a capacity kernel");
  }
  if (s_.kind() != KernelKind::kSurplus) {
    throw InvalidArgument("s must be a surplus kernel");
  }
  const auto shape_ok = [&](const Kernel& k) {
    return k.rows() == m() && k.cols() == n();
  };
  if (!shape_ok(hbar_) || !shape_ok(s_)) {
    throw DimensionError("kernels must be " + std::to_string(m()) + "x" +
                         std::to_string(n()));
  }
  if (!(eta_ > 1.0) || !std::isfinite(eta_)) {
    throw InvalidArgument("eta must be a finite number greater than 1");
  }
}

void Problem::require_positive_marginals() const {
  if (!x_.strictly_positive() || !y_.strictly_positive()) {
    throw InvalidArgument(
        "dual solve requires strictly positive densities f and g");
  }
}

Problem Problem::with_capacity(Kernel hbar) const {
  return Problem(x_, y_, std::move(hbar), s_, eta_);
}

PlanResiduals plan_residuals(const TransportPlan& plan, const Problem& problem) {
  check_shape(plan, problem);
  PlanResiduals out;
  const std::size_t m = problem.m();
  const std::size_t n = problem.n();
  std::vector<double> terms(std::max(m, n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double h = plan(i, j);
      out.bound = std::max({out.bound, -h, h - problem.hbar()(i, j)});
      terms[j] = h * problem.wy(j);
    }
    const double row = pairwise_sum(std::span<const double>(terms).first(n));
    out.marginal = std::max(out.marginal, std::abs(row - problem.f(i)));
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) terms[i] = plan(i, j) * problem.wx(i);
    const double col = pairwise_sum(std::span<const double>(terms).first(m));
    out.marginal = std::max(out.marginal, std::abs(col - problem.g(j)));
  }
  return out;
}

bool is_feasible_plan(const TransportPlan& plan, const Problem& problem) {
  const PlanResiduals r = plan_residuals(plan, problem);
  return r.bound <= kPlanBoundTol && r.marginal <= kPlanMarginalTol;
}

void require_feasible_plan(const TransportPlan& plan, const Problem& problem) {
  const PlanResiduals r = plan_residuals(plan, problem);
  if (r.bound > kPlanBoundTol || r.marginal > kPlanMarginalTol) {
    std::ostringstream os;
    os << "plan is not feasible: bound violation " << r.bound
       << ", marginal error " << r.marginal;
    throw InvalidArgument(os.str());
  }
}

double integrate_surplus(const TransportPlan& plan, const Problem& problem) {
  check_shape(plan, problem);
  const std::size_t m = problem.m();
  const std::size_t n = problem.n();
  std::vector<double> rows(m);
  parallel_for(m, [&](std::size_t i) {
    std::vector<double> terms(n);
    for (std::size_t j = 0; j < n; ++j) {
      terms[j] = plan(i, j) * problem.s()(i, j) * problem.wy(j);
    }
    rows[i] = pairwise_sum(terms) * problem.wx(i);
  });
  return pairwise_sum(rows);
}

double plan_distance(const TransportPlan& a, const TransportPlan& b,
                     const Problem& problem) {
  check_shape(a, problem);
  check_shape(b, problem);
  std::vector<double> rows(problem.m());
  std::vector<double> terms(problem.n());
  for (std::size_t i = 0; i < problem.m(); ++i) {
    for (std::size_t j = 0; j < problem.n(); ++j) {
      terms[j] = std::abs(a(i, j) - b(i, j)) * problem.wy(j);
    }
    rows[i] = pairwise_sum(terms) * problem.wx(i);
  }
  return pairwise_sum(rows);
}

}  // namespace capot
