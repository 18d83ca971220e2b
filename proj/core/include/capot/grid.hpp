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

#ifndef CAPOT_GRID_HPP_
#define CAPOT_GRID_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "capot/matrix.hpp"

namespace capot {

// One discretized factor of the domain: cell volumes summing to one and a
// representative coordinate per cell.
class Axis {
 public:
  // Uniform cells of width 1/count on [0, 1].
  static Axis uniform(std::size_t count);

  // Midpoints are placed at the centers of consecutive cells laid out on
  // [0, 1] with the given widths.
  explicit Axis(std::vector<double> weights);
  Axis(std::vector<double> weights, std::vector<double> midpoints);

  std::size_t cell_count() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> midpoints() const { return midpoints_; }
  double weight(std::size_t i) const { return weights_[i]; }
  double midpoint(std::size_t i) const { return midpoints_[i]; }

 private:
  std::vector<double> weights_;
  std::vector<double> midpoints_;
};

// A probability density sampled per cell (mass per unit volume).
class Marginal {
 public:
  Marginal(Axis axis, std::vector<double> density);

  // Constant density 1 on the axis.
  static Marginal uniform(Axis axis);

  const Axis& axis() const { return axis_; }
  std::size_t cell_count() const { return axis_.cell_count(); }
  std::span<const double> density() const { return density_; }
  double density(std::size_t i) const { return density_[i]; }

  // Cell mass density[i] * weight[i].
  double mass(std::size_t i) const { return density_[i] * axis_.weight(i); }
  double total_mass() const;
  bool strictly_positive() const;

 private:
  Axis axis_;
  std::vector<double> density_;
};

enum class KernelKind { kCapacity, kSurplus };

// A function of (x_i, y_j) sampled at cell midpoints.
class Kernel {
 public:
  Kernel(Matrix values, KernelKind kind);

  static Kernel constant(std::size_t rows, std::size_t cols, double value,
                         KernelKind kind);

  const Matrix& values() const { return values_; }
  double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
  KernelKind kind() const { return kind_; }
  std::size_t rows() const { return values_.rows(); }
  std::size_t cols() const { return values_.cols(); }
  double max_abs() const;

 private:
  Matrix values_;
  KernelKind kind_;
};

// Surplus s_ij = x_i * y_j ("product") or -(x_i - y_j)^2 / 2
// ("neg_sq_dist") evaluated at midpoints.
Kernel builtin_surplus(std::string_view name, const Axis& x, const Axis& y);

inline constexpr double kDefaultEta = 2.0;

// Capacity-constrained transport instance: marginals f on X and g on Y,
// capacity hbar, surplus s, and the strict-feasibility margin eta.
class Problem {
 public:
  Problem(Marginal x, Marginal y, Kernel hbar, Kernel s, double eta = kDefaultEta);

  const Marginal& x() const { return x_; }
  const Marginal& y() const { return y_; }
  const Kernel& hbar() const { return hbar_; }
  const Kernel& s() const { return s_; }
  double eta() const { return eta_; }

  std::size_t m() const { return x_.cell_count(); }
  std::size_t n() const { return y_.cell_count(); }

  double wx(std::size_t i) const { return x_.axis().weight(i); }
  double wy(std::size_t j) const { return y_.axis().weight(j); }
  double f(std::size_t i) const { return x_.density(i); }
  double g(std::size_t j) const { return y_.density(j); }
  double cell_volume(std::size_t i, std::size_t j) const { return wx(i) * wy(j); }

  // Throws InvalidArgument unless f and g are strictly positive, which the
  // dual solver requires for attainment of its infimum.
  void require_positive_marginals() const;

  // Same data with hbar replaced.
  Problem with_capacity(Kernel hbar) const;

 private:
  Marginal x_;
  Marginal y_;
  Kernel hbar_;
  Kernel s_;
  double eta_;
};

// Joint density h on the grid.
class TransportPlan {
 public:
  TransportPlan() = default;
  explicit TransportPlan(Matrix values) : values_(std::move(values)) {}

  const Matrix& values() const { return values_; }
  double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
  std::size_t rows() const { return values_.rows(); }
  std::size_t cols() const { return values_.cols(); }

 private:
  Matrix values_;
};

inline constexpr double kPlanBoundTol = 1e-9;
inline constexpr double kPlanMarginalTol = 1e-8;

// Worst-case deviations of a plan from membership in the feasible polytope.
struct PlanResiduals {
  double bound = 0.0;     // max over cells of violation of 0 <= h <= hbar
  double marginal = 0.0;  // max over rows and columns of |marginal - density|
};

PlanResiduals plan_residuals(const TransportPlan& plan, const Problem& problem);

// True when the plan satisfies the bounds within kPlanBoundTol and the
// marginals within kPlanMarginalTol.
bool is_feasible_plan(const TransportPlan& plan, const Problem& problem);

// Throws InvalidArgument when is_feasible_plan fails.
void require_feasible_plan(const TransportPlan& plan, const Problem& problem);

// Discrete double integral of h * s.
double integrate_surplus(const TransportPlan& plan, const Problem& problem);

// Weighted L1 distance sum |a - b| wx wy between two plans.
double plan_distance(const TransportPlan& a, const TransportPlan& b,
                     const Problem& problem);

}  // namespace capot

#endif  // CAPOT_GRID_HPP_
