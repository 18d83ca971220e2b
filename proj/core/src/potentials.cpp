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

#include "capot/potentials.hpp"

#include <cmath>

#include "capot/error.hpp"
#include "capot/parallel.hpp"

namespace capot {
namespace {

double weighted_sum(std::span<const double> values, const Marginal& marginal) {
  std::vector<double> terms(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) terms[i] = values[i] * marginal.mass(i);
  return pairwise_sum(terms);
}

double weighted_l1(std::span<const double> values, const Axis& axis) {
  std::vector<double> terms(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    terms[i] = std::abs(values[i]) * axis.weight(i);
  }
  return pairwise_sum(terms);
}

}  // namespace

DualPotentials::DualPotentials(std::vector<double> u, std::vector<double> v,
                               const Problem& problem)
    : u_(std::move(u)), v_(std::move(v)) {
  if (u_.size() != problem.m() || v_.size() != problem.n()) {
    throw DimensionError("potentials do not match the problem dimensions");
  }
  mean_uf_ = weighted_sum(u_, problem.x());
  mean_vg_ = weighted_sum(v_, problem.y());
}

DualPotentials DualPotentials::zero(const Problem& problem) {
  return DualPotentials(std::vector<double>(problem.m(), 0.0),
                        std::vector<double>(problem.n(), 0.0), problem);
}

double DualPotentials::l1_u(const Problem& problem) const {
  return weighted_l1(u_, problem.x().axis());
}

double DualPotentials::l1_v(const Problem& problem) const {
  return weighted_l1(v_, problem.y().axis());
}

}  // namespace capot
