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

#ifndef CAPOT_POTENTIALS_HPP_
#define CAPOT_POTENTIALS_HPP_

#include <span>
#include <vector>

#include "capot/grid.hpp"

namespace capot {

// Multipliers (u, v) of the two marginal constraints together with their
// weighted means mean_uf = sum u_i f_i wx_i and mean_vg = sum v_j g_j wy_j.
// The means are recomputed whenever the vectors change.
class DualPotentials {
 public:
  DualPotentials() = default;
  DualPotentials(std::vector<double> u, std::vector<double> v, const Problem& problem);

  static DualPotentials zero(const Problem& problem);

  std::span<const double> u() const { return u_; }
  std::span<const double> v() const { return v_; }
  double u(std::size_t i) const { return u_[i]; }
  double v(std::size_t j) const { return v_[j]; }
  double mean_uf() const { return mean_uf_; }
  double mean_vg() const { return mean_vg_; }

  // Weighted L1 norms sum |u_i| wx_i and sum |v_j| wy_j.
  double l1_u(const Problem& problem) const;
  double l1_v(const Problem& problem) const;

 private:
  std::vector<double> u_;
  std::vector<double> v_;
  double mean_uf_ = 0.0;
  double mean_vg_ = 0.0;
};

}  // namespace capot

#endif  // CAPOT_POTENTIALS_HPP_
