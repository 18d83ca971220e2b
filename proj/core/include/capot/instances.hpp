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

#ifndef CAPOT_INSTANCES_HPP_
#define CAPOT_INSTANCES_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "capot/grid.hpp"

namespace capot {

// Synthetic problems on uniform grids, deterministic in the seed.
//
//   uniform_product_cap  f = g = 1, hbar = 1, product surplus; the product
//                        plan is the only feasible one.
//   random_feasible      positive random marginals, hbar = eta W + slack for
//                        a random coupling W, eta = 1.5, s ~ U(-1, 1). Plans
//                        under hbar / eta exist by construction.
//   random_tight         random capacity shape scaled down by bisection until
//                        the max flow only just reaches one; s ~ U(-1, 1).
//
// Throws InvalidArgument for an unknown kind or a zero dimension.
Problem generate_instance(std::string_view kind, std::size_t m, std::size_t n,
                          std::uint64_t seed);

inline constexpr double kRandomFeasibleEta = 1.5;

}  // namespace capot

#endif  // CAPOT_INSTANCES_HPP_
