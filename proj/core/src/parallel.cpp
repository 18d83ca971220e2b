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

#include "capot/parallel.hpp"

#include <cstdlib>
#include <string>

namespace capot {

std::size_t worker_count() {
  static const std::size_t cached = [] {
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("CAPOT_THREADS");
    if (env == nullptr || *env == '\0') return hw;
    char* end = nullptr;
    const unsigned long requested = std::strtoul(env, &end, 10);
    if (end == env || requested == 0) return hw;
    return static_cast<std::size_t>(requested);
  }();
  return cached;
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 8;
  if (values.size() <= kLeaf) {
    double total = 0.0;
    for (double x : values) total += x;
    return total;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace capot
