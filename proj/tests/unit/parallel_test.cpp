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

#include <gtest/gtest.h>

#include <atomic>
#include <numeric>
#include <stdexcept>

namespace capot {
namespace {

TEST(PairwiseSum, SmallAndLarge) {
  EXPECT_EQ(pairwise_sum({}), 0.0);
  const std::vector<double> three = {1.0, 2.0, 3.5};
  EXPECT_EQ(pairwise_sum(three), 6.5);
  std::vector<double> many(1000);
  std::iota(many.begin(), many.end(), 1.0);
  EXPECT_EQ(pairwise_sum(many), 500500.0);
}

TEST(PairwiseSum, BetterThanNaiveOnTinyTerms) {
  std::vector<double> terms(1 << 20, 0.1);
  EXPECT_NEAR(pairwise_sum(terms), 0.1 * (1 << 20), 1e-8);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 1);
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(
                   500,
                   [](std::size_t i) {
                     if (i == 321) throw std::runtime_error("boom");
                   },
                   1),
               std::runtime_error);
}

TEST(WorkerCount, Positive) { EXPECT_GE(worker_count(), 1u); }

}  // namespace
}  // namespace capot
