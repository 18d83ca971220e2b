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

#include "capot/feasibility.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>

#include "capot/error.hpp"
#include "capot/parallel.hpp"

namespace capot {
namespace {

// Residual network over source, X cells, Y cells and sink. Arcs are stored
// in pairs so that arc e ^ 1 is the reverse of e.
class TransportNetwork {
 public:
  TransportNetwork(const Problem& problem, double scale)
      : m_(problem.m()),
        n_(problem.n()),
        node_count_(m_ + n_ + 2),
        adjacency_(node_count_) {
    for (std::size_t i = 0; i < m_; ++i) add_arc(source(), x_node(i), problem.x().mass(i));
    cell_arc_.assign(m_ * n_, kNoArc);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const double cap = scale * problem.hbar()(i, j) * problem.cell_volume(i, j);
        if (cap > 0.0) cell_arc_[i * n_ + j] = add_arc(x_node(i), y_node(j), cap);
      }
    }
    for (std::size_t j = 0; j < n_; ++j) add_arc(y_node(j), sink(), problem.y().mass(j));
  }

  std::size_t source() const { return 0; }
  std::size_t sink() const { return node_count_ - 1; }
  std::size_t x_node(std::size_t i) const { return 1 + i; }
  std::size_t y_node(std::size_t j) const { return 1 + m_ + j; }

  // Highest-label push-relabel with the gap heuristic. Returns the flow value.
  double max_flow() {
    const std::size_t n = node_count_;
    const std::size_t max_height = 2 * n;
    height_.assign(n, 0);
    excess_.assign(n, 0.0);
    std::vector<std::size_t> current(n, 0);
    std::vector<std::vector<std::size_t>> buckets(max_height + 1);
    std::vector<std::size_t> count(max_height + 1, 0);
    std::vector<bool> queued(n, false);

    global_relabel();
    height_[source()] = n;
    for (std::size_t v = 0; v < n; ++v) ++count[height_[v]];

    std::size_t highest = 0;
    const auto activate = [&](std::size_t v) {
      if (v == source() || v == sink() || queued[v]) return;
      if (excess_[v] <= kFlowTolerance || height_[v] >= max_height) return;
      queued[v] = true;
      buckets[height_[v]].push_back(v);
      highest = std::max(highest, height_[v]);
    };

    for (std::size_t e : adjacency_[source()]) {
      const double delta = residual_[e];
      if (delta <= 0.0) continue;
      push(e, delta);
      activate(head_[e]);
    }

    while (true) {
      while (highest > 0 && buckets[highest].empty()) --highest;
      if (buckets[highest].empty()) break;
      const std::size_t v = buckets[highest].back();
      buckets[highest].pop_back();
      queued[v] = false;

      // Discharge v.
      while (excess_[v] > kFlowTolerance && height_[v] < max_height) {
        if (current[v] == adjacency_[v].size()) {
          const std::size_t old_height = height_[v];
          std::size_t next = max_height;
          for (std::size_t e : adjacency_[v]) {
            if (residual_[e] > 0.0) next = std::min(next, height_[head_[e]] + 1);
          }
          --count[old_height];
          height_[v] = next;
          ++count[next];
          current[v] = 0;
          if (count[old_height] == 0 && old_height < n) {
            apply_gap(old_height, count, buckets, queued);
            highest = max_height;
          }
          continue;
        }
        const std::size_t e = adjacency_[v][current[v]];
        const std::size_t w = head_[e];
        if (residual_[e] > 0.0 && height_[v] == height_[w] + 1) {
          push(e, std::min(excess_[v], residual_[e]));
          activate(w);
          if (residual_[e] > 0.0 && excess_[v] <= kFlowTolerance) break;
        }
        ++current[v];
      }
    }
    return excess_[sink()];
  }

  // Flow on the X->Y arc of cell (i, j).
  double cell_flow(std::size_t i, std::size_t j) const {
    const std::size_t e = cell_arc_[i * n_ + j];
    if (e == kNoArc) return 0.0;
    return residual_[e ^ 1];
  }

  // Nodes reachable from the source through arcs with residual above the
  // flow tolerance.
  std::vector<bool> source_side() const {
    std::vector<bool> seen(node_count_, false);
    std::deque<std::size_t> queue{source()};
    seen[source()] = true;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t e : adjacency_[v]) {
        const std::size_t w = head_[e];
        if (!seen[w] && residual_[e] > kFlowTolerance) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    return seen;
  }

 private:
  static constexpr std::size_t kNoArc = std::numeric_limits<std::size_t>::max();

  std::size_t add_arc(std::size_t from, std::size_t to, double cap) {
    const std::size_t e = head_.size();
    head_.push_back(to);
    residual_.push_back(cap);
    adjacency_[from].push_back(e);
    head_.push_back(from);
    residual_.push_back(0.0);
    adjacency_[to].push_back(e + 1);
    return e;
  }

  void push(std::size_t e, double delta) {
    const std::size_t from = head_[e ^ 1];
    residual_[e] -= delta;
    residual_[e ^ 1] += delta;
    excess_[from] -= delta;
    excess_[head_[e]] += delta;
  }

  // Exact distance-to-sink labels by reverse BFS; nodes that cannot reach
  // the sink start at the node count.
  void global_relabel() {
    const std::size_t n = node_count_;
    std::fill(height_.begin(), height_.end(), n);
    height_[sink()] = 0;
    std::deque<std::size_t> queue{sink()};
    while (!queue.empty()) {
      const std::size_t w = queue.front();
      queue.pop_front();
      for (std::size_t e : adjacency_[w]) {
        // e is w -> v; the forward arc v -> w is e ^ 1.
        const std::size_t v = head_[e];
        if (v != source() && height_[v] == n && residual_[e ^ 1] > 0.0) {
          height_[v] = height_[w] + 1;
          queue.push_back(v);
        }
      }
    }
  }

  void apply_gap(std::size_t gap, std::vector<std::size_t>& count,
                 std::vector<std::vector<std::size_t>>& buckets,
                 std::vector<bool>& queued) {
    const std::size_t n = node_count_;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == source() || v == sink()) continue;
      if (height_[v] > gap && height_[v] < n) {
        --count[height_[v]];
        height_[v] = n + 1;
        ++count[height_[v]];
      }
    }
    // Queued nodes may now sit in stale buckets; rebuild them.
    for (auto& bucket : buckets) bucket.clear();
    std::fill(queued.begin(), queued.end(), false);
    for (std::size_t v = 0; v < n; ++v) {
      if (v == source() || v == sink()) continue;
      if (excess_[v] > kFlowTolerance && height_[v] < 2 * n) {
        queued[v] = true;
        buckets[height_[v]].push_back(v);
      }
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t node_count_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::size_t> head_;
  std::vector<double> residual_;
  std::vector<std::size_t> cell_arc_;
  std::vector<std::size_t> height_;
  std::vector<double> excess_;
};

void check_scale(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("feasibility scale must be positive and finite");
  }
}

}  // namespace

double levin_deficit(const Problem& problem, double scale, const Rectangle& rect) {
  std::vector<double> fa;
  fa.reserve(rect.a.size());
  for (std::size_t i : rect.a) fa.push_back(problem.x().mass(i));
  std::vector<double> gb;
  gb.reserve(rect.b.size());
  for (std::size_t j : rect.b) gb.push_back(problem.y().mass(j));
  std::vector<double> cap;
  cap.reserve(rect.a.size() * rect.b.size());
  for (std::size_t i : rect.a) {
    for (std::size_t j : rect.b) {
      cap.push_back(problem.hbar()(i, j) * problem.cell_volume(i, j));
    }
  }
  return pairwise_sum(fa) + pairwise_sum(gb) - 1.0 - scale * pairwise_sum(cap);
}

FeasibilityCertificate check_feasibility(const Problem& problem, double scale) {
  check_scale(scale);
  TransportNetwork network(problem, scale);
  FeasibilityCertificate cert;
  cert.flow_value = network.max_flow();
  cert.max_deficit = 1.0 - cert.flow_value;
  cert.feasible = cert.flow_value >= 1.0 - kFeasibilityTol;

  const std::size_t m = problem.m();
  const std::size_t n = problem.n();
  if (cert.feasible) {
    Matrix h(m, n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double upper = scale * problem.hbar()(i, j);
        h(i, j) = std::clamp(network.cell_flow(i, j) / problem.cell_volume(i, j), 0.0, upper);
      }
    }
    cert.plan = TransportPlan(std::move(h));
    return cert;
  }

  const std::vector<bool> side = network.source_side();
  Rectangle rect;
  for (std::size_t i = 0; i < m; ++i) {
    if (side[network.x_node(i)]) rect.a.push_back(i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!side[network.y_node(j)]) rect.b.push_back(j);
  }
  cert.deficit = levin_deficit(problem, scale, rect);
  cert.rectangle = std::move(rect);
  return cert;
}

FeasibilityCertificate brute_force_levin(const Problem& problem, double scale) {
  check_scale(scale);
  const std::size_t m = problem.m();
  const std::size_t n = problem.n();
  if (m > kMaxLevinEnumerationAxis || n > kMaxLevinEnumerationAxis) {
    throw TooLargeError("rectangle enumeration is limited to " +
                        std::to_string(kMaxLevinEnumerationAxis) + " cells per axis");
  }
  // Gray-code walk over subsets A of X; for each A a second Gray-code walk
  // over subsets B of Y with incremental sums.
  std::vector<double> column_cap(n, 0.0);
  double fa = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  std::uint32_t best_a = 0;
  std::uint32_t best_b = 0;
  std::uint32_t a_bits = 0;
  const std::uint32_t a_count = 1u << m;
  const std::uint32_t b_count = 1u << n;
  for (std::uint32_t ka = 0; ka < a_count; ++ka) {
    if (ka > 0) {
      const int i = std::countr_zero(ka);
      const double sign = (a_bits >> i) & 1u ? -1.0 : 1.0;
      a_bits ^= 1u << i;
      fa += sign * problem.x().mass(i);
      for (std::size_t j = 0; j < n; ++j) {
        column_cap[j] += sign * scale * problem.hbar()(i, j) * problem.cell_volume(i, j);
      }
    }
    double gb = 0.0;
    double cap = 0.0;
    std::uint32_t b_bits = 0;
    for (std::uint32_t kb = 0; kb < b_count; ++kb) {
      if (kb > 0) {
        const int j = std::countr_zero(kb);
        const double sign = (b_bits >> j) & 1u ? -1.0 : 1.0;
        b_bits ^= 1u << j;
        gb += sign * problem.y().mass(j);
        cap += sign * column_cap[j];
      }
      const double deficit = fa + gb - 1.0 - cap;
      if (deficit > best) {
        best = deficit;
        best_a = a_bits;
        best_b = b_bits;
      }
    }
  }

  Rectangle rect;
  for (std::size_t i = 0; i < m; ++i) {
    if ((best_a >> i) & 1u) rect.a.push_back(i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if ((best_b >> j) & 1u) rect.b.push_back(j);
  }
  FeasibilityCertificate cert;
  cert.max_deficit = levin_deficit(problem, scale, rect);
  cert.feasible = cert.max_deficit <= kFeasibilityTol;
  cert.flow_value = 1.0 - std::max(0.0, cert.max_deficit);
  if (!cert.feasible) {
    cert.deficit = cert.max_deficit;
    cert.rectangle = std::move(rect);
  }
  return cert;
}

}  // namespace capot
