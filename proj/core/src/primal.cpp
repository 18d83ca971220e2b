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

#include "capot/primal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "capot/dual.hpp"

namespace capot {
namespace {

constexpr double kInfiniteCapacity = std::numeric_limits<double>::infinity();

enum class ArcState { kTree, kLower, kUpper };

struct Arc {
  std::size_t tail;
  std::size_t head;
  double cost;
  double capacity;
  double flow = 0.0;
  ArcState state = ArcState::kLower;
};

// Network simplex over the bipartite transport graph plus a root node joined
// to every other node by a big-M artificial arc.
class TransportSimplex {
 public:
  explicit TransportSimplex(const Problem& problem)
      : m_(problem.m()), n_(problem.n()), root_(m_ + n_), node_count_(m_ + n_ + 1) {
    const double smax = problem.s().max_abs();
    big_m_ = 2.0 * (1.0 + smax) * static_cast<double>(m_ + n_);
    pricing_tol_ = 1e-12 * big_m_;

    supply_.assign(node_count_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) supply_[i] = problem.x().mass(i);
    for (std::size_t j = 0; j < n_; ++j) supply_[m_ + j] = -problem.y().mass(j);

    arcs_.reserve(m_ * n_ + m_ + n_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        arcs_.push_back(Arc{i, m_ + j, -problem.s()(i, j),
                            problem.hbar()(i, j) * problem.cell_volume(i, j)});
      }
    }
    // Orienting artificial arcs by the sign of the supply makes the initial
    // tree strongly feasible: every node can push flow to the root.
    for (std::size_t v = 0; v < m_ + n_; ++v) {
      Arc a = supply_[v] >= 0.0 ? Arc{v, root_, big_m_, kInfiniteCapacity}
                                : Arc{root_, v, big_m_, kInfiniteCapacity};
      a.flow = std::abs(supply_[v]);
      a.state = ArcState::kTree;
      arcs_.push_back(a);
    }
    rebuild_tree();
  }

  std::size_t run(std::size_t max_iterations) {
    const std::size_t degenerate_limit = 10 * (m_ + n_);
    std::size_t degenerate_run = 0;
    std::size_t iterations = 0;
    while (true) {
      const bool bland = degenerate_run >= degenerate_limit;
      const std::size_t entering = bland ? price_first() : price_best();
      if (entering == kNone) break;
      if (iterations >= max_iterations) {
        throw IterationLimitError("transport simplex exceeded " +
                                  std::to_string(max_iterations) + " pivots");
      }
      ++iterations;
      const double delta = pivot(entering);
      degenerate_run = delta > 0.0 ? 0 : degenerate_run + 1;
    }
    return iterations;
  }

  // Recomputes basic flows from the tree with nonbasic arcs pinned to their
  // bounds, which removes drift accumulated over many pivots.
  void settle_flows() {
    std::vector<double> balance = supply_;
    for (Arc& a : arcs_) {
      if (a.state == ArcState::kTree) continue;
      a.flow = a.state == ArcState::kUpper ? a.capacity : 0.0;
      balance[a.tail] -= a.flow;
      balance[a.head] += a.flow;
    }
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      const std::size_t v = *it;
      if (v == root_) continue;
      Arc& a = arcs_[parent_arc_[v]];
      a.flow = a.tail == v ? balance[v] : -balance[v];
      a.flow = std::clamp(a.flow, 0.0, a.capacity);
      balance[parent_[v]] += balance[v];
    }
  }

  double artificial_flow() const {
    double total = 0.0;
    for (std::size_t k = m_ * n_; k < arcs_.size(); ++k) total += arcs_[k].flow;
    return total;
  }

  double cell_flow(std::size_t i, std::size_t j) const { return arcs_[i * n_ + j].flow; }
  bool cell_in_tree(std::size_t i, std::size_t j) const {
    return arcs_[i * n_ + j].state == ArcState::kTree;
  }
  double potential(std::size_t v) const { return potential_[v]; }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  double reduced_cost(const Arc& a) const {
    return a.cost - potential_[a.tail] + potential_[a.head];
  }

  double violation(const Arc& a) const {
    if (a.state == ArcState::kTree) return 0.0;
    const double r = reduced_cost(a);
    if (a.state == ArcState::kLower) return r < -pricing_tol_ ? -r : 0.0;
    return r > pricing_tol_ ? r : 0.0;
  }

  // Dantzig pricing: largest reduced-cost violation, lowest index on ties.
  std::size_t price_best() const {
    std::size_t best = kNone;
    double best_violation = 0.0;
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
      const double viol = violation(arcs_[k]);
      if (viol > best_violation) {
        best_violation = viol;
        best = k;
      }
    }
    return best;
  }

  // Bland pricing: lowest eligible index.
  std::size_t price_first() const {
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
      if (violation(arcs_[k]) > 0.0) return k;
    }
    return kNone;
  }

  // One pivot on the cycle closed by `entering`. Returns the flow change.
  double pivot(std::size_t entering) {
    Arc& in = arcs_[entering];
    const bool increase = in.state == ArcState::kLower;
    // Flow moves first -> second across the entering arc, then back through
    // the tree from second to first.
    const std::size_t first = increase ? in.tail : in.head;
    const std::size_t second = increase ? in.head : in.tail;

    // Cycle in orientation order starting at the apex: the tree path from the
    // apex down to `first`, the entering arc, then the path from `second` up
    // to the apex. Each entry records whether the arc is traversed forward.
    struct Step {
      std::size_t arc;
      bool forward;
    };
    std::vector<Step> down;
    std::vector<Step> up;
    std::size_t a = first;
    std::size_t b = second;
    while (a != b) {
      if (depth_[a] >= depth_[b]) {
        const std::size_t k = parent_arc_[a];
        down.push_back({k, arcs_[k].head == a});
        a = parent_[a];
      } else {
        const std::size_t k = parent_arc_[b];
        up.push_back({k, arcs_[k].tail == b});
        b = parent_[b];
      }
    }
    std::reverse(down.begin(), down.end());
    std::vector<Step> cycle;
    cycle.reserve(down.size() + up.size() + 1);
    cycle.insert(cycle.end(), down.begin(), down.end());
    cycle.push_back({entering, increase});
    cycle.insert(cycle.end(), up.begin(), up.end());

    const auto residual = [&](const Step& st) {
      const Arc& arc = arcs_[st.arc];
      return st.forward ? arc.capacity - arc.flow : arc.flow;
    };
    double delta = kInfiniteCapacity;
    for (const Step& st : cycle) delta = std::min(delta, residual(st));
    if (!std::isfinite(delta)) {
      throw Error("transport simplex found an unbounded cycle");
    }
    // Last blocking arc in orientation order keeps the tree strongly feasible.
    std::size_t leave = 0;
    for (std::size_t p = 0; p < cycle.size(); ++p) {
      if (residual(cycle[p]) <= delta) leave = p;
    }

    if (delta > 0.0) {
      for (const Step& st : cycle) {
        Arc& arc = arcs_[st.arc];
        arc.flow += st.forward ? delta : -delta;
      }
    }
    const Step out = cycle[leave];
    Arc& leaving = arcs_[out.arc];
    if (out.forward) {
      leaving.flow = leaving.capacity;
      leaving.state = ArcState::kUpper;
    } else {
      leaving.flow = 0.0;
      leaving.state = ArcState::kLower;
    }
    if (out.arc != entering) {
      arcs_[entering].state = ArcState::kTree;
      rebuild_tree();
    }
    return delta;
  }

  // Parent pointers, depths, DFS order and node potentials of the current
  // spanning tree, rooted at the artificial root with potential zero.
  void rebuild_tree() {
    std::vector<std::vector<std::size_t>> incident(node_count_);
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
      if (arcs_[k].state != ArcState::kTree) continue;
      incident[arcs_[k].tail].push_back(k);
      incident[arcs_[k].head].push_back(k);
    }
    parent_.assign(node_count_, kNone);
    parent_arc_.assign(node_count_, kNone);
    depth_.assign(node_count_, 0);
    potential_.assign(node_count_, 0.0);
    order_.clear();
    std::vector<std::size_t> stack{root_};
    std::vector<bool> seen(node_count_, false);
    seen[root_] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      order_.push_back(v);
      for (std::size_t k : incident[v]) {
        const Arc& a = arcs_[k];
        const std::size_t w = a.tail == v ? a.head : a.tail;
        if (seen[w]) continue;
        seen[w] = true;
        parent_[w] = v;
        parent_arc_[w] = k;
        depth_[w] = depth_[v] + 1;
        // Zero reduced cost on tree arcs: cost = pi(tail) - pi(head).
        potential_[w] = a.tail == v ? potential_[v] - a.cost : potential_[v] + a.cost;
        stack.push_back(w);
      }
    }
    if (order_.size() != node_count_) {
      throw Error("transport simplex basis is not a spanning tree");
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t root_;
  std::size_t node_count_;
  double big_m_ = 0.0;
  double pricing_tol_ = 0.0;
  std::vector<double> supply_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> parent_arc_;
  std::vector<std::size_t> depth_;
  std::vector<double> potential_;
  std::vector<std::size_t> order_;
};

std::string describe(const FeasibilityCertificate& cert) {
  std::ostringstream os;
  os << "no plan fits under hbar: max flow " << cert.flow_value;
  if (cert.deficit) os << ", Levin deficit " << *cert.deficit;
  return os.str();
}

}  // namespace

InfeasibleError::InfeasibleError(FeasibilityCertificate certificate)
    : Error(describe(certificate)), certificate_(std::move(certificate)) {}

PrimalSolution solve_primal(const Problem& problem, const PrimalOptions& options) {
  FeasibilityCertificate cert = check_feasibility(problem, 1.0);
  if (!cert.feasible) throw InfeasibleError(std::move(cert));

  const std::size_t m = problem.m();
  const std::size_t n = problem.n();
  const std::size_t cap = options.max_iterations > 0
                              ? options.max_iterations
                              : 100 * (m * n + m + n) + 10000;
  TransportSimplex simplex(problem);
  PrimalSolution out;
  out.iterations = simplex.run(cap);
  simplex.settle_flows();
  if (simplex.artificial_flow() > kFeasibilityTol) {
    // Max flow said feasible; the simplex disagrees only through roundoff in
    // a nearly tight instance.
    throw InfeasibleError(std::move(cert));
  }

  Matrix h(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h(i, j) = std::clamp(simplex.cell_flow(i, j) / problem.cell_volume(i, j), 0.0,
                           problem.hbar()(i, j));
      if (simplex.cell_in_tree(i, j)) out.basis_cells.push_back({i, j});
    }
  }
  out.plan = TransportPlan(std::move(h));
  out.value = integrate_surplus(out.plan, problem);

  std::vector<double> u(m);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < m; ++i) u[i] = simplex.potential(i);
  for (std::size_t j = 0; j < n; ++j) v[j] = -simplex.potential(m + j);
  out.potentials = normalize(DualPotentials(std::move(u), std::move(v), problem), problem);
  return out;
}

StructureReport support_structure(const TransportPlan& plan, const Problem& problem,
                                  double tol) {
  if (plan.rows() != problem.m() || plan.cols() != problem.n()) {
    throw DimensionError("plan does not match the problem dimensions");
  }
  StructureReport r;
  r.rows = problem.m();
  r.cols = problem.n();
  r.w_mask.assign(r.rows * r.cols, false);
  for (std::size_t i = 0; i < r.rows; ++i) {
    for (std::size_t j = 0; j < r.cols; ++j) {
      const double h = plan(i, j);
      if (std::abs(h) <= tol) {
        ++r.count_zero;
      } else if (std::abs(h - problem.hbar()(i, j)) <= tol) {
        ++r.count_saturated;
        r.w_mask[i * r.cols + j] = true;
      } else {
        ++r.count_fractional;
      }
    }
  }
  return r;
}

}  // namespace capot
