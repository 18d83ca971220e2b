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

#include "capot/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "capot/error.hpp"
#include "capot/feasibility.hpp"
#include "capot/parallel.hpp"

namespace capot {
namespace {

void check_dimensions(const DualPotentials& p, const Problem& problem) {
  if (p.u().size() != problem.m() || p.v().size() != problem.n()) {
    throw DimensionError("potentials do not match the problem dimensions");
  }
}

bool within(double lhs, double rhs, double tol) {
  return lhs <= rhs + tol * (1.0 + std::abs(lhs) + std::abs(rhs));
}

}  // namespace

double eval_I(const DualPotentials& potentials, const Problem& problem) {
  check_dimensions(potentials, problem);
  const std::size_t m = problem.m();
  const std::size_t n = problem.n();
  const Matrix& s = problem.s().values();
  const Matrix& hbar = problem.hbar().values();
  std::vector<double> rows(m);
  parallel_for(m, [&](std::size_t i) {
    std::vector<double> terms(n);
    const double ui = potentials.u(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double w = s(i, j) + ui + potentials.v(j);
      terms[j] = w > 0.0 ? w * hbar(i, j) * problem.wy(j) : 0.0;
    }
    rows[i] = pairwise_sum(terms) * problem.wx(i);
  });
  return pairwise_sum(rows) - potentials.mean_uf() - potentials.mean_vg();
}

double Subgradient::squared_norm() const {
  double total = 0.0;
  for (double x : du) total += x * x;
  for (double x : dv) total += x * x;
  return total;
}

Subgradient subgradient_I(const DualPotentials& potentials, const Problem& problem) {
  check_dimensions(potentials, problem);
  const std::size_t m = problem.m();
  const std::size_t n = problem.n();
  const Matrix& s = problem.s().values();
  const Matrix& hbar = problem.hbar().values();
  Subgradient out{std::vector<double>(m), std::vector<double>(n)};
  std::vector<double> row_terms(n);
  std::vector<double> col_terms(m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool active = s(i, j) + potentials.u(i) + potentials.v(j) > 0.0;
      row_terms[j] = active ? hbar(i, j) * problem.wy(j) : 0.0;
      col_terms[j * m + i] = active ? hbar(i, j) * problem.wx(i) : 0.0;
    }
    out.du[i] = problem.wx(i) * (pairwise_sum(row_terms) - problem.f(i));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const std::span<const double> col(col_terms.data() + j * m, m);
    out.dv[j] = problem.wy(j) * (pairwise_sum(col) - problem.g(j));
  }
  return out;
}

DualPotentials normalize(const DualPotentials& potentials, const Problem& problem) {
  check_dimensions(potentials, problem);
  const double shift = (potentials.mean_uf() - potentials.mean_vg()) /
                       (problem.x().total_mass() + problem.y().total_mass());
  if (shift == 0.0) return potentials;
  std::vector<double> u(potentials.u().begin(), potentials.u().end());
  std::vector<double> v(potentials.v().begin(), potentials.v().end());
  for (double& x : u) x -= shift;
  for (double& x : v) x += shift;
  return DualPotentials(std::move(u), std::move(v), problem);
}

namespace {

// Flat working state of the minimizer. Avoids the per-step allocations of the
// public value/subgradient functions; the reported value is recomputed with
// eval_I at the end.
class DualWorkspace {
 public:
  explicit DualWorkspace(const Problem& problem)
      : problem_(problem),
        m_(problem.m()),
        n_(problem.n()),
        mass_(problem.x().total_mass() + problem.y().total_mass()),
        u_(m_),
        v_(n_),
        du_(m_),
        dv_(n_) {}

  std::vector<double>& u() { return u_; }
  std::vector<double>& v() { return v_; }

  void load(const DualPotentials& p) {
    std::copy(p.u().begin(), p.u().end(), u_.begin());
    std::copy(p.v().begin(), p.v().end(), v_.begin());
  }

  DualPotentials snapshot() const { return DualPotentials(u_, v_, problem_); }

  void normalize() {
    double uf = 0.0;
    double vg = 0.0;
    for (std::size_t i = 0; i < m_; ++i) uf += u_[i] * problem_.x().mass(i);
    for (std::size_t j = 0; j < n_; ++j) vg += v_[j] * problem_.y().mass(j);
    const double shift = (uf - vg) / mass_;
    for (double& x : u_) x -= shift;
    for (double& x : v_) x += shift;
  }

  // Value of I at (u, v); fills the subgradient and returns its squared norm
  // through `norm2`.
  double evaluate(double& norm2) {
    const Matrix& s = problem_.s().values();
    const Matrix& hbar = problem_.hbar().values();
    std::fill(dv_.begin(), dv_.end(), 0.0);
    double total = 0.0;
    double uf = 0.0;
    double vg = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto s_row = s.row(i);
      const auto h_row = hbar.row(i);
      const double ui = u_[i];
      const double wxi = problem_.wx(i);
      double row_value = 0.0;
      double row_mass = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        const double w = s_row[j] + ui + v_[j];
        if (w > 0.0) {
          const double c = h_row[j] * problem_.wy(j);
          row_value += w * c;
          row_mass += c;
          dv_[j] += h_row[j] * wxi;
        }
      }
      total += row_value * wxi;
      du_[i] = wxi * (row_mass - problem_.f(i));
      uf += ui * problem_.x().mass(i);
    }
    for (std::size_t j = 0; j < n_; ++j) {
      dv_[j] = problem_.wy(j) * (dv_[j] - problem_.g(j));
      vg += v_[j] * problem_.y().mass(j);
    }
    norm2 = 0.0;
    for (double x : du_) norm2 += x * x;
    for (double x : dv_) norm2 += x * x;
    return total - uf - vg;
  }

  void step(double size) {
    for (std::size_t i = 0; i < m_; ++i) u_[i] -= size * du_[i];
    for (std::size_t j = 0; j < n_; ++j) v_[j] -= size * dv_[j];
  }

  // Records the cut {x : I(x_t) + g_t (x - x_t) <= target} for the current
  // subgradient, evicting the oldest beyond `capacity`, and moves (u, v) to
  // its projection onto the intersection of the stored cuts. Every cut
  // contains the minimizers when target is the optimal value; with one cut
  // this is the Polyak step.
  void project_onto_cuts(double value, double target, std::size_t capacity,
                         std::size_t sweeps) {
    const std::size_t dim = m_ + n_;
    if (cuts_.size() == capacity) {
      cuts_.erase(cuts_.begin());
      offsets_.erase(offsets_.begin());
    }
    std::vector<double> g(dim);
    std::copy(du_.begin(), du_.end(), g.begin());
    std::copy(dv_.begin(), dv_.end(), g.begin() + static_cast<std::ptrdiff_t>(m_));
    const double gx = dot_point(g);
    offsets_.push_back(gx - (value - target));
    cuts_.push_back(std::move(g));

    const std::size_t k = cuts_.size();
    gram_.assign(k * k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a; b < k; ++b) {
        double d = 0.0;
        for (std::size_t c = 0; c < dim; ++c) d += cuts_[a][c] * cuts_[b][c];
        gram_[a * k + b] = gram_[b * k + a] = d;
      }
    }
    // Hildreth's method on the dual of the projection problem:
    // x = x_t - sum lambda_a g_a with lambda >= 0.
    lambda_.assign(k, 0.0);
    slack_.resize(k);
    for (std::size_t a = 0; a < k; ++a) slack_[a] = dot_point(cuts_[a]) - offsets_[a];
    for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
      double moved = 0.0;
      // Newest cut first, so the first update is the Polyak step.
      for (std::size_t r = 0; r < k; ++r) {
        const std::size_t a = k - 1 - r;
        const double gaa = gram_[a * k + a];
        if (gaa == 0.0) continue;
        const double next = std::max(0.0, lambda_[a] + slack_[a] / gaa);
        const double delta = next - lambda_[a];
        if (delta == 0.0) continue;
        lambda_[a] = next;
        for (std::size_t b = 0; b < k; ++b) slack_[b] -= delta * gram_[b * k + a];
        moved = std::max(moved, std::abs(delta) * std::sqrt(gaa));
      }
      if (moved == 0.0) break;
    }
    for (std::size_t a = 0; a < k; ++a) {
      if (lambda_[a] == 0.0) continue;
      const std::vector<double>& cut = cuts_[a];
      for (std::size_t i = 0; i < m_; ++i) u_[i] -= lambda_[a] * cut[i];
      for (std::size_t j = 0; j < n_; ++j) v_[j] -= lambda_[a] * cut[m_ + j];
    }
  }

  // Replaces (u, v) by the vertex of the kink arrangement spanned by the
  // cells closest to their kinks: a minimum spanning tree of the bipartite
  // cell graph under |s + u + v|, with s_ij + u_i + v_j = 0 imposed on its
  // edges. Near a minimizer the tree is an optimal basis and the vertex is
  // an exact minimizer, which subgradient steps alone approach only slowly.
  void snap_to_vertex() {
    const Matrix& s = problem_.s().values();
    const Matrix& hbar = problem_.hbar().values();
    order_.resize(m_ * n_);
    keys_.resize(m_ * n_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const std::size_t c = i * n_ + j;
        order_[c] = c;
        // Cells without capacity carry no kink; use them only as a last resort.
        const double r = std::abs(s(i, j) + u_[i] + v_[j]);
        keys_[c] = hbar(i, j) > 0.0 ? r : std::numeric_limits<double>::infinity();
      }
    }
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return keys_[a] < keys_[b]; });

    parent_.resize(m_ + n_);
    for (std::size_t k = 0; k < parent_.size(); ++k) parent_[k] = k;
    const auto find = [&](std::size_t k) {
      while (parent_[k] != k) k = parent_[k] = parent_[parent_[k]];
      return k;
    };
    adjacency_.assign(m_ + n_, {});
    std::size_t edges = 0;
    for (std::size_t c : order_) {
      const std::size_t i = c / n_;
      const std::size_t j = c % n_;
      const std::size_t a = find(i);
      const std::size_t b = find(m_ + j);
      if (a == b) continue;
      parent_[a] = b;
      adjacency_[i].push_back(m_ + j);
      adjacency_[m_ + j].push_back(i);
      if (++edges + 1 == m_ + n_) break;
    }

    // Anchor at u_0 and propagate along the tree; normalization fixes the
    // remaining shift.
    visited_.assign(m_ + n_, false);
    stack_.assign(1, 0);
    visited_[0] = true;
    while (!stack_.empty()) {
      const std::size_t k = stack_.back();
      stack_.pop_back();
      for (std::size_t other : adjacency_[k]) {
        if (visited_[other]) continue;
        visited_[other] = true;
        if (k < m_) {
          v_[other - m_] = -s(k, other - m_) - u_[k];
        } else {
          u_[other] = -s(other, k - m_) - v_[k - m_];
        }
        stack_.push_back(other);
      }
    }
    normalize();
  }

 private:
  double dot_point(const std::vector<double>& g) const {
    double d = 0.0;
    for (std::size_t i = 0; i < m_; ++i) d += g[i] * u_[i];
    for (std::size_t j = 0; j < n_; ++j) d += g[m_ + j] * v_[j];
    return d;
  }

  const Problem& problem_;
  std::size_t m_;
  std::size_t n_;
  double mass_;
  std::vector<double> u_;
  std::vector<double> v_;
  std::vector<double> du_;
  std::vector<double> dv_;
  std::vector<std::size_t> order_;
  std::vector<double> keys_;
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<bool> visited_;
  std::vector<std::size_t> stack_;
  std::vector<std::vector<double>> cuts_;
  std::vector<double> offsets_;
  std::vector<double> gram_;
  std::vector<double> lambda_;
  std::vector<double> slack_;
};

}  // namespace

DualSolveResult minimize_dual(const Problem& problem, const DualOptions& options) {
  problem.require_positive_marginals();
  if (!(options.tol > 0.0)) throw InvalidArgument("tol must be positive");

  DualSolveResult result;
  result.attainment_hypothesis = check_feasibility(problem, 1.0 / problem.eta()).feasible;

  DualWorkspace work(problem);
  DualWorkspace snap(problem);
  if (options.initial) {
    check_dimensions(*options.initial, problem);
    work.load(*options.initial);
  }
  work.normalize();

  std::vector<double> best_u = work.u();
  std::vector<double> best_v = work.v();
  double norm2 = 0.0;
  double value = work.evaluate(norm2);
  double best = value;

  const auto report = [&](std::size_t t) {
    if (options.observer) options.observer(DualIterate{t, work.snapshot(), value});
  };
  const auto gap_closed = [&] {
    return options.target_value && best - *options.target_value <= options.tol;
  };
  report(0);

  const double base_step = 1.0 + problem.s().max_abs();
  std::size_t t = 0;
  while (!gap_closed() && t < options.max_iter) {
    if (norm2 == 0.0) {
      // Zero is a subgradient: the iterate is a minimizer.
      result.converged = !options.target_value.has_value();
      break;
    }
    if (options.target_value) {
      work.project_onto_cuts(value, *options.target_value, std::max<std::size_t>(options.cuts, 1),
                             options.cut_sweeps);
    } else {
      const double length = base_step / std::sqrt(static_cast<double>(t + 1));
      if (length < options.step_floor) {
        result.converged = true;
        break;
      }
      work.step(length / std::sqrt(norm2));
    }
    ++t;
    work.normalize();
    value = work.evaluate(norm2);
    report(t);
    if (value < best) {
      best = value;
      best_u = work.u();
      best_v = work.v();
    }

    if (options.vertex_snap_every > 0 && t % options.vertex_snap_every == 0) {
      // Side computation: the iterate itself is left where it is, since a
      // vertex with a good value can still be far from the minimizers.
      snap.u() = work.u();
      snap.v() = work.v();
      snap.snap_to_vertex();
      double unused = 0.0;
      const double snapped = snap.evaluate(unused);
      if (snapped < best) {
        best = snapped;
        best_u = snap.u();
        best_v = snap.v();
      }
    }
  }
  if (gap_closed()) result.converged = true;

  result.potentials = DualPotentials(std::move(best_u), std::move(best_v), problem);
  result.value = eval_I(result.potentials, problem);
  result.iterations = t;
  if (options.target_value) result.gap = result.value - *options.target_value;
  return result;
}

bool CoercivityDiagnostics::inequalities_hold(double tol) const {
  bool ok = within(mean_lower, mean_sum, tol);
  if (mean_upper) ok = ok && within(mean_sum, *mean_upper, tol);
  if (eps > 0.0) {
    ok = ok && within(osc_lhs_u, osc_rhs_u, tol) && within(osc_lhs_v, osc_rhs_v, tol);
  }
  const bool normalized = std::abs(mean_uf - mean_vg) <= tol * (1.0 + std::abs(mean_uf));
  if (l1_bound && normalized) {
    ok = ok && within(l1_u, *l1_bound, tol) && within(l1_v, *l1_bound, tol);
  }
  return ok;
}

CoercivityDiagnostics coercivity_diagnostics(const DualPotentials& potentials,
                                             const Problem& problem) {
  const FeasibilityCertificate cert = check_feasibility(problem, 1.0 / problem.eta());
  return coercivity_diagnostics(potentials, problem, cert.plan);
}

CoercivityDiagnostics coercivity_diagnostics(const DualPotentials& potentials,
                                             const Problem& problem,
                                             const std::optional<TransportPlan>& witness) {
  check_dimensions(potentials, problem);
  const std::size_t m = problem.m();
  const std::size_t n = problem.n();
  const Matrix& s = problem.s().values();
  const Matrix& hbar = problem.hbar().values();

  CoercivityDiagnostics d;
  d.eta = problem.eta();
  d.eps = 1.0;
  double min_f = std::numeric_limits<double>::infinity();
  double min_g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) min_f = std::min(min_f, problem.f(i));
  for (std::size_t j = 0; j < n; ++j) min_g = std::min(min_g, problem.g(j));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double fg = problem.f(i) * problem.g(j);
      if (fg > 0.0) d.eps = std::min(d.eps, hbar(i, j) / fg);
    }
  }
  d.eps_prime = std::min({d.eps, min_f, min_g});

  d.I_value = eval_I(potentials, problem);
  d.mean_uf = potentials.mean_uf();
  d.mean_vg = potentials.mean_vg();
  d.mean_sum = d.mean_uf + d.mean_vg;
  d.mean_lower = -d.I_value;

  std::vector<double> terms(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      terms[i * n + j] =
          std::abs(s(i, j)) * problem.f(i) * problem.g(j) * problem.cell_volume(i, j);
    }
  }
  d.surplus_fg_l1 = pairwise_sum(terms);

  if (witness) {
    if (witness->rows() != m || witness->cols() != n) {
      throw DimensionError("witness plan does not match the problem dimensions");
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        terms[i * n + j] = std::abs((*witness)(i, j) * s(i, j)) * problem.cell_volume(i, j);
      }
    }
    const double ehs = d.eta * pairwise_sum(terms);
    d.witness_available = true;
    d.mean_upper = (d.I_value + ehs) / (d.eta - 1.0);
  }

  std::vector<double> osc(std::max(m, n));
  for (std::size_t i = 0; i < m; ++i) {
    osc[i] = std::abs(potentials.u(i) * problem.f(i) - d.mean_uf) * problem.wx(i);
  }
  d.sigma_u = pairwise_sum(std::span<const double>(osc).first(m));
  for (std::size_t j = 0; j < n; ++j) {
    osc[j] = std::abs(potentials.v(j) * problem.g(j) - d.mean_vg) * problem.wy(j);
  }
  d.sigma_v = pairwise_sum(std::span<const double>(osc).first(n));

  const double rhs =
      d.I_value + d.surplus_fg_l1 + std::abs(d.mean_uf) + std::abs(d.mean_vg);
  d.osc_lhs_u = d.eps / 6.0 * d.sigma_u;
  d.osc_rhs_u = rhs;
  d.osc_lhs_v = d.eps / 6.0 * d.sigma_v;
  d.osc_rhs_v = rhs;

  d.l1_u = potentials.l1_u(problem);
  d.l1_v = potentials.l1_v(problem);
  if (d.mean_upper && d.eps > 0.0 && d.eps_prime > 0.0) {
    const double half_mean = std::max(std::abs(d.mean_lower), std::abs(*d.mean_upper)) / 2.0;
    const double sigma_bound = 6.0 / d.eps * (d.I_value + d.surplus_fg_l1 + 2.0 * half_mean);
    d.l1_bound = (half_mean + sigma_bound) / d.eps_prime;
  }
  return d;
}

}  // namespace capot
