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

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "capot/error.hpp"
#include "capot/primal.hpp"

namespace capot {
namespace {

using Rational = mpq_class;

constexpr long long kDenominator = 1'000'000'000'000LL;
constexpr double kMaxMagnitude = 1e6;
constexpr std::size_t kMaxPivots = 200000;

Rational to_rational(double x) {
  if (!std::isfinite(x) || std::abs(x) > kMaxMagnitude) {
    throw InvalidArgument("exact oracle input out of range: " + std::to_string(x));
  }
  Rational q(mpz_class(std::to_string(std::llround(x * static_cast<double>(kDenominator)))),
             mpz_class(std::to_string(kDenominator)));
  q.canonicalize();
  return q;
}

// Dense bounded-variable primal simplex maximizing c.x subject to A x = b,
// 0 <= x <= upper, with one artificial column per row for phase one.
class ExactSimplex {
 public:
  ExactSimplex(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
               std::vector<Rational> upper)
      : rows_(a.size()), structural_(upper.size()), cols_(structural_ + rows_) {
    tableau_.assign(rows_, std::vector<Rational>(cols_));
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t j = 0; j < structural_; ++j) tableau_[r][j] = a[r][j];
      tableau_[r][structural_ + r] = 1;
    }
    upper_.resize(cols_);
    bounded_.assign(cols_, false);
    for (std::size_t j = 0; j < structural_; ++j) {
      upper_[j] = upper[j];
      bounded_[j] = true;
    }
    value_.assign(cols_, Rational(0));
    at_upper_.assign(cols_, false);
    basic_row_.assign(cols_, kNotBasic);
    basis_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      basis_[r] = structural_ + r;
      basic_row_[structural_ + r] = r;
      value_[structural_ + r] = b[r];
    }
  }

  // Phase one drives the artificials to zero; phase two maximizes c.
  void solve(const std::vector<Rational>& c) {
    std::vector<Rational> phase_one(cols_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r) phase_one[structural_ + r] = -1;
    run(phase_one, /*allow_artificial=*/true);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (value_[structural_ + r] != 0) {
        throw Error("exact oracle: rounded instance is infeasible");
      }
    }
    // Artificials stay pinned at zero from here on.
    for (std::size_t r = 0; r < rows_; ++r) {
      upper_[structural_ + r] = 0;
      bounded_[structural_ + r] = true;
    }
    std::vector<Rational> phase_two(cols_, Rational(0));
    for (std::size_t j = 0; j < structural_; ++j) phase_two[j] = c[j];
    run(phase_two, /*allow_artificial=*/false);
  }

  const Rational& value(std::size_t j) const { return value_[j]; }

 private:
  static constexpr std::size_t kNotBasic = static_cast<std::size_t>(-1);

  void run(const std::vector<Rational>& c, bool allow_artificial) {
    // Reduced costs d_j = c_j - c_B^T T_j.
    std::vector<Rational> d(c);
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& cb = c[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) d[j] -= cb * tableau_[r][j];
    }
    for (std::size_t pivots = 0;; ++pivots) {
      if (pivots > kMaxPivots) throw IterationLimitError("exact oracle pivot cap reached");
      // Bland: lowest eligible index.
      std::size_t entering = kNotBasic;
      const std::size_t limit = allow_artificial ? cols_ : structural_;
      for (std::size_t j = 0; j < limit; ++j) {
        if (basic_row_[j] != kNotBasic) continue;
        if ((!at_upper_[j] && d[j] > 0) || (at_upper_[j] && d[j] < 0)) {
          entering = j;
          break;
        }
      }
      if (entering == kNotBasic) return;
      step(entering, d);
    }
  }

  void step(std::size_t j, std::vector<Rational>& d) {
    const int dir = at_upper_[j] ? -1 : 1;
    std::optional<Rational> theta;
    std::size_t leave_row = kNotBasic;
    bool leave_to_upper = false;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& t = tableau_[r][j];
      if (t == 0) continue;
      const Rational alpha = dir > 0 ? t : Rational(-t);
      const std::size_t var = basis_[r];
      Rational ratio;
      bool to_upper;
      if (alpha > 0) {
        ratio = value_[var] / alpha;
        to_upper = false;
      } else {
        if (!has_upper(var)) continue;
        ratio = (upper_[var] - value_[var]) / (-alpha);
        to_upper = true;
      }
      const bool better = !theta || ratio < *theta ||
                          (ratio == *theta && var < basis_[leave_row]);
      if (better) {
        theta = ratio;
        leave_row = r;
        leave_to_upper = to_upper;
      }
    }
    const bool flip = has_upper(j) && (!theta || upper_[j] <= *theta);
    if (!flip && !theta) throw Error("exact oracle: unbounded direction");
    const Rational step_len = flip ? upper_[j] : *theta;

    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& t = tableau_[r][j];
      if (t == 0) continue;
      value_[basis_[r]] -= (dir > 0 ? step_len : Rational(-step_len)) * t;
    }
    if (flip) {
      at_upper_[j] = !at_upper_[j];
      value_[j] = at_upper_[j] ? upper_[j] : Rational(0);
      return;
    }
    const std::size_t leaving = basis_[leave_row];
    value_[j] = dir > 0 ? step_len : upper_[j] - step_len;
    value_[leaving] = leave_to_upper ? upper_[leaving] : Rational(0);
    at_upper_[leaving] = leave_to_upper;
    basic_row_[leaving] = kNotBasic;
    at_upper_[j] = false;
    basis_[leave_row] = j;
    basic_row_[j] = leave_row;

    const Rational pivot = tableau_[leave_row][j];
    for (Rational& x : tableau_[leave_row]) x /= pivot;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == leave_row) continue;
      const Rational factor = tableau_[r][j];
      if (factor == 0) continue;
      for (std::size_t k = 0; k < cols_; ++k) {
        if (tableau_[leave_row][k] != 0) tableau_[r][k] -= factor * tableau_[leave_row][k];
      }
    }
    const Rational dfactor = d[j];
    for (std::size_t k = 0; k < cols_; ++k) {
      if (tableau_[leave_row][k] != 0) d[k] -= dfactor * tableau_[leave_row][k];
    }
  }

  bool has_upper(std::size_t var) const { return bounded_[var]; }

  std::size_t rows_;
  std::size_t structural_;
  std::size_t cols_;
  std::vector<std::vector<Rational>> tableau_;
  std::vector<Rational> upper_;
  std::vector<Rational> value_;
  std::vector<bool> at_upper_;
  std::vector<std::size_t> basic_row_;
  std::vector<std::size_t> basis_;
  std::vector<bool> bounded_;
};

}  // namespace

ExactPrimalSolution brute_force_primal_solution(const Problem& problem) {
  const std::size_t m = problem.m();
  const std::size_t n = problem.n();
  if (m * n > kMaxExactCells) {
    throw TooLargeError("exact oracle is limited to " + std::to_string(kMaxExactCells) +
                        " cells");
  }
  std::vector<Rational> wx(m), wy(n), supply(m), demand(n);
  Rational supply_total = 0;
  Rational demand_total = 0;
  for (std::size_t i = 0; i < m; ++i) {
    wx[i] = to_rational(problem.wx(i));
    supply[i] = to_rational(problem.f(i)) * wx[i];
    supply_total += supply[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    wy[j] = to_rational(problem.wy(j));
    demand[j] = to_rational(problem.g(j)) * wy[j];
    demand_total += demand[j];
  }
  for (Rational& a : supply) a /= supply_total;
  for (Rational& b : demand) b /= demand_total;

  const std::size_t cells = m * n;
  std::vector<std::vector<Rational>> a(m + n, std::vector<Rational>(cells, Rational(0)));
  std::vector<Rational> upper(cells);
  std::vector<Rational> objective(cells);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i * n + j;
      a[i][k] = 1;
      a[m + j][k] = 1;
      upper[k] = to_rational(problem.hbar()(i, j)) * wx[i] * wy[j];
      objective[k] = to_rational(problem.s()(i, j));
    }
  }
  std::vector<Rational> rhs(supply);
  rhs.insert(rhs.end(), demand.begin(), demand.end());

  ExactSimplex simplex(std::move(a), std::move(rhs), upper);
  simplex.solve(objective);

  ExactPrimalSolution out;
  Rational total = 0;
  Matrix h(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = simplex.value(i * n + j);
      total += x * objective[i * n + j];
      h(i, j) = Rational(x / (wx[i] * wy[j])).get_d();
    }
  }
  out.value = total.get_d();
  out.plan = TransportPlan(std::move(h));
  return out;
}

double brute_force_primal(const Problem& problem) {
  return brute_force_primal_solution(problem).value;
}

}  // namespace capot
