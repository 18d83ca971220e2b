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

#include "capot/instances.hpp"

#include <cmath>
#include <random>
#include <string>

#include "capot/error.hpp"
#include "capot/feasibility.hpp"
#include "capot/parallel.hpp"

namespace capot {
namespace {

constexpr double kTightMargin = 1e-10;
constexpr double kTightFlowTol = 1e-13;

// Cell masses drawn as shifted exponentials and normalized, which keeps every
// entry away from zero.
std::vector<double> random_masses(std::size_t count, std::mt19937_64& rng) {
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> masses(count);
  for (double& x : masses) x = draw(rng) + 0.1;
  const double total = pairwise_sum(masses);
  for (double& x : masses) x /= total;
  return masses;
}

Marginal density_from_masses(const Axis& axis, const std::vector<double>& masses) {
  std::vector<double> density(masses.size());
  for (std::size_t i = 0; i < masses.size(); ++i) density[i] = masses[i] / axis.weight(i);
  return Marginal(axis, std::move(density));
}

Kernel random_surplus(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> draw(-1.0, 1.0);
  Matrix s(m, n);
  for (double& x : s.data()) x = draw(rng);
  return Kernel(std::move(s), KernelKind::kSurplus);
}

// Matrix scaling of a random positive kernel onto the given cell masses.
Matrix random_coupling(const std::vector<double>& a, const std::vector<double>& b,
                       std::mt19937_64& rng) {
  std::normal_distribution<double> draw(0.0, 1.0);
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  Matrix x(m, n);
  for (double& v : x.data()) v = std::exp(draw(rng));
  for (int sweep = 0; sweep < 10000; ++sweep) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const auto row = x.row(i);
      const double total = pairwise_sum(row);
      for (double& v : row) v *= a[i] / total;
    }
    for (std::size_t j = 0; j < n; ++j) {
      double total = 0.0;
      for (std::size_t i = 0; i < m; ++i) total += x(i, j);
      worst = std::max(worst, std::abs(total - b[j]));
      for (std::size_t i = 0; i < m; ++i) x(i, j) *= b[j] / total;
    }
    if (worst < 1e-15) break;
  }
  return x;
}

Problem uniform_product_cap(std::size_t m, std::size_t n) {
  Axis ax = Axis::uniform(m);
  Axis ay = Axis::uniform(n);
  Kernel s = builtin_surplus("product", ax, ay);
  return Problem(Marginal::uniform(ax), Marginal::uniform(ay),
                 Kernel::constant(m, n, 1.0, KernelKind::kCapacity), std::move(s));
}

Problem random_feasible(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  Axis ax = Axis::uniform(m);
  Axis ay = Axis::uniform(n);
  const std::vector<double> a = random_masses(m, rng);
  const std::vector<double> b = random_masses(n, rng);
  Marginal f = density_from_masses(ax, a);
  Marginal g = density_from_masses(ay, b);
  const Matrix coupling = random_coupling(a, b, rng);
  std::uniform_real_distribution<double> slack(0.02, 0.5);
  Matrix hbar(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double witness = coupling(i, j) / (ax.weight(i) * ay.weight(j));
      hbar(i, j) = kRandomFeasibleEta * witness + slack(rng) * f.density(i) * g.density(j);
    }
  }
  Kernel s = random_surplus(m, n, rng);
  return Problem(std::move(f), std::move(g), Kernel(std::move(hbar), KernelKind::kCapacity),
                 std::move(s), kRandomFeasibleEta);
}

Problem random_tight(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  Axis ax = Axis::uniform(m);
  Axis ay = Axis::uniform(n);
  Marginal f = density_from_masses(ax, random_masses(m, rng));
  Marginal g = density_from_masses(ay, random_masses(n, rng));
  std::uniform_real_distribution<double> shape_draw(0.2, 1.0);
  Matrix shape(m, n);
  for (double& x : shape.data()) x = shape_draw(rng);
  Kernel s = random_surplus(m, n, rng);
  const Problem base(f, g, Kernel(shape, KernelKind::kCapacity), s);

  const auto routes_all = [&](double scale) {
    return check_feasibility(base, scale).flow_value >= 1.0 - kTightFlowTol;
  };
  double hi = 1.0;
  while (!routes_all(hi)) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (routes_all(mid) ? hi : lo) = mid;
  }
  // A relative hair above the bracket keeps the instance feasible in exact
  // arithmetic, not only up to the flow tolerance.
  hi *= 1.0 + kTightMargin;
  for (double& x : shape.data()) x *= hi;
  return base.with_capacity(Kernel(std::move(shape), KernelKind::kCapacity));
}

}  // namespace

Problem generate_instance(std::string_view kind, std::size_t m, std::size_t n,
                          std::uint64_t seed) {
  if (m == 0 || n == 0) throw InvalidArgument("instance dimensions must be positive");
  std::mt19937_64 rng(seed);
  if (kind == "uniform_product_cap") return uniform_product_cap(m, n);
  if (kind == "random_feasible") return random_feasible(m, n, rng);
  if (kind == "random_tight") return random_tight(m, n, rng);
  throw InvalidArgument("unknown instance kind '" + std::string(kind) + "'");
}

}  // namespace capot
