// Copyright 2026 The gpts Authors
//
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

#include <doctest.h>

#include "gpts/critical_points.hpp"
#include "gpts/pathwise_sampling.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>

using namespace gpts;

namespace {

using Points = std::vector<UnivariateCriticalPoint>;

// f_1(x) = x^2 - 1 on [-2, 2]: critical points at -2, 0, 2.
Points quadratic_factor() {
  return {{-2.0, 3.0, -4.0, 2.0, BoundSide::kLower},
          {0.0, -1.0, 0.0, 2.0, BoundSide::kInterior},
          {2.0, 3.0, 4.0, 2.0, BoundSide::kUpper}};
}

struct Minimum {
  Vector x;
  double value;
};

// Exhaustive oracle: every combination, classified from the gradient and
// Hessian diagonal of the product directly.
std::vector<Minimum> brute_force_minima(const std::vector<Points>& per_dim, double scale, std::size_t cap) {
  const std::size_t d = per_dim.size();
  std::vector<Minimum> out;
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    double f = scale;
    for (std::size_t i = 0; i < d; ++i) f *= per_dim[i][idx[i]].value;
    bool is_min = std::abs(f) > 1e-12;
    for (std::size_t i = 0; i < d && is_min; ++i) {
      const auto& p = per_dim[i][idx[i]];
      double rest = scale;
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) rest *= per_dim[j][idx[j]].value;
      const double g = p.deriv * rest;
      const double h = p.second * rest;
      const double tol = 1e-10 * std::abs(f);
      if (p.side == BoundSide::kLower && std::abs(g) > tol) {
        is_min = g > 0.0;
      } else if (p.side == BoundSide::kUpper && std::abs(g) > tol) {
        is_min = g < 0.0;
      } else {
        is_min = h > tol;
      }
    }
    if (is_min && f < 0.0) {
      Vector x(static_cast<Eigen::Index>(d));
      for (std::size_t i = 0; i < d; ++i) x[static_cast<Eigen::Index>(i)] = per_dim[i][idx[i]].x;
      out.push_back({x, f});
    }
    std::size_t k = 0;
    while (k < d && ++idx[k] == per_dim[k].size()) idx[k++] = 0;
    if (k == d) break;
  }
  std::stable_sort(out.begin(), out.end(), [](const Minimum& a, const Minimum& b) { return a.value < b.value; });
  if (out.size() > cap) out.resize(cap);
  return out;
}

bool same_point_sets(const std::vector<Vector>& a, const std::vector<Minimum>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& m : b) {
    const bool found = std::any_of(a.begin(), a.end(), [&](const Vector& x) { return (x - m.x).cwiseAbs().maxCoeff() <= 1e-9; });
    if (!found) return false;
  }
  return true;
}

std::vector<Points> per_dim_of(const PriorSample& f) {
  std::vector<Points> out;
  for (std::size_t i = 0; i < f.dim(); ++i) out.push_back(critical_points_1d(f, i));
  return out;
}

}  // namespace

TEST_CASE("classification of the quadratic product") {
  const auto q = quadratic_factor();
  const std::vector<UnivariateCriticalPoint> centre{q[1], q[1]};
  CHECK(classify_combination(1.0, centre) == CriticalKind::kMaximum);
  const std::vector<UnivariateCriticalPoint> edge{q[2], q[1]};
  CHECK(classify_combination(1.0, edge) == CriticalKind::kMinimum);
  const std::vector<UnivariateCriticalPoint> corner{q[0], q[2]};
  CHECK(classify_combination(1.0, corner) == CriticalKind::kMaximum);
}

TEST_CASE("univariate second-derivative test") {
  const std::vector<UnivariateCriticalPoint> p{{0.1, -0.5, 0.0, 2.0, BoundSide::kInterior}};
  CHECK(classify_combination(1.0, p) == CriticalKind::kMinimum);
  const std::vector<UnivariateCriticalPoint> q{{0.1, -0.5, 0.0, -2.0, BoundSide::kInterior}};
  CHECK(classify_combination(1.0, q) == CriticalKind::kMaximum);
}

TEST_CASE("zero value and flat curvature are degenerate") {
  const std::vector<UnivariateCriticalPoint> zero{{0.0, 1e-13, 0.0, 1.0, BoundSide::kInterior},
                                                  {0.0, 1.0, 0.0, 1.0, BoundSide::kInterior}};
  CHECK(classify_combination(1.0, zero) == CriticalKind::kDegenerate);
  const std::vector<UnivariateCriticalPoint> flat{{0.0, -1.0, 0.0, 0.0, BoundSide::kInterior}};
  CHECK(classify_combination(1.0, flat) == CriticalKind::kDegenerate);
}

TEST_CASE("boundary point with vanishing slope uses curvature") {
  const std::vector<UnivariateCriticalPoint> p{{-1.0, -1.0, 0.0, 3.0, BoundSide::kLower}};
  CHECK(classify_combination(1.0, p) == CriticalKind::kMinimum);
  const std::vector<UnivariateCriticalPoint> q{{-1.0, -1.0, 0.0, -3.0, BoundSide::kLower}};
  CHECK(classify_combination(1.0, q) == CriticalKind::kMaximum);
}

TEST_CASE("minima of the quadratic product are the four edge midpoints") {
  const auto set = select_minima({quadratic_factor(), quadratic_factor()}, 1.0);
  REQUIRE(set.minima.size() == 4);
  const std::vector<Minimum> expected{{Vector::Zero(2), 0.0}, {Vector::Zero(2), 0.0}, {Vector::Zero(2), 0.0},
                                      {Vector::Zero(2), 0.0}};
  std::vector<Minimum> pts = expected;
  pts[0].x << 2.0, 0.0;
  pts[1].x << -2.0, 0.0;
  pts[2].x << 0.0, 2.0;
  pts[3].x << 0.0, -2.0;
  CHECK(same_point_sets(set.minima, pts));
  for (double v : set.values) CHECK(v == -3.0);
  CHECK(same_point_sets(set.minima, brute_force_minima({quadratic_factor(), quadratic_factor()}, 1.0, 1000)));
}

TEST_CASE("one-dimensional selection matches a direct scan") {
  SEKernelParams p;
  p.lengthscales = {0.3};
  const auto basis = build_basis(p);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = draw_prior(basis, 1.0, seed);
    const auto pts = critical_points_1d(f, 0);
    std::vector<Minimum> scan;
    for (const auto& c : pts) {
      const bool interior_min = c.side == BoundSide::kInterior && c.second > 0.0;
      const bool lower_min = c.side == BoundSide::kLower && c.deriv > 0.0;
      const bool upper_min = c.side == BoundSide::kUpper && c.deriv < 0.0;
      if ((interior_min || lower_min || upper_min) && c.value < 0.0) scan.push_back({Vector::Constant(1, c.x), c.value});
    }
    const auto set = select_minima(f);
    CHECK(same_point_sets(set.minima, scan));
  }
}

TEST_CASE("selection equals exhaustive enumeration on 2d prior samples") {
  SEKernelParams p;
  p.lengthscales = {0.2, 0.35};
  const auto basis = build_basis(p);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = draw_prior(basis, 1.0, 4000 + seed);
    const auto per_dim = per_dim_of(f);
    const auto oracle = brute_force_minima(per_dim, f.scale(), 1000);
    const auto set = select_minima(per_dim, f.scale(), 1000);
    CHECK(same_point_sets(set.minima, oracle));
    CHECK(std::is_sorted(set.values.begin(), set.values.end()));
    for (double v : set.values) CHECK(v < 0.0);
    for (std::size_t k = 0; k < set.minima.size(); ++k) CHECK(set.values[k] == doctest::Approx(f.eval(set.minima[k])).epsilon(1e-10));
    // Truncated selection keeps the largest |f|.
    const auto small = select_minima(per_dim, f.scale(), 3);
    CHECK(small.minima.size() == std::min<std::size_t>(3, oracle.size()));
    for (std::size_t k = 0; k < small.values.size(); ++k) CHECK(small.values[k] == doctest::Approx(oracle[k].value).epsilon(1e-12));
  }
}

TEST_CASE("selection equals exhaustive enumeration in 3d and visits few combinations") {
  SEKernelParams p;
  p.lengthscales = {0.15, 0.3, 0.25};
  const auto basis = build_basis(p);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto f = draw_prior(basis, 1.0, 7000 + seed);
    const auto per_dim = per_dim_of(f);
    const auto oracle = brute_force_minima(per_dim, f.scale(), 1000);
    const auto set = select_minima(per_dim, f.scale(), 1000);
    CHECK(same_point_sets(set.minima, oracle));
    const auto top = select_minima(per_dim, f.scale(), 5);
    std::size_t total = 1;
    for (const auto& d : per_dim) total *= d.size();
    CHECK(top.combinations_visited < total);
  }
}

TEST_CASE("selected minima are empirical local minima") {
  SEKernelParams p;
  p.lengthscales = {0.25, 0.4};
  const auto basis = build_basis(p);
  const double h = 1e-4;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = draw_prior(basis, 1.0, 600 + seed);
    const auto set = select_minima(f);
    for (const auto& x : set.minima) {
      const double fx = f.eval(x);
      for (int i = 0; i < 2; ++i) {
        for (double dir : {-1.0, 1.0}) {
          Vector y = x;
          y[i] += dir * h;
          if (y[i] < -1.0 || y[i] > 1.0) continue;
          CHECK(fx < f.eval(y));
        }
      }
    }
  }
}

TEST_CASE("a positive one-dimensional sample has no negative minima") {
  SEKernelParams p;
  p.lengthscales = {1.0};
  const auto basis = build_basis(p);
  std::vector<std::vector<double>> w{std::vector<double>(basis[0].size(), 0.0)};
  w[0][1] = 1.0;
  w[0][0] = 5.0;
  const PriorSample f(basis, w, 1.0);
  for (double x = -1.0; x <= 1.0; x += 0.01) REQUIRE(f.univariate_eval(0, x) > 0.0);
  CHECK(select_minima(f).minima.empty());
}
