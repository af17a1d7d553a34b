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

#include "gpts/spectral_kernel.hpp"
#include "test_support.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <vector>

using namespace gpts;

namespace {

SEKernelParams params_1d(double l, double amplitude = 1.0) {
  SEKernelParams p;
  p.lengthscales = {l};
  p.amplitude = amplitude;
  return p;
}

// Golub-Welsch nodes and weights for the standard normal measure.
void gauss_hermite_normal(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  Matrix jacobi = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    jacobi(k, k - 1) = std::sqrt(static_cast<double>(k));
    jacobi(k - 1, k) = jacobi(k, k - 1);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(jacobi);
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = eig.eigenvalues()[i];
    weights[i] = eig.eigenvectors()(0, i) * eig.eigenvectors()(0, i);
  }
}

std::vector<Vector> grid_1d(int m) {
  std::vector<Vector> g;
  for (int i = 0; i < m; ++i) g.push_back(Vector::Constant(1, -1.0 + 2.0 * i / (m - 1)));
  return g;
}

std::vector<Vector> grid_2d(int m) {
  std::vector<Vector> g;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Vector x(2);
      x << -1.0 + 2.0 * i / (m - 1), -1.0 + 2.0 * j / (m - 1);
      g.push_back(x);
    }
  return g;
}

}  // namespace

TEST_CASE("constants for sigma = 1, l = 1 match high-precision values") {
  const auto basis = build_basis(params_1d(1.0), 1.0, 1e-16);
  const auto& s = basis[0];
  CHECK(s.a == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s.b == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s.c == doctest::Approx(1.1180339887498949).epsilon(1e-14));
  CHECK(s.A == doctest::Approx(1.3090169943749474).epsilon(1e-14));
  CHECK(s.eigenvalues[0] == doctest::Approx(0.6180339887498948).epsilon(1e-14));
  CHECK(s.eigenvalues[1] == doctest::Approx(0.2360679774997897).epsilon(1e-14));
  CHECK(s.decay() == doctest::Approx(0.3819660112501052).epsilon(1e-14));
  CHECK(s.size() == 41);
}

TEST_CASE("constants for a short lengthscale") {
  const auto basis = build_basis(params_1d(0.3), 1.0, 1e-16);
  CHECK(basis[0].b == doctest::Approx(1.0 / (2.0 * 0.09)).epsilon(1e-14));
  CHECK(basis[0].c == doctest::Approx(3.3706247360261141).epsilon(1e-14));
  CHECK(basis[0].A == doctest::Approx(7.4908679235686126).epsilon(1e-14));
}

TEST_CASE("eigenvalues decay geometrically and truncation is minimal") {
  for (double l : {0.1, 0.2, 0.5, 1.0, 3.0}) {
    for (double eta : {1e-16, 1e-8, 1e-3}) {
      const auto basis = build_basis(params_1d(l), 1.0, eta);
      const auto& s = basis[0];
      const auto& lam = s.eigenvalues;
      REQUIRE(lam.size() >= 3);
      for (std::size_t k = 0; k + 1 < lam.size(); ++k) {
        CHECK(lam[k + 1] < lam[k]);
        CHECK(lam[k + 1] / lam[k] == doctest::Approx(s.b / s.A).epsilon(1e-14));
      }
      const std::size_t n = lam.size();
      if (!s.capped) {
        CHECK(lam[n - 1] / lam[1] <= eta * (1.0 + 1e-12));
        if (n > 3) CHECK(lam[n - 2] / lam[1] > eta);
      }
    }
  }
}

TEST_CASE("per-dimension truncation tolerances") {
  SEKernelParams p;
  p.lengthscales = {1.0, 1.0};
  const std::vector<double> eta{1e-16, 1e-4};
  const auto basis = build_basis(p, 1.0, eta);
  CHECK(basis[0].size() == 41);
  CHECK(basis[1].size() < basis[0].size());
}

TEST_CASE("build_basis rejects invalid arguments") {
  CHECK_THROWS_AS(build_basis(params_1d(1.0), 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_basis(params_1d(1.0), 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_basis(params_1d(1.0), 0.0, 1e-16), std::invalid_argument);
  CHECK_THROWS_AS(build_basis(params_1d(-1.0), 1.0, 1e-16), std::invalid_argument);
  CHECK_THROWS_AS(build_basis(params_1d(0.0), 1.0, 1e-16), std::invalid_argument);
}

TEST_CASE("tiny lengthscale caps the truncation") {
  const auto basis = build_basis(params_1d(0.01), 1.0, 1e-16);
  CHECK(basis[0].capped);
  CHECK(basis[0].size() == kMaxTruncation);
}

TEST_CASE("eigenfunction values match high-precision oracle") {
  const auto basis = build_basis(params_1d(1.0), 1.0, 1e-16);
  CHECK(eigenfunction(basis, 0, 0, 0.0) == doctest::Approx(1.2228445449938518).epsilon(1e-14));
  CHECK(eigenfunction(basis, 0, 0, 0.0) == doctest::Approx(std::pow(basis[0].c / basis[0].a, 0.25)).epsilon(1e-14));
  CHECK(std::abs(eigenfunction(basis, 0, 1, 0.0)) < 1e-15);
  CHECK(eigenfunction(basis, 0, 5, 0.7) == doctest::Approx(0.52662855438303269).epsilon(1e-12));
  CHECK(eigenfunction(basis, 0, 12, -0.3) == doctest::Approx(-0.0088186256675425211).epsilon(1e-10));
  CHECK(eigenfunction(basis, 0, 30, 0.9) == doctest::Approx(-0.24300600617003651).epsilon(1e-11));
}

TEST_CASE("eigenfunction derivatives match high-precision oracle") {
  const auto basis = build_basis(params_1d(1.0), 1.0, 1e-16);
  CHECK(std::abs(eigenfunction_deriv(basis, 0, 0, 0.0)) < 1e-15);
  CHECK(eigenfunction_deriv(basis, 0, 1, 0.0) == doctest::Approx(1.8285790999795743).epsilon(1e-14));
  CHECK(eigenfunction_deriv(basis, 0, 5, 0.7) == doctest::Approx(-1.9304982517414568).epsilon(1e-12));
  CHECK(eigenfunction_second_deriv(basis, 0, 5, 0.7) == doctest::Approx(-7.3066613630907999).epsilon(1e-12));
  CHECK(eigenfunction_deriv(basis, 0, 12, -0.3) == doctest::Approx(3.1396161280567180).epsilon(1e-12));
  CHECK(eigenfunction_second_deriv(basis, 0, 12, -0.3) == doctest::Approx(-0.70059974680149622).epsilon(1e-10));
  CHECK(eigenfunction_deriv(basis, 0, 30, 0.9) == doctest::Approx(4.1264695589567211).epsilon(1e-12));
  CHECK(eigenfunction_second_deriv(basis, 0, 30, 0.9) == doctest::Approx(19.968512171454818).epsilon(1e-12));
}

TEST_CASE("phi_0 derivative closed form") {
  const auto basis = build_basis(params_1d(0.7), 1.0, 1e-16);
  const auto& s = basis[0];
  for (double x : {-1.0, -0.3, 0.0, 0.4, 1.0}) {
    CHECK(eigenfunction_deriv(basis, 0, 0, x) ==
          doctest::Approx((s.a - s.c) * x * eigenfunction(basis, 0, 0, x)).epsilon(1e-13));
  }
}

TEST_CASE("out-of-range order throws") {
  const auto basis = build_basis(params_1d(1.0), 1.0, 1e-16);
  CHECK_THROWS_AS(eigenfunction(basis, 0, 41, 0.0), std::out_of_range);
  CHECK_THROWS_AS(eigenfunction_deriv(basis, 0, 41, 0.0), std::out_of_range);
  CHECK_THROWS_AS(eigenfunction_second_deriv(basis, 0, 100, 0.0), std::out_of_range);
  CHECK_THROWS_AS(eigenfunction(basis, 1, 0, 0.0), std::out_of_range);
}

TEST_CASE("orthonormality under the Gaussian measure by Gauss-Hermite quadrature") {
  std::vector<double> nodes;
  std::vector<double> weights;
  gauss_hermite_normal(200, nodes, weights);
  for (double l : {1.0, 0.5}) {
    const auto basis = build_basis(params_1d(l), 1.0, 1e-16);
    for (std::size_t k = 0; k <= 10; ++k) {
      for (std::size_t j = 0; j <= k; ++j) {
        double integral = 0.0;
        for (std::size_t q = 0; q < nodes.size(); ++q) {
          integral += weights[q] * eigenfunction(basis, 0, k, nodes[q]) * eigenfunction(basis, 0, j, nodes[q]);
        }
        CHECK(std::abs(integral - (k == j ? 1.0 : 0.0)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("derivatives agree with central differences") {
  for (double l : {0.2, 0.5, 1.0}) {
    const auto basis = build_basis(params_1d(l), 1.0, 1e-16);
    const std::size_t n = basis[0].size();
    for (std::size_t k : {std::size_t{0}, std::size_t{1}, std::size_t{2}, std::size_t{7}, n / 2, n - 1}) {
      for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        const double d1 = eigenfunction_deriv(basis, 0, k, x);
        const double fd1 = test::central_difference([&](double t) { return eigenfunction(basis, 0, k, t); }, x);
        CHECK(std::abs(d1 - fd1) <= 1e-5 * (1.0 + std::abs(d1)));
        const double d2 = eigenfunction_second_deriv(basis, 0, k, x);
        const double fd2 = test::central_difference([&](double t) { return eigenfunction_deriv(basis, 0, k, t); }, x);
        CHECK(std::abs(d2 - fd2) <= 1e-5 * (1.0 + std::abs(d2)));
      }
    }
  }
}

TEST_CASE("Hermite recurrence stays finite and bounded") {
  std::vector<double> psi(201);
  const double bound = std::pow(std::numbers::pi, -0.25) * (1.0 + 1e-12);
  for (double u = -10.0; u <= 10.0; u += 0.25) {
    hermite_functions(u, psi);
    for (double v : psi) {
      REQUIRE(std::isfinite(v));
      CHECK(std::abs(v) <= bound);
    }
  }
  const auto basis = build_basis(params_1d(0.05), 1.0, 1e-16);
  for (double x : {-3.0, -1.0, 0.0, 2.0, 3.0}) {
    CHECK(std::isfinite(eigenfunction(basis, 0, 200, x)));
    CHECK(std::isfinite(eigenfunction_second_deriv(basis, 0, 200, x)));
  }
}

TEST_CASE("eigen_series agrees with termwise evaluation") {
  const auto basis = build_basis(params_1d(0.4), 1.0, 1e-16);
  CounterRng rng(42);
  std::vector<double> coeffs(basis[0].size());
  for (double& c : coeffs) c = rng.normal();
  for (double x : {-0.9, -0.2, 0.0, 0.33, 1.0}) {
    double v = 0.0, d = 0.0, s = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      v += coeffs[k] * eigenfunction(basis, 0, k, x);
      d += coeffs[k] * eigenfunction_deriv(basis, 0, k, x);
      s += coeffs[k] * eigenfunction_second_deriv(basis, 0, k, x);
    }
    const auto jet = eigen_series(basis[0], coeffs, x);
    CHECK(jet.value == doctest::Approx(v).epsilon(1e-12));
    CHECK(jet.deriv == doctest::Approx(d).epsilon(1e-12));
    CHECK(jet.second == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("kernel value and gradient") {
  auto p = params_1d(1.0);
  CHECK(kernel_value(p, Vector::Constant(1, 0.2), Vector::Constant(1, 1.2)) ==
        doctest::Approx(0.60653065971263342).epsilon(1e-15));
  SEKernelParams p2;
  p2.lengthscales = {0.3, 0.8, 1.5};
  p2.amplitude = 2.5;
  CounterRng rng(7);
  for (int t = 0; t < 20; ++t) {
    const Vector x = test::uniform_point(rng, 3);
    const Vector xp = test::uniform_point(rng, 3);
    CHECK(kernel_value(p2, x, x) == doctest::Approx(2.5));
    CHECK(kernel_grad_x(p2, x, x).norm() == 0.0);
    const Vector g = kernel_grad_x(p2, x, xp);
    const Vector fd = test::numeric_gradient([&](const Vector& z) { return kernel_value(p2, z, xp); }, x);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(g[i] - fd[i]) <= 1e-5 * (1.0 + std::abs(g[i])));
    const double k = kernel_value(p2, x, xp);
    for (int i = 0; i < 3; ++i) {
      const double l = p2.lengthscales[i];
      CHECK(g[i] == doctest::Approx(-(x[i] - xp[i]) / (l * l) * k).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(kernel_value(p2, Vector::Zero(2), Vector::Zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(kernel_grad_x(p2, Vector::Zero(3), Vector::Zero(2)), std::invalid_argument);
}

TEST_CASE("Mercer reconstruction accuracy") {
  const auto p = params_1d(1.0);
  CHECK(mercer_reconstruction_error(build_basis(p, 1.0, 1e-16), p, grid_1d(21)) <= 1e-10);
  for (double l : {0.2, 0.5, 1.0}) {
    SEKernelParams p2;
    p2.lengthscales = {l, l};
    CHECK(mercer_reconstruction_error(build_basis(p2, 1.0, 1e-16), p2, grid_2d(21)) <= 1e-6);
  }
}

TEST_CASE("Mercer reconstruction with a single term is poor for short lengthscales") {
  const auto p = params_1d(0.3);
  auto basis = build_basis(p, 1.0, 1e-16);
  basis.dims[0].eigenvalues.resize(1);
  CHECK(mercer_reconstruction_error(basis, p, grid_1d(21)) > 0.01);
}

TEST_CASE("Mercer reconstruction on a single point recovers the amplitude") {
  const auto p = params_1d(0.5, 3.0);
  const std::vector<Vector> grid{Vector::Constant(1, 0.25)};
  CHECK(mercer_reconstruction_error(build_basis(p, 1.0, 1e-16), p, grid) <= 1e-12);
}
