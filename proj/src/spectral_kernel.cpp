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

#include "gpts/spectral_kernel.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gpts {

namespace {

void check_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw std::invalid_argument(os.str());
  }
}

const DimensionSpectrum& spectrum_at(const SpectralBasis& basis, std::size_t dim, std::size_t k) {
  if (dim >= basis.dim()) throw std::out_of_range("eigenfunction: dimension index out of range");
  const auto& s = basis.dims[dim];
  if (k >= s.size()) {
    std::ostringstream os;
    os << "eigenfunction: order " << k << " outside truncation of size " << s.size();
    throw std::out_of_range(os.str());
  }
  return s;
}

DimensionSpectrum make_spectrum(double lengthscale, double measure_scale, double eta) {
  DimensionSpectrum s;
  s.measure_scale = measure_scale;
  s.lengthscale = lengthscale;
  s.eta = eta;
  s.a = 1.0 / (2.0 * measure_scale * measure_scale);
  s.b = 1.0 / (2.0 * lengthscale * lengthscale);
  s.c = std::sqrt(s.a * s.a + 4.0 * s.a * s.b);
  s.A = 0.5 * s.a + s.b + 0.5 * s.c;

  const double lambda0 = std::sqrt(s.a / s.A);
  const double ratio = s.b / s.A;
  // lambda_{N-1}/lambda_1 = ratio^{N-2}; grow N until it drops to eta.
  std::size_t n = 3;
  double tail = ratio;
  while (tail > eta && n < kMaxTruncation) {
    tail *= ratio;
    ++n;
  }
  if (tail > eta) {
    s.capped = true;
    // Reported once per process; the flag on the spectrum records every case.
    static std::atomic<bool> reported{false};
    if (!reported.exchange(true)) {
      std::ostringstream os;
      os << "spectral truncation capped at " << kMaxTruncation << " terms for lengthscale " << lengthscale
         << " (eigenvalue ratio " << tail << " > eta " << eta << ")";
      warn(os.str());
    }
  }
  s.eigenvalues.resize(n);
  double lam = lambda0;
  for (std::size_t k = 0; k < n; ++k) {
    s.eigenvalues[k] = lam;
    lam *= ratio;
  }
  return s;
}

}  // namespace

void SEKernelParams::validate() const {
  if (lengthscales.empty()) throw std::invalid_argument("SEKernelParams: no lengthscales");
  for (double l : lengthscales) {
    if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("SEKernelParams: lengthscale must be positive");
  }
  if (!(amplitude > 0.0) || !std::isfinite(amplitude))
    throw std::invalid_argument("SEKernelParams: amplitude must be positive");
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance))
    throw std::invalid_argument("SEKernelParams: noise variance must be positive");
}

double DimensionSpectrum::normalization() const { return std::pow(std::numbers::pi * c / a, 0.25); }

SpectralBasis build_basis(const SEKernelParams& params, double measure_scale, std::span<const double> eta) {
  for (double l : params.lengthscales) {
    if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("build_basis: lengthscale must be positive");
  }
  if (params.lengthscales.empty()) throw std::invalid_argument("build_basis: no lengthscales");
  if (!(measure_scale > 0.0) || !std::isfinite(measure_scale))
    throw std::invalid_argument("build_basis: measure scale must be positive");
  check_dim(eta.size(), params.dim(), "build_basis eta");
  for (double e : eta) {
    if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("build_basis: eta must lie in (0, 1)");
  }
  SpectralBasis basis;
  basis.dims.reserve(params.dim());
  for (std::size_t i = 0; i < params.dim(); ++i) {
    basis.dims.push_back(make_spectrum(params.lengthscales[i], measure_scale, eta[i]));
  }
  return basis;
}

SpectralBasis build_basis(const SEKernelParams& params, double measure_scale, double eta) {
  const std::vector<double> etas(params.dim(), eta);
  return build_basis(params, measure_scale, etas);
}

void hermite_functions(double u, std::span<double> out) {
  if (out.empty()) return;
  out[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * u * u);
  if (out.size() == 1) return;
  out[1] = std::numbers::sqrt2 * u * out[0];
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const double kd = static_cast<double>(k);
    out[k + 1] = u * std::sqrt(2.0 / (kd + 1.0)) * out[k] - std::sqrt(kd / (kd + 1.0)) * out[k - 1];
  }
}

UnivariateJet eigen_series(const DimensionSpectrum& s, std::span<const double> coeffs, double x, int max_order) {
  const std::size_t n = coeffs.size();
  UnivariateJet jet;
  if (n == 0) return jet;
  const double sqrt_c = std::sqrt(s.c);
  const double u = sqrt_c * x;
  const double envelope = s.normalization() * std::exp(0.5 * s.a * x * x);

  // Inline recurrence (avoids a scratch buffer on the hot path).
  const double sqrt2 = std::numbers::sqrt2;
  double psi_prev = 0.0;
  double psi = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * u * u);
  double sum0 = 0.0;
  double sum_dpsi = 0.0;
  double sum_d2psi = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double w = coeffs[k];
    sum0 += w * psi;
    if (max_order >= 1) {
      // psi_k' = sqrt(2k) psi_{k-1} - u psi_k
      const double dpsi = std::sqrt(2.0 * kd) * psi_prev - u * psi;
      sum_dpsi += w * dpsi;
      if (max_order >= 2) {
        // psi_k'' = (u^2 - 2k - 1) psi_k
        sum_d2psi += w * (u * u - 2.0 * kd - 1.0) * psi;
      }
    }
    const double next = (k == 0) ? sqrt2 * u * psi
                                 : u * std::sqrt(2.0 / (kd + 1.0)) * psi - std::sqrt(kd / (kd + 1.0)) * psi_prev;
    psi_prev = psi;
    psi = next;
  }
  // phi = E(x) psi(u) with E = C exp(a x^2/2):
  //   phi'  = E [sqrt(c) psi' + a x psi]
  //   phi'' = E [c psi'' + 2 a x sqrt(c) psi' + (a + a^2 x^2) psi]
  jet.value = envelope * sum0;
  if (max_order >= 1) jet.deriv = envelope * (sqrt_c * sum_dpsi + s.a * x * sum0);
  if (max_order >= 2) {
    jet.second = envelope * (s.c * sum_d2psi + 2.0 * s.a * x * sqrt_c * sum_dpsi + (s.a + s.a * s.a * x * x) * sum0);
  }
  return jet;
}

namespace {
UnivariateJet single_term(const SpectralBasis& basis, std::size_t dim, std::size_t k, double x, int order) {
  const auto& s = spectrum_at(basis, dim, k);
  std::vector<double> coeffs(k + 1, 0.0);
  coeffs[k] = 1.0;
  return eigen_series(s, coeffs, x, order);
}
}  // namespace

double eigenfunction(const SpectralBasis& basis, std::size_t dim, std::size_t k, double x) {
  return single_term(basis, dim, k, x, 0).value;
}

double eigenfunction_deriv(const SpectralBasis& basis, std::size_t dim, std::size_t k, double x) {
  return single_term(basis, dim, k, x, 1).deriv;
}

double eigenfunction_second_deriv(const SpectralBasis& basis, std::size_t dim, std::size_t k, double x) {
  return single_term(basis, dim, k, x, 2).second;
}

double kernel_value(const SEKernelParams& params, const Vector& x, const Vector& xp) {
  check_dim(static_cast<std::size_t>(x.size()), params.dim(), "kernel_value");
  check_dim(static_cast<std::size_t>(xp.size()), params.dim(), "kernel_value");
  double r2 = 0.0;
  for (std::size_t i = 0; i < params.dim(); ++i) {
    const double d = (x[i] - xp[i]) / params.lengthscales[i];
    r2 += d * d;
  }
  return params.amplitude * std::exp(-0.5 * r2);
}

Vector kernel_grad_x(const SEKernelParams& params, const Vector& x, const Vector& xp) {
  const double k = kernel_value(params, x, xp);
  Vector g(x.size());
  for (std::size_t i = 0; i < params.dim(); ++i) {
    const double l = params.lengthscales[i];
    g[i] = -(x[i] - xp[i]) / (l * l) * k;
  }
  return g;
}

double mercer_reconstruction_error(const SpectralBasis& basis, const SEKernelParams& params,
                                   const std::vector<Vector>& grid) {
  const std::size_t d = basis.dim();
  check_dim(params.dim(), d, "mercer_reconstruction_error");
  const std::size_t m = grid.size();
  // phi[i][p * N + k] = phi_k(grid[p][i]) for dimension i.
  std::vector<std::vector<double>> phi(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto& s = basis.dims[i];
    const auto n = s.size();
    phi[i].resize(m * n);
    for (std::size_t p = 0; p < m; ++p) {
      check_dim(static_cast<std::size_t>(grid[p].size()), d, "mercer_reconstruction_error grid");
      const double x = grid[p][i];
      std::span<double> row(phi[i].data() + p * n, n);
      hermite_functions(std::sqrt(s.c) * x, row);
      const double envelope = s.normalization() * std::exp(0.5 * s.a * x * x);
      for (double& v : row) v *= envelope;
    }
  }
  double worst = 0.0;
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = p; q < m; ++q) {
      double prod = params.amplitude;
      for (std::size_t i = 0; i < d; ++i) {
        const auto& s = basis.dims[i];
        const auto n = s.size();
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) sum += s.eigenvalues[k] * phi[i][p * n + k] * phi[i][q * n + k];
        prod *= sum;
      }
      worst = std::max(worst, std::abs(prod - kernel_value(params, grid[p], grid[q])));
    }
  }
  return worst;
}

}  // namespace gpts
