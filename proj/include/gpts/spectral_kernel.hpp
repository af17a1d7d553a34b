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

#pragma once

#include "gpts/common.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gpts {

/// Separable squared-exponential kernel
///   k(x, x') = amplitude * prod_i exp(-(x_i - x'_i)^2 / (2 l_i^2))
/// observed under iid Gaussian noise of variance noise_variance.
struct SEKernelParams {
  std::vector<double> lengthscales;
  double amplitude = 1.0;
  double noise_variance = 1e-6;

  std::size_t dim() const { return lengthscales.size(); }
  /// Throws std::invalid_argument unless every field is strictly positive.
  void validate() const;
};

/// Upper bound on per-dimension truncation size. Reached only for very short
/// lengthscales; a warning is emitted and the basis is marked as capped.
inline constexpr std::size_t kMaxTruncation = 512;
inline constexpr double kDefaultEta = 1e-16;

/// Truncated Mercer eigen-system of one univariate SE factor under the
/// Gaussian measure N(0, measure_scale^2).
///
/// With a = 1/(2 sigma^2), b = 1/(2 l^2), c = sqrt(a^2 + 4ab) and
/// A = a/2 + b + c/2, the eigenvalues are lambda_k = sqrt(a/A) (b/A)^k and the
/// eigenfunctions are
///   phi_k(x) = (pi c / a)^{1/4} psi_k(sqrt(c) x) exp(a x^2 / 2),
/// psi_k being the L2-normalized Hermite function.
struct DimensionSpectrum {
  double measure_scale = 1.0;
  double lengthscale = 1.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double A = 0.0;
  double eta = kDefaultEta;
  std::vector<double> eigenvalues;  // lambda_0 .. lambda_{N-1}, strictly decreasing
  bool capped = false;              // truncation stopped at kMaxTruncation

  std::size_t size() const { return eigenvalues.size(); }
  /// Constant eigenvalue ratio lambda_{k+1} / lambda_k.
  double decay() const { return b / A; }
  /// (pi c / a)^{1/4}.
  double normalization() const;
};

struct SpectralBasis {
  std::vector<DimensionSpectrum> dims;

  std::size_t dim() const { return dims.size(); }
  const DimensionSpectrum& operator[](std::size_t i) const { return dims[i]; }
};

/// Per-dimension spectra with the minimal truncation N_i >= 3 such that
/// lambda_{N_i-1} / lambda_1 <= eta_i.
SpectralBasis build_basis(const SEKernelParams& params, double measure_scale, std::span<const double> eta);
SpectralBasis build_basis(const SEKernelParams& params, double measure_scale = 1.0, double eta = kDefaultEta);

/// Fills out[k] = psi_k(u) for k < out.size() via the three-term recurrence of
/// the normalized functions; |psi_k| <= pi^{-1/4} so nothing overflows.
void hermite_functions(double u, std::span<double> out);

double eigenfunction(const SpectralBasis& basis, std::size_t dim, std::size_t k, double x);
double eigenfunction_deriv(const SpectralBasis& basis, std::size_t dim, std::size_t k, double x);
double eigenfunction_second_deriv(const SpectralBasis& basis, std::size_t dim, std::size_t k, double x);

/// Evaluates sum_k coeffs[k] * phi_k^{(order)}(x) for orders 0, 1, 2 in one
/// recurrence pass. `coeffs.size()` must not exceed the truncation size.
struct UnivariateJet {
  double value = 0.0;
  double deriv = 0.0;
  double second = 0.0;
};
UnivariateJet eigen_series(const DimensionSpectrum& spectrum, std::span<const double> coeffs, double x,
                           int max_order = 2);

double kernel_value(const SEKernelParams& params, const Vector& x, const Vector& xp);
/// Gradient of kernel_value with respect to its first argument.
Vector kernel_grad_x(const SEKernelParams& params, const Vector& x, const Vector& xp);

/// max over grid pairs of |amplitude * prod_i sum_k lambda_k phi_k(x_i) phi_k(x'_i) - k(x, x')|.
double mercer_reconstruction_error(const SpectralBasis& basis, const SEKernelParams& params,
                                   const std::vector<Vector>& grid);

}  // namespace gpts
