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
#include "gpts/spectral_kernel.hpp"

#include <cstddef>
#include <cstdint>

namespace gpts {

/// Observations with inputs mapped to [-1, 1]^d and standardized outputs.
class Dataset {
 public:
  Dataset() = default;

  /// Normalizes `x_raw` (rows are points) against `raw_bounds` and
  /// standardizes `y_raw`. A constant `y_raw` keeps unit scale.
  static Dataset from_raw(const Matrix& x_raw, const Vector& y_raw, const Box& raw_bounds);
  /// Data that is already normalized and standardized.
  static Dataset from_normalized(const Matrix& x, const Vector& y);

  const Matrix& x() const { return x_; }
  const Vector& y() const { return y_; }
  Vector point(std::size_t i) const { return x_.row(static_cast<Eigen::Index>(i)).transpose(); }
  std::size_t size() const { return static_cast<std::size_t>(x_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(x_.cols()); }
  const Box& raw_bounds() const { return raw_bounds_; }
  double y_mean() const { return y_mean_; }
  double y_std() const { return y_std_; }

  Vector normalize(const Vector& x_raw) const;
  Vector unnormalize(const Vector& x) const;
  double standardize(double y_raw) const { return (y_raw - y_mean_) / y_std_; }
  double unstandardize(double y) const { return y * y_std_ + y_mean_; }

 private:
  Matrix x_;
  Vector y_;
  Box raw_bounds_;
  double y_mean_ = 0.0;
  double y_std_ = 1.0;
};

/// Lower Cholesky factor of `a + jitter * I`, escalating jitter by x10 from
/// 1e-10 to 1e-4 while the factorization fails. Throws NumericalError after.
struct CholeskyResult {
  Matrix lower;
  double jitter = 0.0;
};
CholeskyResult robust_cholesky(const Matrix& a);

Matrix kernel_matrix(const SEKernelParams& params, const Matrix& x);
/// k(x, X) for every row of X.
Vector kernel_vector(const SEKernelParams& params, const Vector& x, const Matrix& data);

/// Exact GP posterior conditioned on a dataset, with C = K + noise * I.
class GPPosterior {
 public:
  GPPosterior(SEKernelParams params, Matrix x, Vector y, CholeskyResult chol);

  const SEKernelParams& params() const { return params_; }
  const Matrix& x() const { return x_; }
  const Vector& y() const { return y_; }
  const Matrix& chol_lower() const { return chol_.lower; }
  double jitter() const { return chol_.jitter; }
  const Vector& alpha() const { return alpha_; }
  std::size_t size() const { return static_cast<std::size_t>(x_.rows()); }
  std::size_t dim() const { return params_.dim(); }

  /// Solves C z = rhs with two triangular solves.
  Vector solve(const Vector& rhs) const;

  double mean(const Vector& x) const;
  /// Posterior variance, clamped at 0.
  double variance(const Vector& x) const;
  /// Mean and variance with their gradients, sharing one kernel vector.
  void predict_with_grad(const Vector& x, double& mean, double& var, Vector& mean_grad, Vector& var_grad) const;

 private:
  SEKernelParams params_;
  Matrix x_;
  Vector y_;
  CholeskyResult chol_;
  Vector alpha_;
};

GPPosterior fit_posterior(const Dataset& data, const SEKernelParams& params);

/// log p(y | X, params). When `grad` is non-null it receives derivatives
/// with respect to (log l_1, ..., log l_d, log amplitude). Noise is held fixed.
double log_marginal_likelihood(const Dataset& data, const SEKernelParams& params, Vector* grad = nullptr);

struct HyperFitOptions {
  double min_lengthscale = 0.05;
  double max_lengthscale = 5.0;
  double min_amplitude = 0.1;
  double max_amplitude = 10.0;
  std::size_t starts = 8;
  std::uint64_t seed = 0;
};

/// Maximizes the log marginal likelihood over ARD lengthscales and amplitude
/// with multi-start bounded quasi-Newton in log-parameter space.
SEKernelParams fit_hyperparameters(const Dataset& data, double noise_variance, const HyperFitOptions& options = {});

}  // namespace gpts
