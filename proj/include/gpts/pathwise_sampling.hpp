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
#include "gpts/gp_model.hpp"
#include "gpts/random.hpp"
#include "gpts/spectral_kernel.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gpts {

/// Separable prior sample path
///   f(x) = scale * prod_i f_i(x_i),   f_i(x) = sum_k w_{i,k} sqrt(lambda_{i,k}) phi_{i,k}(x),
/// where scale = sqrt(amplitude). Immutable; evaluation is thread-safe.
class PriorSample {
 public:
  PriorSample(SpectralBasis basis, std::vector<std::vector<double>> weights, double scale);

  std::size_t dim() const { return basis_.dim(); }
  const SpectralBasis& basis() const { return basis_; }
  const std::vector<double>& weights(std::size_t dim) const { return weights_[dim]; }
  double scale() const { return scale_; }

  /// f_i and its first two derivatives (no amplitude scale).
  UnivariateJet univariate_jet(std::size_t dim, double x, int max_order = 2) const;
  double univariate_eval(std::size_t dim, double x) const { return univariate_jet(dim, x, 0).value; }
  double univariate_deriv(std::size_t dim, double x) const { return univariate_jet(dim, x, 1).deriv; }
  double univariate_second_deriv(std::size_t dim, double x) const { return univariate_jet(dim, x, 2).second; }

  double eval(const Vector& x) const;
  /// Value and gradient; df/dx_i = scale * f_i'(x_i) prod_{j != i} f_j(x_j).
  double eval_grad(const Vector& x, Vector& grad) const;
  Vector grad(const Vector& x) const;

 private:
  SpectralBasis basis_;
  std::vector<std::vector<double>> weights_;
  std::vector<std::vector<double>> coeffs_;  // w_{i,k} sqrt(lambda_{i,k})
  double scale_;
};

/// Draws iid standard-normal weights from the counter-based stream.
PriorSample draw_prior(const SpectralBasis& basis, double amplitude, CounterRng& rng);
PriorSample draw_prior(const SpectralBasis& basis, double amplitude, std::uint64_t seed);

/// Posterior sample by pathwise conditioning:
///   f~(x) = f(x) + sum_j v_j k(x, x^j),   C v = y - f(X) - eps,  eps ~ N(0, noise I).
class PosteriorSample {
 public:
  PosteriorSample(PriorSample prior, SEKernelParams params, Matrix x, Vector canonical_weights, Vector noise_draw);

  const PriorSample& prior() const { return prior_; }
  const SEKernelParams& params() const { return params_; }
  const Matrix& data_x() const { return x_; }
  const Vector& canonical_weights() const { return v_; }
  const Vector& noise_draw() const { return eps_; }
  std::size_t dim() const { return prior_.dim(); }

  /// Data adjustment b(x) = sum_j v_j k(x, x^j).
  double adjustment(const Vector& x) const;
  double eval(const Vector& x) const;
  double eval_grad(const Vector& x, Vector& grad) const;
  Vector grad(const Vector& x) const;

 private:
  PriorSample prior_;
  SEKernelParams params_;
  Matrix x_;
  Vector v_;
  Vector eps_;
};

PosteriorSample condition(PriorSample prior, const GPPosterior& gp, CounterRng& rng);
PosteriorSample condition(PriorSample prior, const GPPosterior& gp, std::uint64_t seed);
/// Conditioning with a caller-supplied noise vector (tests use eps = 0).
PosteriorSample condition_with_noise(PriorSample prior, const GPPosterior& gp, const Vector& noise_draw);

}  // namespace gpts
