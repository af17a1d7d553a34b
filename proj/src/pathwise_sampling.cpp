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

#include "gpts/pathwise_sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace gpts {

PriorSample::PriorSample(SpectralBasis basis, std::vector<std::vector<double>> weights, double scale)
    : basis_(std::move(basis)), weights_(std::move(weights)), scale_(scale) {
  if (weights_.size() != basis_.dim()) throw std::invalid_argument("PriorSample: one weight vector per dimension");
  if (!(scale_ > 0.0)) throw std::invalid_argument("PriorSample: scale must be positive");
  coeffs_.resize(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const auto& lam = basis_.dims[i].eigenvalues;
    if (weights_[i].size() != lam.size())
      throw std::invalid_argument("PriorSample: weight count must match truncation size");
    coeffs_[i].resize(lam.size());
    for (std::size_t k = 0; k < lam.size(); ++k) coeffs_[i][k] = weights_[i][k] * std::sqrt(lam[k]);
  }
}

UnivariateJet PriorSample::univariate_jet(std::size_t dim, double x, int max_order) const {
  return eigen_series(basis_.dims[dim], coeffs_[dim], x, max_order);
}

double PriorSample::eval(const Vector& x) const {
  double prod = scale_;
  for (std::size_t i = 0; i < dim(); ++i) prod *= univariate_jet(i, x[static_cast<Eigen::Index>(i)], 0).value;
  return prod;
}

double PriorSample::eval_grad(const Vector& x, Vector& grad) const {
  const std::size_t d = dim();
  grad.resize(static_cast<Eigen::Index>(d));
  std::vector<double> f(d);
  std::vector<double> df(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto jet = univariate_jet(i, x[static_cast<Eigen::Index>(i)], 1);
    f[i] = jet.value;
    df[i] = jet.deriv;
  }
  // Prefix/suffix products so exact zeros in some factor are handled.
  std::vector<double> suffix(d + 1, 1.0);
  for (std::size_t i = d; i-- > 0;) suffix[i] = suffix[i + 1] * f[i];
  double prefix = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    grad[static_cast<Eigen::Index>(i)] = scale_ * df[i] * prefix * suffix[i + 1];
    prefix *= f[i];
  }
  return scale_ * suffix[0];
}

Vector PriorSample::grad(const Vector& x) const {
  Vector g;
  eval_grad(x, g);
  return g;
}

PriorSample draw_prior(const SpectralBasis& basis, double amplitude, CounterRng& rng) {
  std::vector<std::vector<double>> weights(basis.dim());
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    weights[i].resize(basis.dims[i].size());
    for (double& w : weights[i]) w = rng.normal();
  }
  return PriorSample(basis, std::move(weights), std::sqrt(amplitude));
}

PriorSample draw_prior(const SpectralBasis& basis, double amplitude, std::uint64_t seed) {
  CounterRng rng(seed);
  return draw_prior(basis, amplitude, rng);
}

PosteriorSample::PosteriorSample(PriorSample prior, SEKernelParams params, Matrix x, Vector canonical_weights,
                                 Vector noise_draw)
    : prior_(std::move(prior)),
      params_(std::move(params)),
      x_(std::move(x)),
      v_(std::move(canonical_weights)),
      eps_(std::move(noise_draw)) {
  if (x_.rows() != v_.size()) throw std::invalid_argument("PosteriorSample: one canonical weight per data point");
}

double PosteriorSample::adjustment(const Vector& x) const {
  if (v_.size() == 0) return 0.0;
  return kernel_vector(params_, x, x_).dot(v_);
}

double PosteriorSample::eval(const Vector& x) const { return prior_.eval(x) + adjustment(x); }

double PosteriorSample::eval_grad(const Vector& x, Vector& grad) const {
  double value = prior_.eval_grad(x, grad);
  const auto d = x.size();
  for (Eigen::Index j = 0; j < x_.rows(); ++j) {
    double r2 = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      const double t = (x[i] - x_(j, i)) / params_.lengthscales[static_cast<std::size_t>(i)];
      r2 += t * t;
    }
    const double kv = v_[j] * params_.amplitude * std::exp(-0.5 * r2);
    value += kv;
    for (Eigen::Index i = 0; i < d; ++i) {
      const double l = params_.lengthscales[static_cast<std::size_t>(i)];
      grad[i] -= (x[i] - x_(j, i)) / (l * l) * kv;
    }
  }
  return value;
}

Vector PosteriorSample::grad(const Vector& x) const {
  Vector g;
  eval_grad(x, g);
  return g;
}

PosteriorSample condition_with_noise(PriorSample prior, const GPPosterior& gp, const Vector& noise_draw) {
  if (prior.dim() != gp.dim()) throw std::invalid_argument("condition: prior and posterior dimensions differ");
  if (static_cast<std::size_t>(noise_draw.size()) != gp.size())
    throw std::invalid_argument("condition: noise draw must have one entry per observation");
  const auto n = static_cast<Eigen::Index>(gp.size());
  Vector rhs(n);
  for (Eigen::Index j = 0; j < n; ++j) rhs[j] = gp.y()[j] - prior.eval(gp.x().row(j).transpose()) - noise_draw[j];
  Vector v = gp.solve(rhs);
  if (!v.allFinite()) throw NumericalError("condition: non-finite canonical weights");
  return PosteriorSample(std::move(prior), gp.params(), gp.x(), std::move(v), noise_draw);
}

PosteriorSample condition(PriorSample prior, const GPPosterior& gp, CounterRng& rng) {
  const double sd = std::sqrt(gp.params().noise_variance);
  Vector eps(static_cast<Eigen::Index>(gp.size()));
  for (Eigen::Index j = 0; j < eps.size(); ++j) eps[j] = sd * rng.normal();
  return condition_with_noise(std::move(prior), gp, eps);
}

PosteriorSample condition(PriorSample prior, const GPPosterior& gp, std::uint64_t seed) {
  CounterRng rng(seed);
  return condition(std::move(prior), gp, rng);
}

}  // namespace gpts
