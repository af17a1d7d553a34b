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

#include "gpts/gp_model.hpp"

#include "gpts/design.hpp"
#include "gpts/local_opt.hpp"
#include "gpts/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gpts {

Dataset Dataset::from_raw(const Matrix& x_raw, const Vector& y_raw, const Box& raw_bounds) {
  if (x_raw.rows() != y_raw.size()) throw std::invalid_argument("Dataset: X and y row counts differ");
  if (x_raw.rows() < 1) throw std::invalid_argument("Dataset: need at least one observation");
  if (static_cast<std::size_t>(x_raw.cols()) != raw_bounds.dim())
    throw std::invalid_argument("Dataset: bounds dimension mismatch");
  if (((raw_bounds.upper - raw_bounds.lower).array() <= 0.0).any())
    throw std::invalid_argument("Dataset: empty bound interval");
  Dataset d;
  d.raw_bounds_ = raw_bounds;
  d.x_.resize(x_raw.rows(), x_raw.cols());
  for (Eigen::Index i = 0; i < x_raw.rows(); ++i) d.x_.row(i) = d.normalize(x_raw.row(i).transpose()).transpose();
  d.y_mean_ = y_raw.mean();
  const double var = (y_raw.array() - d.y_mean_).square().sum() / static_cast<double>(y_raw.size());
  d.y_std_ = var > 0.0 ? std::sqrt(var) : 1.0;
  d.y_ = (y_raw.array() - d.y_mean_) / d.y_std_;
  return d;
}

Dataset Dataset::from_normalized(const Matrix& x, const Vector& y) {
  if (x.rows() != y.size()) throw std::invalid_argument("Dataset: X and y row counts differ");
  if (x.rows() < 1) throw std::invalid_argument("Dataset: need at least one observation");
  Dataset d;
  d.x_ = x;
  d.y_ = y;
  d.raw_bounds_ = Box::unit(static_cast<std::size_t>(x.cols()));
  return d;
}

Vector Dataset::normalize(const Vector& x_raw) const {
  const Vector width = raw_bounds_.upper - raw_bounds_.lower;
  Vector x = (2.0 * (x_raw - raw_bounds_.lower).array() / width.array() - 1.0).matrix();
  return x.cwiseMax(-1.0).cwiseMin(1.0);
}

Vector Dataset::unnormalize(const Vector& x) const {
  const Vector width = raw_bounds_.upper - raw_bounds_.lower;
  const Vector raw = raw_bounds_.lower + ((x.array() + 1.0) * 0.5 * width.array()).matrix();
  return raw.cwiseMax(raw_bounds_.lower).cwiseMin(raw_bounds_.upper);
}

CholeskyResult robust_cholesky(const Matrix& a) {
  const auto n = a.rows();
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() == Eigen::Success) return {llt.matrixL(), 0.0};
  for (double jitter = 1e-10; jitter <= 1e-4 * (1.0 + 1e-9); jitter *= 10.0) {
    llt.compute(a + jitter * Matrix::Identity(n, n));
    if (llt.info() == Eigen::Success) {
      std::ostringstream os;
      os << "Cholesky needed jitter " << jitter;
      warn(os.str());
      return {llt.matrixL(), jitter};
    }
  }
  std::ostringstream os;
  os << "Cholesky factorization failed for a " << n << "x" << n
     << " matrix even with jitter 1e-4 (diagonal range [" << a.diagonal().minCoeff() << ", "
     << a.diagonal().maxCoeff() << "])";
  throw NumericalError(os.str());
}

Matrix kernel_matrix(const SEKernelParams& params, const Matrix& x) {
  const auto n = x.rows();
  Matrix scaled = x;
  for (Eigen::Index p = 0; p < x.cols(); ++p) scaled.col(p) /= params.lengthscales[static_cast<std::size_t>(p)];
  Matrix k(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    k(j, j) = params.amplitude;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double r2 = (scaled.row(i) - scaled.row(j)).squaredNorm();
      k(i, j) = params.amplitude * std::exp(-0.5 * r2);
      k(j, i) = k(i, j);
    }
  }
  return k;
}

Vector kernel_vector(const SEKernelParams& params, const Vector& x, const Matrix& data) {
  Vector k(data.rows());
  const auto d = x.size();
  for (Eigen::Index j = 0; j < data.rows(); ++j) {
    double r2 = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      const double t = (x[i] - data(j, i)) / params.lengthscales[static_cast<std::size_t>(i)];
      r2 += t * t;
    }
    k[j] = params.amplitude * std::exp(-0.5 * r2);
  }
  return k;
}

GPPosterior::GPPosterior(SEKernelParams params, Matrix x, Vector y, CholeskyResult chol)
    : params_(std::move(params)), x_(std::move(x)), y_(std::move(y)), chol_(std::move(chol)) {
  alpha_ = solve(y_);
}

Vector GPPosterior::solve(const Vector& rhs) const {
  const auto l = chol_.lower.triangularView<Eigen::Lower>();
  Vector z = l.solve(rhs);
  return l.transpose().solve(z);
}

double GPPosterior::mean(const Vector& x) const { return kernel_vector(params_, x, x_).dot(alpha_); }

double GPPosterior::variance(const Vector& x) const {
  const Vector k = kernel_vector(params_, x, x_);
  const Vector z = chol_.lower.triangularView<Eigen::Lower>().solve(k);
  return std::max(0.0, params_.amplitude - z.squaredNorm());
}

void GPPosterior::predict_with_grad(const Vector& x, double& mean, double& var, Vector& mean_grad,
                                    Vector& var_grad) const {
  const Vector k = kernel_vector(params_, x, x_);
  const Vector w = solve(k);
  mean = k.dot(alpha_);
  const double raw_var = params_.amplitude - k.dot(w);
  var = std::max(0.0, raw_var);
  const auto d = x.size();
  mean_grad = Vector::Zero(d);
  var_grad = Vector::Zero(d);
  // dk_j/dx_i = -(x_i - X_ji)/l_i^2 k_j
  for (Eigen::Index j = 0; j < x_.rows(); ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double l = params_.lengthscales[static_cast<std::size_t>(i)];
      const double dk = -(x[i] - x_(j, i)) / (l * l) * k[j];
      mean_grad[i] += dk * alpha_[j];
      var_grad[i] -= 2.0 * dk * w[j];
    }
  }
  if (raw_var <= 0.0) var_grad.setZero();
}

GPPosterior fit_posterior(const Dataset& data, const SEKernelParams& params) {
  params.validate();
  if (params.dim() != data.dim()) throw std::invalid_argument("fit_posterior: dimension mismatch");
  Matrix c = kernel_matrix(params, data.x());
  c.diagonal().array() += params.noise_variance;
  return GPPosterior(params, data.x(), data.y(), robust_cholesky(c));
}

double log_marginal_likelihood(const Dataset& data, const SEKernelParams& params, Vector* grad) {
  const auto n = static_cast<Eigen::Index>(data.size());
  const Matrix k = kernel_matrix(params, data.x());
  Matrix c = k;
  c.diagonal().array() += params.noise_variance;
  Eigen::LLT<Matrix> llt(c);
  if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
  const Vector alpha = llt.solve(data.y());
  const Matrix l = llt.matrixL();
  const double log_det = 2.0 * l.diagonal().array().log().sum();
  const double lml = -0.5 * data.y().dot(alpha) - 0.5 * log_det - 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  if (grad != nullptr) {
    const auto d = static_cast<Eigen::Index>(params.dim());
    grad->resize(d + 1);
    // dL/dtheta = 1/2 tr((alpha alpha^T - C^{-1}) dK/dtheta)
    Matrix linv = Matrix::Identity(n, n);
    llt.matrixL().solveInPlace(linv);
    Matrix w = alpha * alpha.transpose();
    w.noalias() -= linv.transpose() * linv;
    const Matrix wk = w.cwiseProduct(k);
    for (Eigen::Index p = 0; p < d; ++p) {
      const double lp = params.lengthscales[static_cast<std::size_t>(p)];
      const auto xp = data.x().col(p);
      double acc = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j + 1; i < n; ++i) {
          const double diff = xp[i] - xp[j];
          acc += wk(i, j) * diff * diff;
        }
      }
      (*grad)[p] = acc / (lp * lp);  // off-diagonal terms appear twice, times 1/2
    }
    (*grad)[d] = 0.5 * wk.sum();
  }
  return lml;
}

SEKernelParams fit_hyperparameters(const Dataset& data, double noise_variance, const HyperFitOptions& options) {
  if (data.size() < 2) throw std::invalid_argument("fit_hyperparameters: need at least two observations");
  const std::size_t d = data.dim();
  const auto dd = static_cast<Eigen::Index>(d);
  Box box{Vector(dd + 1), Vector(dd + 1)};
  box.lower.head(dd).setConstant(std::log(options.min_lengthscale));
  box.upper.head(dd).setConstant(std::log(options.max_lengthscale));
  box.lower[dd] = std::log(options.min_amplitude);
  box.upper[dd] = std::log(options.max_amplitude);

  auto unpack = [&](const Vector& theta) {
    SEKernelParams p;
    p.lengthscales.resize(d);
    for (std::size_t i = 0; i < d; ++i) p.lengthscales[i] = std::exp(theta[static_cast<Eigen::Index>(i)]);
    p.amplitude = std::exp(theta[dd]);
    p.noise_variance = noise_variance;
    return p;
  };
  const ObjectiveFn negative_lml = [&](const Vector& theta, Vector& grad) {
    Vector g;
    const double v = log_marginal_likelihood(data, unpack(theta), &g);
    if (!std::isfinite(v)) {
      grad.setConstant(std::numeric_limits<double>::quiet_NaN());
      return std::numeric_limits<double>::infinity();
    }
    grad = -g;
    return -v;
  };

  const auto starts = low_discrepancy_points(options.starts, box, stream_key(options.seed, 0, StreamRole::kHyperStarts));
  LocalOptions local;
  local.projected_gradient_tol = 1e-6;
  local.max_iterations = 100;
  bool found = false;
  Vector best_theta;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    const LocalResult r = local_minimize(negative_lml, s, box, local);
    if (r.failed || !std::isfinite(r.value)) continue;
    if (r.value < best) {
      best = r.value;
      best_theta = r.x;
      found = true;
    }
  }
  if (!found) {
    warn("hyperparameter fit failed from every start; falling back to l = 0.5, amplitude = 1");
    SEKernelParams p;
    p.lengthscales.assign(d, 0.5);
    p.amplitude = 1.0;
    p.noise_variance = noise_variance;
    return p;
  }
  return unpack(best_theta);
}

}  // namespace gpts
