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

#include "gpts/pathwise_sampling.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gpts {

/// Chebyshev series sum_k coeffs[k] T_k(t) on [lo, hi], t = (2x - lo - hi) / (hi - lo).
struct ChebPiece {
  double lo = -1.0;
  double hi = 1.0;
  std::vector<double> coeffs;
  double tail_bound = 0.0;  // max |dropped coefficient| / max |coefficient|
  double max_abs = 0.0;     // max |f| over the sample points

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  double eval(double x) const;
  double deriv(double x) const;
};

/// Piecewise Chebyshev proxy of a smooth function. Normally a single piece;
/// the interval is bisected when the degree cap is hit.
class ChebProxy {
 public:
  ChebProxy() = default;
  explicit ChebProxy(std::vector<ChebPiece> pieces);

  double lo() const { return pieces_.front().lo; }
  double hi() const { return pieces_.back().hi; }
  const std::vector<ChebPiece>& pieces() const { return pieces_; }
  std::size_t degree() const;
  double tail_bound() const;
  double max_abs() const;
  double eval(double x) const;
  double deriv(double x) const;

 private:
  const ChebPiece& piece_for(double x) const;
  std::vector<ChebPiece> pieces_;
};

struct ProxyOptions {
  std::size_t min_degree = 16;
  std::size_t max_degree = 8192;
  double tail_tol = 1e-13;
  int max_depth = 16;
};

/// Chebyshev coefficients of the interpolant through values at the n+1
/// Chebyshev extreme points t_j = cos(pi j / n).
std::vector<double> chebyshev_coefficients(std::span<const double> values);
/// Clenshaw evaluation of sum_k c_k T_k(t).
double chebyshev_eval(std::span<const double> coeffs, double t);

/// Adaptive proxy: degree doubles from min_degree until the trailing
/// coefficients fall below tail_tol relative to the largest one, then the
/// series is chopped. Throws std::domain_error naming the abscissa of any
/// non-finite sample.
ChebProxy build_proxy(const std::function<double(double)>& func, double lo, double hi, const ProxyOptions& options = {});

struct RootOptions {
  std::size_t max_eigen_degree = 50;  // larger pieces are subdivided first
  double imag_tol = 1e-6;
  double dedup_rel_tol = 1e-9;
  double residual_rel_tol = 1e-9;
  int newton_steps = 5;
};

/// All real roots of the proxy on its interval, sorted ascending.
std::vector<double> all_roots(const ChebProxy& proxy, const RootOptions& options = {});

/// Roots of the Chebyshev series on [-1, 1] from the colleague-matrix
/// eigenvalues (unpolished, unfiltered by residual). Exposed for tests.
std::vector<double> colleague_real_eigenvalues(std::span<const double> coeffs, double imag_tol, bool& ok);

enum class BoundSide { kLower, kInterior, kUpper };

/// Critical point of one univariate factor f_i with cached derivatives.
struct UnivariateCriticalPoint {
  double x = 0.0;
  double value = 0.0;
  double deriv = 0.0;
  double second = 0.0;
  BoundSide side = BoundSide::kInterior;
};

/// Roots of f_i' on [-1, 1] plus both endpoints, sorted by x.
std::vector<UnivariateCriticalPoint> critical_points_1d(const PriorSample& sample, std::size_t dim,
                                                        const ProxyOptions& proxy_options = {},
                                                        const RootOptions& root_options = {});

}  // namespace gpts
