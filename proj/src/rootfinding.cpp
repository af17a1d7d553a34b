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

#include "gpts/rootfinding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace gpts {

namespace {

// Off-centre split point used when subdividing for eigenvalue solves, so a
// root sitting exactly at the midpoint is not split between two pieces.
constexpr double kSplitPoint = -0.004849834917525;

// Trailing coefficients below this fraction of the largest are dropped before
// the eigenvalue solve; Newton on the full proxy restores the accuracy.
constexpr double kEigenChop = 1e-11;

double to_local(double x, double lo, double hi) { return (2.0 * x - lo - hi) / (hi - lo); }
double to_global(double t, double lo, double hi) { return 0.5 * (lo + hi) + 0.5 * (hi - lo) * t; }

std::vector<double> derivative_coefficients(std::span<const double> c) {
  const std::size_t n = c.size();
  if (n <= 1) return {0.0};
  std::vector<double> d(n - 1, 0.0);
  // c'_{k-1} = c'_{k+1} + 2k c_k, with c'_0 halved at the end.
  for (std::size_t k = n - 1; k >= 1; --k) {
    const double next = (k + 1 < n - 1) ? d[k + 1] : 0.0;
    d[k - 1] = next + 2.0 * static_cast<double>(k) * c[k];
  }
  d[0] *= 0.5;
  return d;
}

std::size_t chop_index(const std::vector<double>& c, double threshold) {
  std::size_t last = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (std::abs(c[k]) > threshold) last = k;
  }
  return last;
}

// One attempt at a single-piece proxy; returns false if the degree cap is hit.
bool try_piece(const std::function<double(double)>& func, double lo, double hi, const ProxyOptions& opt,
               ChebPiece& out) {
  for (std::size_t n = std::max<std::size_t>(opt.min_degree, 1); n <= opt.max_degree; n *= 2) {
    std::vector<double> values(n + 1);
    double max_abs = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      const double t = std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
      const double x = to_global(t, lo, hi);
      const double v = func(x);
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "build_proxy: non-finite function value at x = " << x;
        throw std::domain_error(os.str());
      }
      values[j] = v;
      max_abs = std::max(max_abs, std::abs(v));
    }
    std::vector<double> c = chebyshev_coefficients(values);
    double scale = 0.0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) {
      out = ChebPiece{lo, hi, {0.0}, 0.0, 0.0};
      return true;
    }
    // Coefficients at rounding level carry no information.
    const double noise = 8.0 * std::numeric_limits<double>::epsilon() * scale;
    for (double& v : c) {
      if (std::abs(v) <= noise) v = 0.0;
    }
    const std::size_t tail_len = std::max<std::size_t>(2, (n + 1) / 8);
    double tail = 0.0;
    for (std::size_t k = n + 1 - tail_len; k <= n; ++k) tail = std::max(tail, std::abs(c[k]));
    if (tail > opt.tail_tol * scale) continue;

    const std::size_t deg = chop_index(c, opt.tail_tol * scale);
    double dropped = 0.0;
    for (std::size_t k = deg + 1; k < c.size(); ++k) dropped = std::max(dropped, std::abs(c[k]));
    c.resize(deg + 1);
    out = ChebPiece{lo, hi, std::move(c), dropped / scale, max_abs};
    return true;
  }
  return false;
}

void build_pieces(const std::function<double(double)>& func, double lo, double hi, const ProxyOptions& opt,
                  int depth, std::vector<ChebPiece>& pieces) {
  ChebPiece piece;
  if (try_piece(func, lo, hi, opt, piece)) {
    pieces.push_back(std::move(piece));
    return;
  }
  if (depth >= opt.max_depth) {
    std::ostringstream os;
    os << "build_proxy: could not resolve function on [" << lo << ", " << hi << "]";
    throw std::domain_error(os.str());
  }
  const double mid = 0.5 * (lo + hi);
  build_pieces(func, lo, mid, opt, depth + 1, pieces);
  build_pieces(func, mid, hi, opt, depth + 1, pieces);
}

// Parlett-Reinsch diagonal balancing in place (radix 2, exact in floating point).
void balance(Matrix& a) {
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = a.col(i).cwiseAbs().sum() - std::abs(a(i, i));
      double r = a.row(i).cwiseAbs().sum() - std::abs(a(i, i));
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      while (c < r / 2.0) {
        f *= 2.0;
        c *= 4.0;
      }
      while (c > r * 2.0) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

// Resample a piece's series onto the sub-interval [a, b] of its local
// coordinate, keeping the coefficient scale of the parent for chopping.
std::vector<double> restrict_series(std::span<const double> c, double a, double b, double chop_threshold) {
  const std::size_t n = std::max<std::size_t>(c.size() - 1, 1);
  std::vector<double> values(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const double t = std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    values[j] = chebyshev_eval(c, 0.5 * (a + b) + 0.5 * (b - a) * t);
  }
  std::vector<double> sub = chebyshev_coefficients(values);
  sub.resize(chop_index(sub, chop_threshold) + 1);
  return sub;
}

// Sign-change bracketing fallback.
void bracket_roots(std::span<const double> c, double a, double b, std::vector<double>& roots) {
  const std::size_t samples = 8 * c.size() + 16;
  double prev_t = a;
  double prev_v = chebyshev_eval(c, a);
  if (prev_v == 0.0) roots.push_back(a);
  for (std::size_t j = 1; j <= samples; ++j) {
    const double t = a + (b - a) * static_cast<double>(j) / static_cast<double>(samples);
    const double v = chebyshev_eval(c, t);
    if (v == 0.0) {
      roots.push_back(t);
    } else if (prev_v != 0.0 && std::signbit(v) != std::signbit(prev_v)) {
      double l = prev_t;
      double r = t;
      double fl = prev_v;
      while (r - l > 1e-12) {
        const double m = 0.5 * (l + r);
        const double fm = chebyshev_eval(c, m);
        if (fm == 0.0) {
          l = r = m;
          break;
        }
        if (std::signbit(fm) == std::signbit(fl)) {
          l = m;
          fl = fm;
        } else {
          r = m;
        }
      }
      roots.push_back(0.5 * (l + r));
    }
    prev_t = t;
    prev_v = v;
  }
}

// Roots in local coordinates of the sub-interval [a, b] (a, b inside [-1, 1])
// of a series `c` defined on [-1, 1].
void local_roots(std::span<const double> c, double a, double b, double chop_threshold, const RootOptions& opt,
                 std::vector<double>& out) {
  std::vector<double> sub = (a == -1.0 && b == 1.0) ? std::vector<double>(c.begin(), c.end())
                                                    : restrict_series(c, a, b, chop_threshold);
  sub.resize(chop_index(sub, chop_threshold) + 1);
  const std::size_t deg = sub.size() - 1;
  if (deg == 0) return;
  if (deg > opt.max_eigen_degree) {
    const double split = 0.5 * (a + b) + 0.5 * (b - a) * kSplitPoint;
    local_roots(c, a, split, chop_threshold, opt, out);
    local_roots(c, split, b, chop_threshold, opt, out);
    return;
  }
  bool ok = true;
  const std::vector<double> eig = colleague_real_eigenvalues(sub, opt.imag_tol, ok);
  if (!ok) {
    std::vector<double> bracketed;
    bracket_roots(sub, -1.0, 1.0, bracketed);
    for (double t : bracketed) out.push_back(0.5 * (a + b) + 0.5 * (b - a) * t);
    return;
  }
  const double edge = 1e-8;
  for (double t : eig) {
    if (t < -1.0 - edge || t > 1.0 + edge) continue;
    out.push_back(0.5 * (a + b) + 0.5 * (b - a) * std::clamp(t, -1.0, 1.0));
  }
}

}  // namespace

std::vector<double> chebyshev_coefficients(std::span<const double> values) {
  const std::size_t n = values.size() - 1;
  if (n == 0) return {values[0]};
  // cos(pi m / n) for m in [0, 2n) so cos(pi j k / n) is a table lookup.
  std::vector<double> table(2 * n);
  for (std::size_t m = 0; m < 2 * n; ++m) table[m] = std::cos(std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
  std::vector<double> c(n + 1, 0.0);
  for (std::size_t k = 0; k <= n; ++k) {
    double sum = 0.5 * (values[0] + ((k % 2 == 0) ? values[n] : -values[n]));
    for (std::size_t j = 1; j < n; ++j) sum += values[j] * table[(j * k) % (2 * n)];
    c[k] = 2.0 * sum / static_cast<double>(n);
  }
  c[0] *= 0.5;
  c[n] *= 0.5;
  return c;
}

double chebyshev_eval(std::span<const double> coeffs, double t) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) {
    const double b0 = coeffs[k] + 2.0 * t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return (coeffs.empty() ? 0.0 : coeffs[0]) + t * b1 - b2;
}

double ChebPiece::eval(double x) const { return chebyshev_eval(coeffs, to_local(x, lo, hi)); }

double ChebPiece::deriv(double x) const {
  const auto d = derivative_coefficients(coeffs);
  return chebyshev_eval(d, to_local(x, lo, hi)) * 2.0 / (hi - lo);
}

ChebProxy::ChebProxy(std::vector<ChebPiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw std::invalid_argument("ChebProxy: no pieces");
}

std::size_t ChebProxy::degree() const {
  std::size_t d = 0;
  for (const auto& p : pieces_) d = std::max(d, p.degree());
  return d;
}

double ChebProxy::tail_bound() const {
  double t = 0.0;
  for (const auto& p : pieces_) t = std::max(t, p.tail_bound);
  return t;
}

double ChebProxy::max_abs() const {
  double m = 0.0;
  for (const auto& p : pieces_) m = std::max(m, p.max_abs);
  return m;
}

const ChebPiece& ChebProxy::piece_for(double x) const {
  for (const auto& p : pieces_) {
    if (x <= p.hi) return p;
  }
  return pieces_.back();
}

double ChebProxy::eval(double x) const { return piece_for(x).eval(x); }
double ChebProxy::deriv(double x) const { return piece_for(x).deriv(x); }

ChebProxy build_proxy(const std::function<double(double)>& func, double lo, double hi, const ProxyOptions& options) {
  if (!(hi > lo)) throw std::invalid_argument("build_proxy: empty interval");
  std::vector<ChebPiece> pieces;
  build_pieces(func, lo, hi, options, 0, pieces);
  return ChebProxy(std::move(pieces));
}

std::vector<double> colleague_real_eigenvalues(std::span<const double> coeffs, double imag_tol, bool& ok) {
  ok = true;
  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return {};
  const double lead = coeffs[n];
  if (n == 1) return {-coeffs[0] / lead};
  const auto m = static_cast<Eigen::Index>(n);
  // x T_0 = T_1, x T_k = (T_{k-1} + T_{k+1}) / 2, and T_n is eliminated
  // through the series: T_n = -(1/c_n) sum_{j<n} c_j T_j.
  Matrix a = Matrix::Zero(m, m);
  a(0, 1) = 1.0;
  for (Eigen::Index k = 1; k < m - 1; ++k) {
    a(k, k - 1) = 0.5;
    a(k, k + 1) = 0.5;
  }
  a(m - 1, m - 2) += 0.5;
  for (Eigen::Index j = 0; j < m; ++j) a(m - 1, j) -= coeffs[static_cast<std::size_t>(j)] / (2.0 * lead);
  a.transposeInPlace();
  balance(a);
  Eigen::EigenSolver<Matrix> solver(a, false);
  if (solver.info() != Eigen::Success) {
    ok = false;
    return {};
  }
  std::vector<double> out;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto z = solver.eigenvalues()[i];
    if (std::abs(z.imag()) <= imag_tol) out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> all_roots(const ChebProxy& proxy, const RootOptions& options) {
  std::vector<double> candidates;
  for (const auto& piece : proxy.pieces()) {
    double scale = 0.0;
    for (double v : piece.coeffs) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) continue;
    std::vector<double> local;
    local_roots(piece.coeffs, -1.0, 1.0, kEigenChop * scale, options, local);
    for (double t : local) candidates.push_back(to_global(t, piece.lo, piece.hi));
  }

  const double lo = proxy.lo();
  const double hi = proxy.hi();
  const double residual_tol = options.residual_rel_tol * (1.0 + proxy.max_abs());
  std::vector<double> roots;
  for (double r : candidates) {
    double fr = proxy.eval(r);
    for (int step = 0; step < options.newton_steps && fr != 0.0; ++step) {
      const double df = proxy.deriv(r);
      if (df == 0.0 || !std::isfinite(df)) break;
      const double next = std::clamp(r - fr / df, lo, hi);
      const double fnext = proxy.eval(next);
      if (!(std::abs(fnext) < std::abs(fr))) break;
      r = next;
      fr = fnext;
    }
    if (std::abs(fr) <= residual_tol) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  const double dedup = options.dedup_rel_tol * (hi - lo);
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || r - unique.back() > dedup) unique.push_back(r);
  }
  return unique;
}

std::vector<UnivariateCriticalPoint> critical_points_1d(const PriorSample& sample, std::size_t dim,
                                                        const ProxyOptions& proxy_options,
                                                        const RootOptions& root_options) {
  if (dim >= sample.dim()) throw std::out_of_range("critical_points_1d: dimension index out of range");
  constexpr double lo = -1.0;
  constexpr double hi = 1.0;
  const auto proxy =
      build_proxy([&](double x) { return sample.univariate_deriv(dim, x); }, lo, hi, proxy_options);
  const auto roots = all_roots(proxy, root_options);

  auto make = [&](double x, BoundSide side) {
    const auto jet = sample.univariate_jet(dim, x, 2);
    return UnivariateCriticalPoint{x, jet.value, jet.deriv, jet.second, side};
  };
  const double edge = root_options.dedup_rel_tol * (hi - lo);
  std::vector<UnivariateCriticalPoint> points;
  points.reserve(roots.size() + 2);
  points.push_back(make(lo, BoundSide::kLower));
  for (double r : roots) {
    if (r - lo <= edge || hi - r <= edge) continue;
    points.push_back(make(r, BoundSide::kInterior));
  }
  points.push_back(make(hi, BoundSide::kUpper));
  return points;
}

}  // namespace gpts
