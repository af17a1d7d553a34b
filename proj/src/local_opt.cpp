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

#include "gpts/local_opt.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace gpts {

namespace {

struct CurvaturePair {
  Vector s;
  Vector y;
  double rho;
};

bool finite_eval(double f, const Vector& g) { return std::isfinite(f) && g.allFinite(); }

// Two-loop recursion restricted to the free variables.
Vector lbfgs_direction(const Vector& g, const std::deque<CurvaturePair>& memory, const Eigen::ArrayXd& free) {
  Vector q = (g.array() * free).matrix();
  if (memory.empty()) return -q;
  std::vector<double> alpha(memory.size());
  for (std::size_t j = memory.size(); j-- > 0;) {
    const auto& p = memory[j];
    alpha[j] = p.rho * (p.s.array() * free).matrix().dot(q);
    q.noalias() -= alpha[j] * (p.y.array() * free).matrix();
  }
  const auto& newest = memory.back();
  const double gamma = newest.s.dot(newest.y) / newest.y.squaredNorm();
  Vector r = gamma * q;
  for (std::size_t j = 0; j < memory.size(); ++j) {
    const auto& p = memory[j];
    const double beta = p.rho * (p.y.array() * free).matrix().dot(r);
    r.noalias() += (alpha[j] - beta) * (p.s.array() * free).matrix();
  }
  return -(r.array() * free).matrix();
}

}  // namespace

double projected_gradient_norm(const Vector& x, const Vector& g, const Box& box) {
  const Vector projected = (x - g).cwiseMax(box.lower).cwiseMin(box.upper);
  return (x - projected).lpNorm<Eigen::Infinity>();
}

LocalResult local_minimize(const ObjectiveFn& objective, const Vector& start, const Box& box,
                           const LocalOptions& options) {
  const Eigen::Index n = start.size();
  LocalResult result;
  result.start = start;

  Vector x = box.clamp(start);
  Vector g = Vector::Zero(n);
  double f = objective(x, g);
  result.evaluations = 1;
  result.start_value = f;
  result.x = x;
  result.value = f;
  if (!finite_eval(f, g)) {
    result.failed = true;
    return result;
  }

  const double width = (box.upper - box.lower).maxCoeff();
  std::deque<CurvaturePair> memory;
  Vector x_new(n);
  Vector g_new(n);
  Eigen::ArrayXd free(n);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (projected_gradient_norm(x, g, box) <= options.projected_gradient_tol) {
      result.converged = true;
      break;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const bool pinned = (x[i] <= box.lower[i] && g[i] > 0.0) || (x[i] >= box.upper[i] && g[i] < 0.0);
      free[i] = pinned ? 0.0 : 1.0;
    }
    Vector d = lbfgs_direction(g, memory, free);
    if (!(g.dot(d) < 0.0)) {
      memory.clear();
      d = -(g.array() * free).matrix();
    }
    const double d_inf = d.lpNorm<Eigen::Infinity>();
    if (d_inf == 0.0) {
      result.converged = true;
      break;
    }
    double t = memory.empty() ? std::min(1.0, width / d_inf) : 1.0;

    bool accepted = false;
    double f_new = f;
    for (int ls = 0; ls < 50; ++ls) {
      x_new = box.clamp(x + t * d);
      const Vector s = x_new - x;
      if (s.lpNorm<Eigen::Infinity>() == 0.0) break;
      f_new = objective(x_new, g_new);
      ++result.evaluations;
      if (finite_eval(f_new, g_new) && f_new <= f + 1e-4 * g.dot(s)) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (!memory.empty()) {
        memory.clear();
        continue;
      }
      break;
    }

    Vector s = x_new - x;
    Vector y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-10 * s.norm() * y.norm()) {
      memory.push_back({std::move(s), std::move(y), 1.0 / sy});
      if (static_cast<int>(memory.size()) > options.memory) memory.pop_front();
    }
    const double step = (x_new - x).lpNorm<Eigen::Infinity>();
    x = x_new;
    f = f_new;
    g = g_new;
    result.iterations = iter + 1;
    if (step <= options.step_tol) {
      result.converged = true;
      break;
    }
  }
  result.x = x;
  result.value = f;
  return result;
}

}  // namespace gpts
