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
#include <functional>

namespace gpts {

/// Differentiable scalar field: returns f(x) and writes the gradient into `grad`
/// (already sized to x.size()).
using ObjectiveFn = std::function<double(const Vector& x, Vector& grad)>;

/// Stopping rules shared by every gradient-based inner optimizer.
struct LocalOptions {
  double projected_gradient_tol = 1e-8;
  double step_tol = 1e-12;
  int max_iterations = 200;
  int memory = 10;
};

struct LocalResult {
  Vector start;
  double start_value = 0.0;
  Vector x;
  double value = 0.0;
  int iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  bool failed = false;  // non-finite objective or gradient at the start point
};

/// Projected limited-memory quasi-Newton descent on a box.
///
/// Variables sitting on a bound with the gradient pushing outward are frozen
/// for the iteration; the two-loop L-BFGS direction is computed over the free
/// ones and the trial point is projected back onto the box. A backtracking
/// Armijo search along the projected path makes accepted steps monotone.
LocalResult local_minimize(const ObjectiveFn& objective, const Vector& start, const Box& box,
                           const LocalOptions& options = {});

/// Infinity norm of x - P(x - g).
double projected_gradient_norm(const Vector& x, const Vector& g, const Box& box);

}  // namespace gpts
