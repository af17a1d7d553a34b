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

#include "gpts/critical_points.hpp"
#include "gpts/local_opt.hpp"
#include "gpts/pathwise_sampling.hpp"

#include <cstddef>
#include <vector>

namespace gpts {

/// Exploration starts come from prior-sample minima, exploitation starts are
/// the observed inputs.
struct StartSet {
  std::vector<Vector> exploration;
  std::vector<Vector> exploitation;

  std::size_t size() const { return exploration.size() + exploitation.size(); }
  std::vector<Vector> all() const;
};

StartSet make_start_set(const CriticalPointSet& minima, const Matrix& data_x);

struct StartTrace {
  Vector start;
  Vector end;
  double start_value = 0.0;
  double value = 0.0;
  int iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  bool failed = false;
};

struct InnerResult {
  Vector argmin;
  double value = 0.0;
  std::size_t starts_used = 0;
  std::size_t evaluations = 0;
  std::vector<StartTrace> traces;
  double wall_time = 0.0;  // seconds
};

/// Local searches from every start (in parallel) reduced by minimum value,
/// ties broken lexicographically on the end point. Throws NumericalError when
/// every start fails.
InnerResult multistart_minimize(const ObjectiveFn& objective, const std::vector<Vector>& starts, const Box& box,
                                const LocalOptions& options = {});

ObjectiveFn as_objective(const PosteriorSample& sample);

/// Minimizes a posterior sample from exploration and exploitation starts.
InnerResult optimize_ts(const PosteriorSample& sample, const StartSet& starts, const LocalOptions& options = {});

double distance_to_truth(const Vector& x, const Vector& x_true);

}  // namespace gpts
