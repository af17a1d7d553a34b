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
#include <string>
#include <string_view>
#include <vector>

namespace gpts {

/// Benchmark objective with its known optimum.
struct Objective {
  std::string id;
  std::size_t dim = 0;
  Box bounds;
  double f_star = 0.0;
  Vector x_star;
  std::function<double(const Vector&)> eval;

  double operator()(const Vector& x) const { return eval(x); }
};

/// 418.9829 d - sum_i x_i sin(sqrt|x_i|) on [-500, 500]^d.
double schwefel(const Vector& x);
/// Levy function on [-10, 10]^d, minimum 0 at x = 1.
double levy(const Vector& x);

/// Throws std::invalid_argument for unknown ids or d < 1.
Objective make_objective(std::string_view id, std::size_t dim);
std::vector<std::string> objective_ids();

}  // namespace gpts
