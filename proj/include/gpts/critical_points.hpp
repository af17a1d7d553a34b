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
#include "gpts/rootfinding.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gpts {

enum class CriticalKind { kMinimum, kMaximum, kSaddle, kDegenerate };

inline constexpr std::size_t kDefaultMaxMinima = 1000;
inline constexpr double kDegenerateRelTol = 1e-10;
inline constexpr double kZeroValueTol = 1e-12;

/// Classifies the point formed by one univariate critical point per
/// dimension of f(x) = scale * prod_i f_i(x_i).
///
/// Interior coordinates use the Hessian diagonal f_i'' prod_{j != i} f_j
/// (off-diagonal entries vanish since f_i' = 0). A coordinate on the lower
/// bound needs df/dx_i >= 0 for a minimum and one on the upper bound needs
/// df/dx_i <= 0; a boundary coordinate whose derivative is zero falls back to
/// the second-order test. Points with |f| <= 1e-12, or with any Hessian
/// diagonal entry within 1e-10 |f| of zero, are degenerate.
CriticalKind classify_combination(double scale, std::span<const UnivariateCriticalPoint> coords);

struct CriticalPointSet {
  std::vector<std::vector<UnivariateCriticalPoint>> per_dim;
  std::vector<Vector> minima;          // ascending by value
  std::vector<double> values;          // f at each minimum, all < 0
  std::size_t max_minima = kDefaultMaxMinima;
  std::size_t combinations_visited = 0;
};

/// Best-first selection of the negative local minima with the largest |f|.
///
/// A combination is a local minimum with f < 0 exactly when every coordinate
/// has "type" -1 (interior: sign(f_i'' f_i); lower bound: sign(f_i' f_i);
/// upper bound: -sign(f_i' f_i)) and the number of negative f_i is odd. The
/// eligible candidates of each dimension are sorted by |f_i| and index tuples
/// are popped from a max-heap keyed by prod_i |f_i|, so no full enumeration of
/// the prod_i r_i combinations is needed.
CriticalPointSet select_minima(std::vector<std::vector<UnivariateCriticalPoint>> per_dim, double scale,
                               std::size_t max_minima = kDefaultMaxMinima);
CriticalPointSet select_minima(const PriorSample& sample, std::size_t max_minima = kDefaultMaxMinima);

}  // namespace gpts
