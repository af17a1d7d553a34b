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
#include <cstdint>
#include <vector>

namespace gpts {

/// Halton sequence with random digit permutations (one permutation per
/// dimension and digit position), i.e. a scrambled low-discrepancy point set
/// in [0, 1)^d. Deterministic given the seed; supports d <= 64.
std::vector<Vector> scrambled_halton(std::size_t n, std::size_t dim, std::uint64_t seed);

/// `n` scrambled Halton points mapped affinely into `box`.
std::vector<Vector> low_discrepancy_points(std::size_t n, const Box& box, std::uint64_t seed);

}  // namespace gpts
