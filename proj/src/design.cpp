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

#include "gpts/design.hpp"

#include "gpts/random.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gpts {

namespace {

constexpr std::array<int, 64> kPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,  59,  61,  67,  71,  73,  79,
    83,  89,  97,  101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311};

}  // namespace

std::vector<Vector> scrambled_halton(std::size_t n, std::size_t dim, std::uint64_t seed) {
  if (dim == 0 || dim > kPrimes.size()) throw std::invalid_argument("scrambled_halton: unsupported dimension");
  std::vector<Vector> points(n, Vector::Zero(static_cast<Eigen::Index>(dim)));
  CounterRng rng(seed, 0, StreamRole::kDesign);
  for (std::size_t j = 0; j < dim; ++j) {
    const int base = kPrimes[j];
    // Enough digits to exhaust double precision in this base.
    const int digits = static_cast<int>(std::ceil(53.0 / std::log2(static_cast<double>(base))));
    std::vector<std::vector<int>> perms(static_cast<std::size_t>(digits), std::vector<int>(base));
    for (auto& p : perms) {
      std::iota(p.begin(), p.end(), 0);
      for (int i = base - 1; i > 0; --i) {
        const auto k = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(p[i], p[k]);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t index = i;
      double scale = 1.0 / base;
      double value = 0.0;
      for (int pos = 0; pos < digits; ++pos) {
        const int digit = static_cast<int>(index % static_cast<std::uint64_t>(base));
        index /= static_cast<std::uint64_t>(base);
        value += perms[static_cast<std::size_t>(pos)][static_cast<std::size_t>(digit)] * scale;
        scale /= base;
      }
      points[i][static_cast<Eigen::Index>(j)] = std::min(value, std::nextafter(1.0, 0.0));
    }
  }
  return points;
}

std::vector<Vector> low_discrepancy_points(std::size_t n, const Box& box, std::uint64_t seed) {
  auto points = scrambled_halton(n, box.dim(), seed);
  for (auto& p : points) p = box.lower + (box.upper - box.lower).cwiseProduct(p);
  return points;
}

}  // namespace gpts
