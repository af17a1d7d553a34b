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

#include "gpts/critical_points.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace gpts {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// +1 / -1 as defined in select_minima's contract, 0 when degenerate.
int coordinate_type(const UnivariateCriticalPoint& p) {
  if (p.value == 0.0) return 0;
  const double first = p.deriv / p.value;
  if (p.side != BoundSide::kInterior && std::abs(first) > kDegenerateRelTol) {
    const int s = sign_of(first);
    return p.side == BoundSide::kLower ? s : -s;
  }
  const double second = p.second / p.value;
  if (std::abs(second) <= kDegenerateRelTol) return 0;
  return sign_of(second);
}

struct HeapEntry {
  double log_key;
  std::vector<std::size_t> index;
  std::size_t pivot;

  bool operator<(const HeapEntry& other) const {
    if (log_key != other.log_key) return log_key < other.log_key;
    return index > other.index;  // deterministic tie-break
  }
};

}  // namespace

CriticalKind classify_combination(double scale, std::span<const UnivariateCriticalPoint> coords) {
  const std::size_t d = coords.size();
  double f = scale;
  for (const auto& c : coords) f *= c.value;
  if (std::abs(f) <= kZeroValueTol) return CriticalKind::kDegenerate;
  const double tol = kDegenerateRelTol * std::abs(f);

  bool min_ok = true;
  bool max_ok = true;
  for (std::size_t i = 0; i < d; ++i) {
    double rest = scale;
    for (std::size_t j = 0; j < d; ++j) {
      if (j != i) rest *= coords[j].value;
    }
    const auto& c = coords[i];
    if (c.side != BoundSide::kInterior) {
      const double g = c.deriv * rest;
      if (std::abs(g) > tol) {
        const bool increasing_inward = (c.side == BoundSide::kLower) ? g > 0.0 : g < 0.0;
        min_ok = min_ok && increasing_inward;
        max_ok = max_ok && !increasing_inward;
        continue;
      }
    }
    const double h = c.second * rest;
    if (std::abs(h) <= tol) return CriticalKind::kDegenerate;
    min_ok = min_ok && h > 0.0;
    max_ok = max_ok && h < 0.0;
  }
  if (min_ok) return CriticalKind::kMinimum;
  if (max_ok) return CriticalKind::kMaximum;
  return CriticalKind::kSaddle;
}

CriticalPointSet select_minima(std::vector<std::vector<UnivariateCriticalPoint>> per_dim, double scale,
                               std::size_t max_minima) {
  CriticalPointSet result;
  result.max_minima = max_minima;
  const std::size_t d = per_dim.size();

  // Candidates whose coordinate type is -1: the only ones that can appear in
  // a minimum with negative value.
  std::vector<std::vector<const UnivariateCriticalPoint*>> eligible(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (const auto& p : per_dim[i]) {
      if (coordinate_type(p) == -1) eligible[i].push_back(&p);
    }
    std::stable_sort(eligible[i].begin(), eligible[i].end(), [](const auto* a, const auto* b) {
      return std::abs(a->value) > std::abs(b->value);
    });
  }

  const bool feasible =
      d > 0 && max_minima > 0 && std::all_of(eligible.begin(), eligible.end(), [](const auto& e) { return !e.empty(); });
  if (feasible) {
    auto log_key = [&](const std::vector<std::size_t>& idx) {
      double k = std::log(scale);
      for (std::size_t i = 0; i < d; ++i) k += std::log(std::abs(eligible[i][idx[i]]->value));
      return k;
    };
    const double log_zero_tol = std::log(kZeroValueTol);
    std::priority_queue<HeapEntry> heap;
    std::vector<std::size_t> origin(d, 0);
    heap.push({log_key(origin), origin, 0});

    while (!heap.empty() && result.minima.size() < max_minima) {
      HeapEntry top = heap.top();
      heap.pop();
      ++result.combinations_visited;
      if (top.log_key <= log_zero_tol) break;  // every remaining |f| is at least as small

      int negatives = 0;
      double value = scale;
      Vector point(static_cast<Eigen::Index>(d));
      for (std::size_t i = 0; i < d; ++i) {
        const auto* p = eligible[i][top.index[i]];
        negatives += p->value < 0.0 ? 1 : 0;
        value *= p->value;
        point[static_cast<Eigen::Index>(i)] = p->x;
      }
      if (negatives % 2 == 1) {
        result.minima.push_back(std::move(point));
        result.values.push_back(value);
      }
      for (std::size_t j = top.pivot; j < d; ++j) {
        if (top.index[j] + 1 < eligible[j].size()) {
          auto child = top.index;
          ++child[j];
          heap.push({log_key(child), std::move(child), j});
        }
      }
    }
  }
  result.per_dim = std::move(per_dim);
  return result;
}

CriticalPointSet select_minima(const PriorSample& sample, std::size_t max_minima) {
  std::vector<std::vector<UnivariateCriticalPoint>> per_dim(sample.dim());
  for (std::size_t i = 0; i < sample.dim(); ++i) per_dim[i] = critical_points_1d(sample, i);
  return select_minima(std::move(per_dim), sample.scale(), max_minima);
}

}  // namespace gpts
