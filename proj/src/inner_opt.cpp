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

#include "gpts/inner_opt.hpp"

#include "gpts/parallel.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gpts {

namespace {

bool lexicographically_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace

std::vector<Vector> StartSet::all() const {
  std::vector<Vector> out = exploration;
  out.insert(out.end(), exploitation.begin(), exploitation.end());
  return out;
}

StartSet make_start_set(const CriticalPointSet& minima, const Matrix& data_x) {
  StartSet s;
  s.exploration = minima.minima;
  s.exploitation.reserve(static_cast<std::size_t>(data_x.rows()));
  for (Eigen::Index i = 0; i < data_x.rows(); ++i) s.exploitation.push_back(data_x.row(i).transpose());
  return s;
}

InnerResult multistart_minimize(const ObjectiveFn& objective, const std::vector<Vector>& starts, const Box& box,
                                const LocalOptions& options) {
  if (starts.empty()) throw std::invalid_argument("multistart_minimize: no start points");
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<LocalResult> results(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) { results[i] = local_minimize(objective, starts[i], box, options); });

  InnerResult out;
  out.value = std::numeric_limits<double>::infinity();
  out.traces.reserve(results.size());
  bool any = false;
  for (const auto& r : results) {
    out.traces.push_back({r.start, r.x, r.start_value, r.value, r.iterations, r.evaluations, r.converged, r.failed});
    out.evaluations += r.evaluations;
    if (r.failed || !std::isfinite(r.value)) continue;
    if (!any || r.value < out.value || (r.value == out.value && lexicographically_less(r.x, out.argmin))) {
      out.value = r.value;
      out.argmin = r.x;
      any = true;
    }
  }
  out.starts_used = starts.size();
  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!any) {
    std::ostringstream os;
    os << "multistart_minimize: all " << starts.size() << " local searches failed (non-finite objective)";
    throw NumericalError(os.str());
  }
  return out;
}

ObjectiveFn as_objective(const PosteriorSample& sample) {
  return [&sample](const Vector& x, Vector& g) { return sample.eval_grad(x, g); };
}

InnerResult optimize_ts(const PosteriorSample& sample, const StartSet& starts, const LocalOptions& options) {
  return multistart_minimize(as_objective(sample), starts.all(), Box::unit(sample.dim()), options);
}

double distance_to_truth(const Vector& x, const Vector& x_true) { return (x - x_true).norm(); }

}  // namespace gpts
