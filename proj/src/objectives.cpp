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

#include "gpts/objectives.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gpts {

namespace {

void require_in_bounds(const Vector& x, double lo, double hi, const char* name) {
  if (x.size() == 0) throw std::invalid_argument(std::string(name) + ": empty input");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lo && x[i] <= hi)) {
      std::ostringstream os;
      os << name << ": coordinate " << i << " = " << x[i] << " outside [" << lo << ", " << hi << "]";
      throw std::out_of_range(os.str());
    }
  }
}

// Stationary point of x sin(sqrt(x)) near the literature minimizer, by Newton.
double schwefel_argmin_1d() {
  double x = 420.9687;
  for (int it = 0; it < 50; ++it) {
    const double r = std::sqrt(x);
    const double g = std::sin(r) + 0.5 * r * std::cos(r);
    const double dg = (1.5 * std::cos(r) - 0.5 * r * std::sin(r)) / (2.0 * r);
    const double step = g / dg;
    x -= step;
    if (std::abs(step) < 1e-14 * x) break;
  }
  return x;
}

}  // namespace

double schwefel(const Vector& x) {
  require_in_bounds(x, -500.0, 500.0, "schwefel");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) sum += x[i] * std::sin(std::sqrt(std::abs(x[i])));
  return 418.9829 * static_cast<double>(x.size()) - sum;
}

double levy(const Vector& x) {
  require_in_bounds(x, -10.0, 10.0, "levy");
  constexpr double pi = std::numbers::pi;
  const Eigen::Index d = x.size();
  auto w = [&](Eigen::Index i) { return 1.0 + (x[i] - 1.0) / 4.0; };
  auto sq = [](double v) { return v * v; };
  double value = sq(std::sin(pi * w(0)));
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    const double wi = w(i);
    value += sq(wi - 1.0) * (1.0 + 10.0 * sq(std::sin(pi * wi + 1.0)));
  }
  const double wd = w(d - 1);
  value += sq(wd - 1.0) * (1.0 + sq(std::sin(2.0 * pi * wd)));
  return value;
}

Objective make_objective(std::string_view id, std::size_t dim) {
  if (dim < 1) throw std::invalid_argument("make_objective: dimension must be at least 1");
  const auto d = static_cast<Eigen::Index>(dim);
  Objective obj;
  obj.id = std::string(id);
  obj.dim = dim;
  if (id == "schwefel") {
    obj.bounds = {Vector::Constant(d, -500.0), Vector::Constant(d, 500.0)};
    // The rounded constant leaves a positive minimum (about 1.27e-5 per coordinate).
    obj.x_star = Vector::Constant(d, schwefel_argmin_1d());
    obj.f_star = schwefel(obj.x_star);
    obj.eval = [](const Vector& x) { return schwefel(x); };
  } else if (id == "levy") {
    obj.bounds = {Vector::Constant(d, -10.0), Vector::Constant(d, 10.0)};
    obj.f_star = 0.0;
    obj.x_star = Vector::Ones(d);
    obj.eval = [](const Vector& x) { return levy(x); };
  } else {
    throw std::invalid_argument("make_objective: unknown objective '" + std::string(id) + "'");
  }
  return obj;
}

std::vector<std::string> objective_ids() { return {"schwefel", "levy"}; }

}  // namespace gpts
