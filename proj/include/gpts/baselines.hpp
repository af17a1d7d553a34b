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

#include "gpts/gp_model.hpp"
#include "gpts/inner_opt.hpp"
#include "gpts/random.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>

namespace gpts {

/// Multistart local search from `n_starts` uniform points in `box`, using the
/// same local optimizer and stopping rules as optimize_ts.
InnerResult random_multistart(const ObjectiveFn& objective, std::size_t n_starts, const Box& box, std::uint64_t seed,
                              const LocalOptions& options = {});

using ValueFn = std::function<double(const Vector&)>;

struct GeneticOptions {
  std::size_t tournament_size = 3;
  double crossover_rate = 0.9;
  double blend_alpha = 0.5;
  double mutation_scale = 0.1;  // times the box width per coordinate
  double mutation_rate = -1.0;  // per coordinate; negative means 1/d
  std::size_t elites = 1;
  std::size_t stall_generations = 20;
  double stall_tol = 1e-8;
};

/// Real-coded generational GA: tournament selection, BLX-alpha crossover,
/// Gaussian mutation and elitism. Stops after `max_generations` or when the
/// best value has not improved by more than stall_tol for stall_generations.
/// `initial_population`, if non-empty, replaces the uniform random start.
InnerResult genetic_minimize(const ValueFn& objective, std::size_t pop_size, const Box& box, std::uint64_t seed,
                             std::size_t max_generations, const GeneticOptions& options = {},
                             const std::vector<Vector>& initial_population = {});

/// Expected improvement below y_min; reduces to max(0, y_min - mu) at zero variance.
double expected_improvement(double mean, double stddev, double y_min);
double ei(const GPPosterior& gp, const Vector& x, double y_min);
/// mu - sqrt(beta) * sigma.
double lcb(const GPPosterior& gp, const Vector& x, double beta);

/// Objectives for minimization: -EI and LCB, with analytic gradients.
ObjectiveFn negative_ei_objective(const GPPosterior& gp, double y_min);
ObjectiveFn lcb_objective(const GPPosterior& gp, double beta);

/// Random-Fourier-feature posterior sample
///   f(x) = sqrt(2 amplitude / M) sum_m beta_m cos(omega_m . x + b_m).
class RFFSample {
 public:
  RFFSample(Matrix frequencies, Vector phases, Vector weights, double amplitude);

  std::size_t features() const { return static_cast<std::size_t>(phases_.size()); }
  const Matrix& frequencies() const { return omega_; }
  const Vector& phases() const { return phases_; }
  const Vector& weights() const { return beta_; }
  double amplitude() const { return amplitude_; }

  /// Feature vector at x.
  Vector features_at(const Vector& x) const;
  double eval(const Vector& x) const;
  double eval_grad(const Vector& x, Vector& grad) const;

 private:
  Matrix omega_;  // M x d
  Vector phases_;
  Vector beta_;
  double amplitude_;
};

/// Draws frequencies omega ~ N(0, diag(1/l^2)) and phases ~ U[0, 2 pi), then
/// weights from their Gaussian posterior given the data (weight-space
/// Matheron update, an N x N solve). With no data the weights are N(0, I).
RFFSample ts_rf_draw(const GPPosterior& gp, std::size_t features, std::uint64_t seed);
RFFSample ts_rf_prior(const SEKernelParams& params, std::size_t features, std::uint64_t seed);

}  // namespace gpts
