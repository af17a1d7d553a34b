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

#include "gpts/baselines.hpp"

#include "gpts/design.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gpts {

InnerResult random_multistart(const ObjectiveFn& objective, std::size_t n_starts, const Box& box, std::uint64_t seed,
                              const LocalOptions& options) {
  if (n_starts == 0) throw std::invalid_argument("random_multistart: need at least one start");
  CounterRng rng(seed);
  std::vector<Vector> starts(n_starts, Vector(static_cast<Eigen::Index>(box.dim())));
  for (auto& s : starts) {
    for (Eigen::Index i = 0; i < s.size(); ++i) s[i] = rng.uniform(box.lower[i], box.upper[i]);
  }
  return multistart_minimize(objective, starts, box, options);
}

namespace {

struct Individual {
  Vector x;
  double value;
};

double safe_value(const ValueFn& f, const Vector& x) {
  const double v = f(x);
  return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

}  // namespace

InnerResult genetic_minimize(const ValueFn& objective, std::size_t pop_size, const Box& box, std::uint64_t seed,
                             std::size_t max_generations, const GeneticOptions& options,
                             const std::vector<Vector>& initial_population) {
  if (pop_size < 4) throw std::invalid_argument("genetic_minimize: population size must be at least 4");
  const auto t0 = std::chrono::steady_clock::now();
  const auto d = static_cast<Eigen::Index>(box.dim());
  const Vector width = box.upper - box.lower;
  const double mutation_rate = options.mutation_rate >= 0.0 ? options.mutation_rate : 1.0 / static_cast<double>(d);
  CounterRng rng(seed);

  InnerResult out;
  std::vector<Individual> pop;
  pop.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i) {
    Vector x(d);
    if (!initial_population.empty()) {
      x = box.clamp(initial_population[i % initial_population.size()]);
    } else {
      for (Eigen::Index j = 0; j < d; ++j) x[j] = rng.uniform(box.lower[j], box.upper[j]);
    }
    const double v = safe_value(objective, x);
    pop.push_back({std::move(x), v});
  }
  out.evaluations = pop_size;

  auto by_value = [](const Individual& a, const Individual& b) { return a.value < b.value; };
  auto best_it = std::min_element(pop.begin(), pop.end(), by_value);
  Individual best = *best_it;
  double stall_reference = best.value;
  std::size_t stall = 0;

  auto tournament = [&]() -> const Individual& {
    std::size_t winner = static_cast<std::size_t>(rng.below(pop_size));
    for (std::size_t t = 1; t < options.tournament_size; ++t) {
      const auto c = static_cast<std::size_t>(rng.below(pop_size));
      if (pop[c].value < pop[winner].value) winner = c;
    }
    return pop[winner];
  };

  for (std::size_t gen = 0; gen < max_generations; ++gen) {
    std::vector<Individual> next;
    next.reserve(pop_size);
    std::vector<Individual> sorted = pop;
    std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(std::min(options.elites, pop_size)),
                      sorted.end(), by_value);
    for (std::size_t e = 0; e < std::min(options.elites, pop_size); ++e) next.push_back(sorted[e]);

    while (next.size() < pop_size) {
      const Individual& p1 = tournament();
      const Individual& p2 = tournament();
      Vector c1 = p1.x;
      Vector c2 = p2.x;
      if (rng.uniform() < options.crossover_rate) {
        for (Eigen::Index j = 0; j < d; ++j) {
          const double lo = std::min(p1.x[j], p2.x[j]);
          const double hi = std::max(p1.x[j], p2.x[j]);
          const double span = hi - lo;
          c1[j] = rng.uniform(lo - options.blend_alpha * span, hi + options.blend_alpha * span);
          c2[j] = rng.uniform(lo - options.blend_alpha * span, hi + options.blend_alpha * span);
        }
      }
      for (Vector* c : {&c1, &c2}) {
        for (Eigen::Index j = 0; j < d; ++j) {
          if (rng.uniform() < mutation_rate) (*c)[j] += options.mutation_scale * width[j] * rng.normal();
        }
        *c = box.clamp(*c);
        if (next.size() < pop_size) {
          const double v = safe_value(objective, *c);
          ++out.evaluations;
          next.push_back({*c, v});
        }
      }
    }
    pop = std::move(next);
    best_it = std::min_element(pop.begin(), pop.end(), by_value);
    if (best_it->value < best.value) best = *best_it;
    if (stall_reference - best.value > options.stall_tol) {
      stall_reference = best.value;
      stall = 0;
    } else if (++stall >= options.stall_generations) {
      break;
    }
  }
  out.argmin = best.x;
  out.value = best.value;
  out.starts_used = pop_size;
  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

double expected_improvement(double mean, double stddev, double y_min) {
  const double gap = y_min - mean;
  if (!(stddev > 0.0)) return std::max(0.0, gap);
  const double z = gap / stddev;
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  return std::max(0.0, gap * cdf + stddev * pdf);
}

double ei(const GPPosterior& gp, const Vector& x, double y_min) {
  return expected_improvement(gp.mean(x), std::sqrt(gp.variance(x)), y_min);
}

double lcb(const GPPosterior& gp, const Vector& x, double beta) {
  return gp.mean(x) - std::sqrt(beta) * std::sqrt(gp.variance(x));
}

ObjectiveFn negative_ei_objective(const GPPosterior& gp, double y_min) {
  return [&gp, y_min](const Vector& x, Vector& grad) {
    double mu = 0.0;
    double var = 0.0;
    Vector dmu;
    Vector dvar;
    gp.predict_with_grad(x, mu, var, dmu, dvar);
    const double s = std::sqrt(var);
    if (!(s > 0.0)) {
      grad = (y_min > mu) ? dmu : Vector::Zero(x.size());
      return -std::max(0.0, y_min - mu);
    }
    const double z = (y_min - mu) / s;
    const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
    const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    // dEI = -Phi(z) dmu + phi(z) ds, ds = dvar / (2 s)
    grad = cdf * dmu - pdf * dvar / (2.0 * s);
    return -((y_min - mu) * cdf + s * pdf);
  };
}

ObjectiveFn lcb_objective(const GPPosterior& gp, double beta) {
  const double root_beta = std::sqrt(beta);
  return [&gp, root_beta](const Vector& x, Vector& grad) {
    double mu = 0.0;
    double var = 0.0;
    Vector dmu;
    Vector dvar;
    gp.predict_with_grad(x, mu, var, dmu, dvar);
    const double s = std::sqrt(var);
    grad = dmu;
    if (s > 0.0) grad -= root_beta * dvar / (2.0 * s);
    return mu - root_beta * s;
  };
}

RFFSample::RFFSample(Matrix frequencies, Vector phases, Vector weights, double amplitude)
    : omega_(std::move(frequencies)), phases_(std::move(phases)), beta_(std::move(weights)), amplitude_(amplitude) {
  if (omega_.rows() != phases_.size() || phases_.size() != beta_.size())
    throw std::invalid_argument("RFFSample: inconsistent feature counts");
}

Vector RFFSample::features_at(const Vector& x) const {
  const double norm = std::sqrt(2.0 * amplitude_ / static_cast<double>(features()));
  return norm * ((omega_ * x + phases_).array().cos()).matrix();
}

double RFFSample::eval(const Vector& x) const { return features_at(x).dot(beta_); }

double RFFSample::eval_grad(const Vector& x, Vector& grad) const {
  const double norm = std::sqrt(2.0 * amplitude_ / static_cast<double>(features()));
  const Eigen::ArrayXd arg = (omega_ * x + phases_).array();
  const Vector weighted_sin = (beta_.array() * arg.sin()).matrix();
  grad = -norm * (omega_.transpose() * weighted_sin);
  return norm * (beta_.array() * arg.cos()).sum();
}

namespace {

void draw_features(const SEKernelParams& params, std::size_t features, CounterRng& rng, Matrix& omega, Vector& phases) {
  const auto m = static_cast<Eigen::Index>(features);
  const auto d = static_cast<Eigen::Index>(params.dim());
  omega.resize(m, d);
  phases.resize(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index i = 0; i < d; ++i) omega(k, i) = rng.normal() / params.lengthscales[static_cast<std::size_t>(i)];
    phases[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
}

}  // namespace

RFFSample ts_rf_prior(const SEKernelParams& params, std::size_t features, std::uint64_t seed) {
  if (features == 0) throw std::invalid_argument("ts_rf_draw: need at least one feature");
  CounterRng rng(seed);
  Matrix omega;
  Vector phases;
  draw_features(params, features, rng, omega, phases);
  Vector beta(static_cast<Eigen::Index>(features));
  for (Eigen::Index k = 0; k < beta.size(); ++k) beta[k] = rng.normal();
  return RFFSample(std::move(omega), std::move(phases), std::move(beta), params.amplitude);
}

RFFSample ts_rf_draw(const GPPosterior& gp, std::size_t features, std::uint64_t seed) {
  RFFSample prior = ts_rf_prior(gp.params(), features, seed);
  const auto n = static_cast<Eigen::Index>(gp.size());
  if (n == 0) return prior;
  // Observation-noise draws for the weight update come from a derived stream.
  CounterRng rng(mix64(seed ^ 0xA5A5A5A5A5A5A5A5ULL));
  Matrix phi(n, static_cast<Eigen::Index>(features));
  for (Eigen::Index j = 0; j < n; ++j) phi.row(j) = prior.features_at(gp.x().row(j).transpose()).transpose();
  const double noise = gp.params().noise_variance;
  Vector resid(n);
  for (Eigen::Index j = 0; j < n; ++j) resid[j] = gp.y()[j] - phi.row(j).dot(prior.weights()) - std::sqrt(noise) * rng.normal();
  Matrix gram = phi * phi.transpose();
  gram.diagonal().array() += noise;
  const CholeskyResult chol = robust_cholesky(gram);
  const auto l = chol.lower.triangularView<Eigen::Lower>();
  const Vector z = l.transpose().solve(l.solve(resid));
  Vector beta = prior.weights() + phi.transpose() * z;
  return RFFSample(prior.frequencies(), prior.phases(), std::move(beta), prior.amplitude());
}

}  // namespace gpts
