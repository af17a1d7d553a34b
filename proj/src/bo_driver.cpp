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

#include "gpts/bo_driver.hpp"

#include "gpts/baselines.hpp"
#include "gpts/design.hpp"
#include "gpts/gp_model.hpp"
#include "gpts/inner_opt.hpp"
#include "gpts/pathwise_sampling.hpp"
#include "gpts/random.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gpts {

std::string_view to_string(Acquisition a) {
  switch (a) {
    case Acquisition::kSpectralTs: return "spectral-ts";
    case Acquisition::kTsRf: return "ts-rf";
    case Acquisition::kEi: return "ei";
    case Acquisition::kLcb: return "lcb";
  }
  return "?";
}

std::string_view to_string(InnerOptimizer o) {
  switch (o) {
    case InnerOptimizer::kOurs: return "ours";
    case InnerOptimizer::kRandom: return "random";
    case InnerOptimizer::kGenetic: return "ga";
  }
  return "?";
}

std::optional<Acquisition> parse_acquisition(std::string_view s) {
  for (auto a : {Acquisition::kSpectralTs, Acquisition::kTsRf, Acquisition::kEi, Acquisition::kLcb}) {
    if (s == to_string(a)) return a;
  }
  return std::nullopt;
}

std::optional<InnerOptimizer> parse_inner_optimizer(std::string_view s) {
  for (auto o : {InnerOptimizer::kOurs, InnerOptimizer::kRandom, InnerOptimizer::kGenetic}) {
    if (s == to_string(o)) return o;
  }
  return std::nullopt;
}

void BOConfig::validate() const {
  if (dim < 1) throw std::invalid_argument("BOConfig: dimension must be at least 1");
  if (initial_size() < dim + 1) throw std::invalid_argument("BOConfig: initial design needs at least d + 1 points");
  if (!(model_noise > 0.0)) throw std::invalid_argument("BOConfig: model noise variance must be positive");
  if (observation_noise < 0.0) throw std::invalid_argument("BOConfig: observation noise must be non-negative");
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("BOConfig: eta must lie in (0, 1)");
  if (max_minima < 1) throw std::invalid_argument("BOConfig: max_minima must be positive");
  if (lcb_beta < 0.0) throw std::invalid_argument("BOConfig: LCB beta must be non-negative");
  if (rff_features < 1) throw std::invalid_argument("BOConfig: need at least one Fourier feature");
}

std::vector<Vector> initial_design(const Box& bounds, std::size_t n, std::uint64_t seed) {
  return low_discrepancy_points(n, bounds, seed);
}

double simple_regret(double y_min, double f_star) {
  const double gap = y_min - f_star;
  if (gap <= 1e-12) return -std::numeric_limits<double>::infinity();
  return std::log10(gap);
}

std::uint64_t run_seed(std::uint64_t seed, std::uint64_t run_id) {
  return stream_key(seed, run_id, StreamRole::kDesign);
}

namespace {

struct InnerOutcome {
  Vector candidate;  // normalized
  double value = 0.0;
  std::size_t starts = 0;
};

// Number of starts our method would use for the current model: exploration
// minima of a reference prior sample plus the data points.
std::size_t reference_start_count(const BOConfig& cfg, const SEKernelParams& params, std::size_t n_data,
                                  std::uint64_t seed, std::size_t iter) {
  const SpectralBasis basis = build_basis(params, 1.0, cfg.eta);
  CounterRng rng(seed, iter, StreamRole::kStartCountReference);
  const PriorSample prior = draw_prior(basis, params.amplitude, rng);
  return select_minima(prior, cfg.max_minima).minima.size() + n_data;
}

InnerOutcome inner_step(const BOConfig& cfg, const Dataset& data, const GPPosterior& gp, std::uint64_t seed,
                        std::size_t iter, std::size_t start_multiplier = 1) {
  const std::size_t d = data.dim();
  const Box box = Box::unit(d);
  const auto random_key = stream_key(seed, iter, StreamRole::kRandomStarts);
  const auto ga_key = stream_key(seed, iter, StreamRole::kGenetic);

  auto finish = [](const InnerResult& r) { return InnerOutcome{r.argmin, r.value, r.starts_used}; };
  auto run_baseline = [&](const ObjectiveFn& objective, std::size_t count) {
    count = std::max<std::size_t>(count * start_multiplier, 1);
    if (cfg.inner == InnerOptimizer::kGenetic) {
      const ValueFn value = [&objective, d](const Vector& x) {
        Vector g(static_cast<Eigen::Index>(d));
        return objective(x, g);
      };
      return finish(genetic_minimize(value, std::max<std::size_t>(count, 4), box, ga_key, cfg.ga_generations));
    }
    return finish(random_multistart(objective, count, box, random_key, cfg.local));
  };

  switch (cfg.method) {
    case Acquisition::kSpectralTs: {
      const SpectralBasis basis = build_basis(gp.params(), 1.0, cfg.eta);
      CounterRng prior_rng(seed, iter, StreamRole::kPrior);
      PriorSample prior = draw_prior(basis, gp.params().amplitude, prior_rng);
      const CriticalPointSet minima = select_minima(prior, cfg.max_minima);
      CounterRng noise_rng(seed, iter, StreamRole::kNoise);
      const PosteriorSample sample = condition(std::move(prior), gp, noise_rng);
      const StartSet starts = make_start_set(minima, data.x());
      if (cfg.inner == InnerOptimizer::kOurs) return finish(optimize_ts(sample, starts, cfg.local));
      return run_baseline(as_objective(sample), starts.size());
    }
    case Acquisition::kTsRf: {
      const RFFSample sample = ts_rf_draw(gp, cfg.rff_features, stream_key(seed, iter, StreamRole::kFourierFeatures));
      const ObjectiveFn objective = [&sample](const Vector& x, Vector& g) { return sample.eval_grad(x, g); };
      return run_baseline(objective, reference_start_count(cfg, gp.params(), data.size(), seed, iter));
    }
    case Acquisition::kEi: {
      const double y_min = data.y().minCoeff();
      return run_baseline(negative_ei_objective(gp, y_min),
                          reference_start_count(cfg, gp.params(), data.size(), seed, iter));
    }
    case Acquisition::kLcb:
      return run_baseline(lcb_objective(gp, cfg.lcb_beta),
                          reference_start_count(cfg, gp.params(), data.size(), seed, iter));
  }
  throw std::logic_error("inner_step: unknown acquisition");
}

}  // namespace

BOTrace run_bo(const BOConfig& config) { return run_bo(config, make_objective(config.objective, config.dim)); }

BOTrace run_bo(const BOConfig& config, const Objective& objective) {
  config.validate();
  if (objective.dim != config.dim) throw std::invalid_argument("run_bo: objective dimension mismatch");
  const std::uint64_t seed = run_seed(config.seed, config.run_id);
  const std::size_t d = config.dim;
  const std::size_t n0 = config.initial_size();

  CounterRng obs_rng(seed, 0, StreamRole::kObservation);
  auto observe = [&](const Vector& x) {
    double y = objective(x);
    if (config.observation_noise > 0.0) y += std::sqrt(config.observation_noise) * obs_rng.normal();
    return y;
  };

  const auto design = initial_design(objective.bounds, n0, stream_key(seed, 0, StreamRole::kDesign));
  Matrix x_raw(static_cast<Eigen::Index>(n0), static_cast<Eigen::Index>(d));
  Vector y_raw(static_cast<Eigen::Index>(n0));
  for (std::size_t i = 0; i < n0; ++i) {
    x_raw.row(static_cast<Eigen::Index>(i)) = design[i].transpose();
    y_raw[static_cast<Eigen::Index>(i)] = observe(design[i]);
  }

  BOTrace trace;
  trace.config = config;
  trace.f_star = objective.f_star;
  Eigen::Index best = 0;
  const double y0 = y_raw.minCoeff(&best);
  double y_min = y0;
  {
    TraceRow row;
    row.iter = 0;
    row.x_star = x_raw.row(best).transpose();
    row.y = y0;
    row.y_min = y0;
    row.inner_value = std::numeric_limits<double>::quiet_NaN();
    row.log10_regret = simple_regret(y_min, objective.f_star);
    trace.rows.push_back(std::move(row));
  }

  std::optional<SEKernelParams> frozen;
  double cumulative = 0.0;
  for (std::size_t iter = 1; iter <= config.iterations; ++iter) {
    const Dataset data = Dataset::from_raw(x_raw, y_raw, objective.bounds);
    TraceRow row;
    row.iter = iter;
    std::optional<InnerOutcome> outcome;
    double elapsed = 0.0;
    try {
      SEKernelParams params;
      if (config.freeze_hypers && frozen) {
        params = *frozen;
      } else {
        HyperFitOptions hyper;
        hyper.seed = stream_key(seed, iter, StreamRole::kHyperStarts);
        params = fit_hyperparameters(data, config.model_noise, hyper);
        if (config.freeze_hypers) frozen = params;
      }
      const GPPosterior gp = fit_posterior(data, params);
      const auto t0 = std::chrono::steady_clock::now();
      try {
        outcome = inner_step(config, data, gp, seed, iter);
      } catch (const NumericalError& e) {
        std::ostringstream os;
        os << "iteration " << iter << ": inner loop failed (" << e.what() << "); retrying with random starts";
        warn(os.str());
        BOConfig retry = config;
        retry.inner = InnerOptimizer::kRandom;
        try {
          outcome = inner_step(retry, data, gp, seed, iter, 2);
        } catch (const NumericalError&) {
          outcome.reset();
        }
      }
      elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    } catch (const NumericalError& e) {
      std::ostringstream os;
      os << "iteration " << iter << ": model fit failed (" << e.what() << ")";
      warn(os.str());
    }

    Vector candidate;
    if (outcome) {
      candidate = outcome->candidate;
      row.inner_value = outcome->value;
      row.starts = outcome->starts;
    } else {
      CounterRng rng(seed, iter, StreamRole::kFallback);
      candidate.resize(static_cast<Eigen::Index>(d));
      for (Eigen::Index i = 0; i < candidate.size(); ++i) candidate[i] = rng.uniform(-1.0, 1.0);
      row.inner_value = std::numeric_limits<double>::quiet_NaN();
      row.fallback = true;
      std::ostringstream os;
      os << "iteration " << iter << ": using a uniform random candidate";
      warn(os.str());
    }
    const Vector x_new = data.unnormalize(candidate);
    const double y_new = observe(x_new);
    y_min = std::min(y_min, y_new);
    cumulative += elapsed;

    row.x_star = x_new;
    row.y = y_new;
    row.y_min = y_min;
    row.inner_time_s = elapsed;
    row.cum_time_s = cumulative;
    row.log10_regret = simple_regret(y_min, objective.f_star);
    trace.rows.push_back(std::move(row));

    const auto n = x_raw.rows();
    x_raw.conservativeResize(n + 1, Eigen::NoChange);
    y_raw.conservativeResize(n + 1);
    x_raw.row(n) = x_new.transpose();
    y_raw[n] = y_new;
  }
  return trace;
}

}  // namespace gpts
