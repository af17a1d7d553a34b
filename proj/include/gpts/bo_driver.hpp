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
#include "gpts/critical_points.hpp"
#include "gpts/local_opt.hpp"
#include "gpts/objectives.hpp"
#include "gpts/spectral_kernel.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gpts {

enum class Acquisition { kSpectralTs, kTsRf, kEi, kLcb };
enum class InnerOptimizer { kOurs, kRandom, kGenetic };

std::string_view to_string(Acquisition a);
std::string_view to_string(InnerOptimizer o);
std::optional<Acquisition> parse_acquisition(std::string_view s);
std::optional<InnerOptimizer> parse_inner_optimizer(std::string_view s);

struct BOConfig {
  std::string objective = "schwefel";
  std::size_t dim = 2;
  std::size_t initial_design = 0;  // 0 means 10 * dim
  std::size_t iterations = 120;
  Acquisition method = Acquisition::kSpectralTs;
  InnerOptimizer inner = InnerOptimizer::kOurs;
  std::uint64_t seed = 0;
  std::uint64_t run_id = 0;
  double observation_noise = 0.0;  // simulator noise variance
  double model_noise = 1e-12;      // GP noise variance
  std::size_t max_minima = kDefaultMaxMinima;
  double eta = kDefaultEta;
  double lcb_beta = 4.0;
  std::size_t rff_features = 1000;
  std::size_t ga_generations = 200;
  bool freeze_hypers = false;
  LocalOptions local;

  std::size_t initial_size() const { return initial_design == 0 ? 10 * dim : initial_design; }
  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

struct TraceRow {
  std::size_t iter = 0;
  Vector x_star;  // original units
  double y = 0.0;
  double y_min = 0.0;
  double inner_value = 0.0;  // NaN for the initial-design row and fallbacks
  double inner_time_s = 0.0;
  double cum_time_s = 0.0;
  double log10_regret = 0.0;
  std::size_t starts = 0;
  bool fallback = false;
};

struct BOTrace {
  BOConfig config;
  double f_star = 0.0;
  std::vector<TraceRow> rows;  // row 0 summarizes the initial design
};

/// Scrambled low-discrepancy design of n points inside `bounds`.
std::vector<Vector> initial_design(const Box& bounds, std::size_t n, std::uint64_t seed);

/// log10(y_min - f_star), or -infinity once the gap is at most 1e-12.
double simple_regret(double y_min, double f_star);

/// Seed shared by every method for run `run_id`, so they start from the same design.
std::uint64_t run_seed(std::uint64_t seed, std::uint64_t run_id);

BOTrace run_bo(const BOConfig& config);
BOTrace run_bo(const BOConfig& config, const Objective& objective);

}  // namespace gpts
