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

#include "gpts/bo_driver.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace gpts {

/// Shortest round-trippable text for a double (17 significant digits);
/// infinities as "inf"/"-inf" and NaN as "nan".
std::string format_double(double v);
double parse_double(const std::string& s);

/// Trace CSV: run_id,method,iter,x_star,y,y_min,inner_value,log10_regret
/// with x_star semicolon-joined in original units. Deterministic content.
void write_trace_csv(const BOTrace& trace, std::ostream& out);
/// Wall-clock sidecar: run_id,method,iter,inner_time_s,cum_time_s.
void write_timing_csv(const BOTrace& trace, std::ostream& out);

struct TraceCsvRow {
  std::size_t run_id = 0;
  std::string method;
  std::size_t iter = 0;
  std::vector<double> x_star;
  double y = 0.0;
  double y_min = 0.0;
  double inner_value = 0.0;
  double log10_regret = 0.0;
};
std::vector<TraceCsvRow> read_trace_csv(std::istream& in);

/// Linear-interpolation quantile of sorted values; -inf entries propagate
/// instead of producing NaN.
double quantile_sorted(const std::vector<double>& sorted, double q);

struct SummaryRow {
  std::string method;
  std::size_t iter = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  std::size_t runs = 0;
};

/// Per-method, per-iteration median and interquartile range of log10 regret.
std::vector<SummaryRow> summarize(const std::vector<BOTrace>& traces);
void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);

std::string trace_label(const BOConfig& config);

/// Entry point of the benchmark CLI. Returns 0 on success, 2 on invalid
/// flags (usage printed to `err`), 1 on runtime failure.
int run_experiment(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gpts
