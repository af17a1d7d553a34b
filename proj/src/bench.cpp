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

#include "gpts/bench.hpp"

#include "gpts/parallel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gpts {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec == std::errc::invalid_argument) throw std::invalid_argument("parse_double: not a number: '" + s + "'");
  if (ptr != end) throw std::invalid_argument("parse_double: trailing characters in '" + s + "'");
  return v;
}

std::string trace_label(const BOConfig& config) {
  std::string label(to_string(config.method));
  if (config.inner != InnerOptimizer::kOurs) {
    label += '+';
    label += to_string(config.inner);
  }
  return label;
}

namespace {

std::string join_x(const Vector& x) {
  std::string s;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) s += ';';
    s += format_double(x[i]);
  }
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

void write_trace_csv(const BOTrace& trace, std::ostream& out) {
  const std::string label = trace_label(trace.config);
  out << "run_id,method,iter,x_star,y,y_min,inner_value,log10_regret\n";
  for (const auto& row : trace.rows) {
    out << trace.config.run_id << ',' << label << ',' << row.iter << ',' << join_x(row.x_star) << ','
        << format_double(row.y) << ',' << format_double(row.y_min) << ',' << format_double(row.inner_value) << ','
        << format_double(row.log10_regret) << '\n';
  }
}

void write_timing_csv(const BOTrace& trace, std::ostream& out) {
  const std::string label = trace_label(trace.config);
  out << "run_id,method,iter,inner_time_s,cum_time_s\n";
  for (const auto& row : trace.rows) {
    out << trace.config.run_id << ',' << label << ',' << row.iter << ',' << format_double(row.inner_time_s) << ','
        << format_double(row.cum_time_s) << '\n';
  }
}

std::vector<TraceCsvRow> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_trace_csv: empty input");
  std::vector<TraceCsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 8) throw std::runtime_error("read_trace_csv: expected 8 fields, got " + std::to_string(f.size()));
    TraceCsvRow r;
    r.run_id = std::stoull(f[0]);
    r.method = f[1];
    r.iter = std::stoull(f[2]);
    for (const auto& v : split(f[3], ';')) r.x_star.push_back(parse_double(v));
    r.y = parse_double(f[4]);
    r.y_min = parse_double(f[5]);
    r.inner_value = parse_double(f[6]);
    r.log10_regret = parse_double(f[7]);
    rows.push_back(std::move(r));
  }
  return rows;
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  const double a = sorted[lo];
  const double b = sorted[hi];
  if (frac == 0.0 || a == b) return a;
  if (std::isinf(a) || std::isinf(b)) return std::isinf(a) ? a : b;
  return a + frac * (b - a);
}

std::vector<SummaryRow> summarize(const std::vector<BOTrace>& traces) {
  std::map<std::string, std::map<std::size_t, std::vector<double>>> groups;
  std::vector<std::string> order;
  for (const auto& t : traces) {
    const std::string label = trace_label(t.config);
    if (!groups.count(label)) order.push_back(label);
    for (const auto& row : t.rows) groups[label][row.iter].push_back(row.log10_regret);
  }
  std::vector<SummaryRow> rows;
  for (const auto& label : order) {
    for (auto& [iter, values] : groups[label]) {
      std::sort(values.begin(), values.end());
      rows.push_back({label, iter, quantile_sorted(values, 0.5), quantile_sorted(values, 0.25),
                      quantile_sorted(values, 0.75), values.size()});
    }
  }
  return rows;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << "method,iter,runs,median,q25,q75\n";
  for (const auto& r : rows) {
    out << r.method << ',' << r.iter << ',' << r.runs << ',' << format_double(r.median) << ','
        << format_double(r.q25) << ',' << format_double(r.q75) << '\n';
  }
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

int run_experiment(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bayesian optimization benchmark on Schwefel and Levy functions"};
  app.set_config("--config", "", "Read key = value settings from a file (flags override it)");
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::string func = "schwefel";
  std::size_t dim = 2;
  std::vector<std::string> methods{"spectral-ts"};
  std::string inner = "ours";
  std::size_t runs = 20;
  std::size_t iters = 0;
  std::uint64_t seed = 0;
  std::string out_dir = "results";
  BOConfig defaults;
  double eta = defaults.eta;
  std::size_t mmax = defaults.max_minima;
  double beta = defaults.lcb_beta;
  std::size_t rff_m = defaults.rff_features;
  bool freeze = false;
  double noise_var = defaults.model_noise;
  std::size_t init = 0;
  std::size_t workers = 0;

  const std::vector<std::string> method_names{"spectral-ts", "ts-rf", "ei", "lcb"};
  app.add_option("--func", func, "Objective")->check(CLI::IsMember(objective_ids()))->capture_default_str();
  app.add_option("--dim", dim, "Input dimension")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--method", methods, "Acquisition(s), comma separated")
      ->delimiter(',')
      ->check(CLI::IsMember(method_names))
      ->capture_default_str();
  app.add_option("--inner", inner, "Inner-loop optimizer")
      ->check(CLI::IsMember({"ours", "random", "ga"}))
      ->capture_default_str();
  app.add_option("--runs", runs, "Independent runs per method")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--iters", iters, "BO iterations (default 120, or 200 when dim >= 10)");
  app.add_option("--seed", seed, "Base seed")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--eta", eta, "Eigenvalue truncation tolerance")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  app.add_option("--mmax", mmax, "Maximum number of prior minima")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--beta", beta, "LCB exploration weight")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--rff-m", rff_m, "Random Fourier features for TS-RF")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--freeze-hypers", freeze, "Fit hyperparameters once and keep them");
  app.add_option("--noise-var", noise_var, "GP noise variance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--init", init, "Initial design size (default 10 * dim)");
  app.add_option("--workers", workers, "Parallel runs (default: hardware threads)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    std::vector<BOConfig> configs;
    for (const auto& m : methods) {
      for (std::size_t r = 0; r < runs; ++r) {
        BOConfig c;
        c.objective = func;
        c.dim = dim;
        c.initial_design = init;
        c.iterations = iters != 0 ? iters : (dim >= 10 ? 200 : 120);
        c.method = *parse_acquisition(m);
        c.inner = *parse_inner_optimizer(inner);
        c.seed = seed;
        c.run_id = r;
        c.model_noise = noise_var;
        c.max_minima = mmax;
        c.eta = eta;
        c.lcb_beta = beta;
        c.rff_features = rff_m;
        c.freeze_hypers = freeze;
        c.validate();
        configs.push_back(std::move(c));
      }
    }
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);

    std::vector<BOTrace> traces(configs.size());
    parallel_for(
        configs.size(),
        [&](std::size_t i) {
          traces[i] = run_bo(configs[i]);
          const std::string stem = trace_label(configs[i]) + "_run" + std::to_string(configs[i].run_id);
          std::ostringstream trace_text;
          std::ostringstream timing_text;
          write_trace_csv(traces[i], trace_text);
          write_timing_csv(traces[i], timing_text);
          write_file(dir / (stem + ".csv"), trace_text.str());
          write_file(dir / (stem + "_timing.csv"), timing_text.str());
        },
        workers);

    std::ostringstream summary;
    write_summary_csv(summarize(traces), summary);
    write_file(dir / "summary.csv", summary.str());
    out << "wrote " << traces.size() << " traces and summary.csv to " << dir.string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace gpts
