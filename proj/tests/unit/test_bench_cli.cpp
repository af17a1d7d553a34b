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

#include <doctest.h>

#include "gpts/bench.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

using namespace gpts;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gpts_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int run(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "gpts_bench");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_experiment(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::vector<std::string> smoke_args(const fs::path& dir) {
  return {"--func", "schwefel", "--dim", "2", "--method", "spectral-ts", "--runs", "2", "--iters", "3",
          "--seed", "7", "--out", dir.string()};
}

}  // namespace

TEST_CASE("number formatting round trips") {
  for (double v : {0.0, -0.0, 1.0 / 3.0, 1e-300, -2.5e17, 420.9687, 5e-324}) {
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(std::isnan(parse_double("nan")));
  CHECK_THROWS(parse_double("1.5x"));
  CHECK_THROWS(parse_double("abc"));
  CHECK(parse_double("1e-320") > 0.0);
}

TEST_CASE("quantiles") {
  const double ninf = -std::numeric_limits<double>::infinity();
  CHECK(quantile_sorted({1.0, 2.0, 3.0, 4.0}, 0.5) == doctest::Approx(2.5));
  CHECK(quantile_sorted({1.0, 2.0, 3.0, 4.0}, 0.25) == doctest::Approx(1.75));
  CHECK(quantile_sorted({5.0}, 0.75) == 5.0);
  CHECK(quantile_sorted({ninf, ninf, -3.0}, 0.5) == ninf);
  CHECK(quantile_sorted({ninf, -3.0, -2.0}, 0.25) == ninf);
  CHECK(quantile_sorted({ninf, -3.0, -2.0}, 0.75) == doctest::Approx(-2.5));
  CHECK(std::isnan(quantile_sorted({}, 0.5)));
}

TEST_CASE("smoke run writes traces and a summary") {
  const auto dir = scratch("smoke");
  std::string out, err;
  REQUIRE(run(smoke_args(dir), &out, &err) == 0);
  CHECK(fs::exists(dir / "spectral-ts_run0.csv"));
  CHECK(fs::exists(dir / "spectral-ts_run1.csv"));
  CHECK(fs::exists(dir / "spectral-ts_run0_timing.csv"));
  CHECK(fs::exists(dir / "summary.csv"));

  std::ifstream f(dir / "spectral-ts_run0.csv");
  const auto rows = read_trace_csv(f);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].iter == i);
    CHECK(rows[i].method == "spectral-ts");
    CHECK(rows[i].x_star.size() == 2);
  }

  // Recompute the summary from the trace files.
  std::map<std::size_t, std::vector<double>> by_iter;
  for (int r = 0; r < 2; ++r) {
    std::ifstream t(dir / ("spectral-ts_run" + std::to_string(r) + ".csv"));
    for (const auto& row : read_trace_csv(t)) by_iter[row.iter].push_back(row.log10_regret);
  }
  std::istringstream summary(slurp(dir / "summary.csv"));
  std::string line;
  std::getline(summary, line);
  CHECK(line == "method,iter,runs,median,q25,q75");
  std::size_t count = 0;
  while (std::getline(summary, line)) {
    std::istringstream ls(line);
    std::string method, iter, runs, median;
    std::getline(ls, method, ',');
    std::getline(ls, iter, ',');
    std::getline(ls, runs, ',');
    std::getline(ls, median, ',');
    auto values = by_iter.at(std::stoul(iter));
    std::sort(values.begin(), values.end());
    const double expected = 0.5 * (values[0] + values[1]);
    const double got = parse_double(median);
    if (std::isinf(expected)) {
      CHECK(got == expected);
    } else {
      CHECK(std::abs(got - expected) <= 1e-12);
    }
    CHECK(runs == "2");
    ++count;
  }
  CHECK(count == 4);
}

TEST_CASE("reruns are byte-identical") {
  const auto a = scratch("rerun_a");
  const auto b = scratch("rerun_b");
  auto args_a = smoke_args(a);
  auto args_b = smoke_args(b);
  args_a[5] = args_b[5] = "spectral-ts,ei";
  REQUIRE(run(args_a) == 0);
  REQUIRE(run(args_b) == 0);
  for (const char* name : {"spectral-ts_run0.csv", "spectral-ts_run1.csv", "ei_run0.csv", "ei_run1.csv", "summary.csv"}) {
    CAPTURE(name);
    CHECK(slurp(a / name) == slurp(b / name));
  }
}

TEST_CASE("invalid flags exit with usage") {
  std::string out, err;
  CHECK(run({"--method", "foo"}, &out, &err) == 2);
  CHECK(err.find("--method") != std::string::npos);
  CHECK(run({"--func", "rastrigin"}) == 2);
  CHECK(run({"--dim", "0"}) == 2);
  CHECK(run({"--bogus"}) == 2);
  CHECK(run({"--help"}, &out) == 0);
  CHECK(out.find("--freeze-hypers") != std::string::npos);
}

TEST_CASE("config file") {
  const auto dir = scratch("config");
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.ini";
  {
    std::ofstream f(cfg);
    f << "func = levy\ndim = 2\nmethod = lcb\nruns = 1\niters = 2\nout = " << (dir / "res").string() << "\n";
  }
  REQUIRE(run({"--config", cfg.string()}) == 0);
  CHECK(fs::exists(dir / "res" / "lcb_run0.csv"));
  {
    std::ofstream f(cfg);
    f << "func = levy\nlearning_rate = 3\n";
  }
  CHECK(run({"--config", cfg.string()}) == 2);
}

TEST_CASE("inner optimizer label") {
  const auto dir = scratch("label");
  auto args = smoke_args(dir);
  args[7] = "1";
  args.insert(args.end(), {"--inner", "random"});
  REQUIRE(run(args) == 0);
  CHECK(fs::exists(dir / "spectral-ts+random_run0.csv"));
}

#ifdef GPTS_BENCH_EXE
TEST_CASE("standalone executable") {
  const auto dir = scratch("exe");
  const std::string cmd = std::string("\"") + GPTS_BENCH_EXE +
                          "\" --func levy --dim 1 --method ei --runs 1 --iters 2 --out \"" + dir.string() +
                          "\" > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "ei_run0.csv"));
  const std::string bad = std::string("\"") + GPTS_BENCH_EXE + "\" --method foo > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
#endif
