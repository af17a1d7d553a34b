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
#include "gpts/bo_driver.hpp"
#include "gpts/critical_points.hpp"
#include "gpts/gp_model.hpp"
#include "gpts/inner_opt.hpp"
#include "gpts/pathwise_sampling.hpp"
#include "gpts/rootfinding.hpp"
#include "gpts/spectral_kernel.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace gpts;

namespace {

Dataset as_dataset(const Matrix& x, const Vector& y) { return Dataset::from_normalized(x, y); }

py::dict trace_to_dict(const BOTrace& t) {
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  Matrix x(n, static_cast<Eigen::Index>(t.config.dim));
  Vector y(n), y_min(n), inner(n), regret(n), inner_time(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = t.rows[static_cast<std::size_t>(i)];
    x.row(i) = r.x_star.transpose();
    y[i] = r.y;
    y_min[i] = r.y_min;
    inner[i] = r.inner_value;
    regret[i] = r.log10_regret;
    inner_time[i] = r.inner_time_s;
  }
  py::dict d;
  d["x_star"] = x;
  d["y"] = y;
  d["y_min"] = y_min;
  d["inner_value"] = inner;
  d["log10_regret"] = regret;
  d["inner_time_s"] = inner_time;
  d["f_star"] = t.f_star;
  return d;
}

}  // namespace

PYBIND11_MODULE(_gpts, m) {
  m.doc() = "Spectral Thompson sampling for Bayesian optimization";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<SEKernelParams>(m, "KernelParams")
      .def(py::init([](std::vector<double> lengthscales, double amplitude, double noise_variance) {
             SEKernelParams p;
             p.lengthscales = std::move(lengthscales);
             p.amplitude = amplitude;
             p.noise_variance = noise_variance;
             p.validate();
             return p;
           }),
           py::arg("lengthscales"), py::arg("amplitude") = 1.0, py::arg("noise_variance") = 1e-6)
      .def_readwrite("lengthscales", &SEKernelParams::lengthscales)
      .def_readwrite("amplitude", &SEKernelParams::amplitude)
      .def_readwrite("noise_variance", &SEKernelParams::noise_variance)
      .def("__repr__", [](const SEKernelParams& p) {
        std::ostringstream os;
        os << "KernelParams(lengthscales=[";
        for (std::size_t i = 0; i < p.lengthscales.size(); ++i) os << (i ? ", " : "") << p.lengthscales[i];
        os << "], amplitude=" << p.amplitude << ", noise_variance=" << p.noise_variance << ")";
        return os.str();
      });

  m.def("kernel_value", &kernel_value, py::arg("params"), py::arg("x"), py::arg("xp"));
  m.def(
      "mercer_error",
      [](const SEKernelParams& p, const std::vector<Vector>& grid, double eta) {
        return mercer_reconstruction_error(build_basis(p, 1.0, eta), p, grid);
      },
      py::arg("params"), py::arg("grid"), py::arg("eta") = kDefaultEta,
      "Max |truncated Mercer sum - kernel| over all pairs of grid points.");

  py::class_<GPPosterior>(m, "GPPosterior")
      .def_property_readonly("params", &GPPosterior::params)
      .def_property_readonly("x", &GPPosterior::x)
      .def_property_readonly("y", &GPPosterior::y)
      .def("mean", &GPPosterior::mean)
      .def("variance", &GPPosterior::variance);

  m.def(
      "fit_posterior", [](const Matrix& x, const Vector& y, const SEKernelParams& p) {
        return fit_posterior(as_dataset(x, y), p);
      },
      py::arg("x"), py::arg("y"), py::arg("params"), "Exact GP posterior on normalized inputs in [-1, 1]^d.");
  m.def(
      "fit_hyperparameters",
      [](const Matrix& x, const Vector& y, double noise_variance, std::uint64_t seed) {
        HyperFitOptions o;
        o.seed = seed;
        return fit_hyperparameters(as_dataset(x, y), noise_variance, o);
      },
      py::arg("x"), py::arg("y"), py::arg("noise_variance") = 1e-12, py::arg("seed") = 0);

  py::class_<PriorSample>(m, "PriorSample")
      .def_property_readonly("dim", &PriorSample::dim)
      .def("eval", &PriorSample::eval)
      .def("grad", &PriorSample::grad)
      .def("factor", &PriorSample::univariate_eval, py::arg("dim"), py::arg("x"))
      .def("factor_deriv", &PriorSample::univariate_deriv, py::arg("dim"), py::arg("x"));

  m.def(
      "draw_prior",
      [](const SEKernelParams& p, std::uint64_t seed, double eta) {
        return draw_prior(build_basis(p, 1.0, eta), p.amplitude, seed);
      },
      py::arg("params"), py::arg("seed"), py::arg("eta") = kDefaultEta);

  py::class_<PosteriorSample>(m, "PosteriorSample")
      .def_property_readonly("prior", &PosteriorSample::prior)
      .def_property_readonly("canonical_weights", &PosteriorSample::canonical_weights)
      .def("eval", &PosteriorSample::eval)
      .def("grad", &PosteriorSample::grad);

  m.def(
      "condition", [](const PriorSample& prior, const GPPosterior& gp, std::uint64_t seed) {
        return condition(prior, gp, seed);
      },
      py::arg("prior"), py::arg("gp"), py::arg("seed"));

  m.def(
      "select_minima",
      [](const PriorSample& prior, std::size_t max_minima) {
        const auto set = select_minima(prior, max_minima);
        return py::make_tuple(set.minima, set.values);
      },
      py::arg("prior"), py::arg("max_minima") = kDefaultMaxMinima,
      "Negative local minima of a prior sample as (points, values), most negative first.");

  m.def(
      "optimize_ts",
      [](const PosteriorSample& sample, const PriorSample& prior, const Matrix& data_x, std::size_t max_minima) {
        const auto starts = make_start_set(select_minima(prior, max_minima), data_x);
        const auto r = optimize_ts(sample, starts);
        return py::make_tuple(r.argmin, r.value, r.starts_used);
      },
      py::arg("sample"), py::arg("prior"), py::arg("data_x"), py::arg("max_minima") = kDefaultMaxMinima,
      "Multi-start minimization from prior minima and data points; returns (argmin, value, starts).");

  m.def(
      "all_roots",
      [](const std::function<double(double)>& f, double lo, double hi) {
        return all_roots(build_proxy(f, lo, hi));
      },
      py::arg("f"), py::arg("lo") = -1.0, py::arg("hi") = 1.0);

  m.def("schwefel", &schwefel);
  m.def("levy", &levy);

  py::class_<BOConfig>(m, "BOConfig")
      .def(py::init<>())
      .def_readwrite("objective", &BOConfig::objective)
      .def_readwrite("dim", &BOConfig::dim)
      .def_readwrite("iterations", &BOConfig::iterations)
      .def_readwrite("initial_design", &BOConfig::initial_design)
      .def_readwrite("seed", &BOConfig::seed)
      .def_readwrite("run_id", &BOConfig::run_id)
      .def_readwrite("model_noise", &BOConfig::model_noise)
      .def_readwrite("eta", &BOConfig::eta)
      .def_readwrite("max_minima", &BOConfig::max_minima)
      .def_readwrite("lcb_beta", &BOConfig::lcb_beta)
      .def_readwrite("rff_features", &BOConfig::rff_features)
      .def_readwrite("freeze_hypers", &BOConfig::freeze_hypers)
      .def_property(
          "method", [](const BOConfig& c) { return std::string(to_string(c.method)); },
          [](BOConfig& c, const std::string& s) {
            const auto a = parse_acquisition(s);
            if (!a) throw py::value_error("unknown method: " + s);
            c.method = *a;
          })
      .def_property(
          "inner", [](const BOConfig& c) { return std::string(to_string(c.inner)); },
          [](BOConfig& c, const std::string& s) {
            const auto o = parse_inner_optimizer(s);
            if (!o) throw py::value_error("unknown inner optimizer: " + s);
            c.inner = *o;
          });

  m.def(
      "run_bo",
      [](const BOConfig& c) {
        BOTrace t;
        {
          py::gil_scoped_release release;
          t = run_bo(c);
        }
        return trace_to_dict(t);
      },
      py::arg("config"), "One BO run; returns a dict of per-iteration arrays (row 0 is the initial design).");

  m.def(
      "run_experiment",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"gpts_bench"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_experiment(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Benchmark CLI in-process; returns (exit code, stdout, stderr).");
}
