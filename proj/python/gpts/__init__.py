# Copyright 2026 The gpts Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Bayesian optimization with spectral Thompson sampling (C++ core)."""

from ._gpts import (
    BOConfig,
    GPPosterior,
    NumericalError,
    KernelParams,
    PosteriorSample,
    PriorSample,
    all_roots,
    condition,
    draw_prior,
    fit_hyperparameters,
    fit_posterior,
    kernel_value,
    levy,
    mercer_error,
    optimize_ts,
    run_bo,
    run_experiment,
    schwefel,
    select_minima,
)

__all__ = [
    "BOConfig",
    "GPPosterior",
    "NumericalError",
    "KernelParams",
    "PosteriorSample",
    "PriorSample",
    "all_roots",
    "condition",
    "draw_prior",
    "fit_hyperparameters",
    "fit_posterior",
    "kernel_value",
    "levy",
    "mercer_error",
    "optimize_ts",
    "run_bo",
    "run_experiment",
    "schwefel",
    "select_minima",
]
