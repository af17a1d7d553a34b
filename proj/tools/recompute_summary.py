#!/usr/bin/env python3
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

"""Recompute per-iteration log10-regret quantiles from trace CSVs and compare
them with summary.csv. Exit status 0 when every entry matches."""

import argparse
import csv
import math
import pathlib
import sys
from collections import defaultdict


def quantile(sorted_values, q):
    pos = q * (len(sorted_values) - 1)
    lo = math.floor(pos)
    hi = min(lo + 1, len(sorted_values) - 1)
    a, b = sorted_values[lo], sorted_values[hi]
    frac = pos - lo
    if frac == 0.0 or a == b:
        return a
    if math.isinf(a) or math.isinf(b):
        return a if math.isinf(a) else b
    return a + frac * (b - a)


def recompute(directory):
    groups = defaultdict(lambda: defaultdict(list))
    for path in sorted(directory.glob("*_run*.csv")):
        if path.name.endswith("_timing.csv"):
            continue
        with path.open(newline="") as f:
            for row in csv.DictReader(f):
                groups[row["method"]][int(row["iter"])].append(float(row["log10_regret"]))
    out = {}
    for method, by_iter in groups.items():
        for it, values in by_iter.items():
            values.sort()
            out[(method, it)] = (len(values), quantile(values, 0.5), quantile(values, 0.25), quantile(values, 0.75))
    return out


def close(a, b, tol):
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= tol


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("directory", type=pathlib.Path)
    parser.add_argument("--tol", type=float, default=1e-12)
    args = parser.parse_args()

    expected = recompute(args.directory)
    seen = 0
    bad = 0
    with (args.directory / "summary.csv").open(newline="") as f:
        for row in csv.DictReader(f):
            key = (row["method"], int(row["iter"]))
            runs, med, q25, q75 = expected[key]
            ok = int(row["runs"]) == runs and all(
                close(float(row[name]), value, args.tol) for name, value in (("median", med), ("q25", q25), ("q75", q75))
            )
            bad += not ok
            seen += 1
    if seen != len(expected):
        print(f"summary has {seen} rows, traces give {len(expected)}")
        return 1
    print(f"{seen} summary rows checked, {bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
