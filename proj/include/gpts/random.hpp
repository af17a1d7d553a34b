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

#include <cstdint>
#include <limits>

namespace gpts {

/// Independent roles that consume random numbers within one BO run.
enum class StreamRole : std::uint64_t {
  kDesign = 1,
  kHyperStarts = 2,
  kPrior = 3,
  kNoise = 4,
  kRandomStarts = 5,
  kGenetic = 6,
  kFourierFeatures = 7,
  kFallback = 8,
  kStartCountReference = 9,
  kOracle = 10,
  kObservation = 11,
};

std::uint64_t mix64(std::uint64_t z);

/// Key for the stream identified by (seed, iteration, role).
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t iteration, StreamRole role);

/// Counter-based generator: the n-th output is a pure function of (key, n),
/// so streams with distinct keys never share state. Satisfies
/// UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}
  CounterRng(std::uint64_t seed, std::uint64_t iteration, StreamRole role)
      : key_(stream_key(seed, iteration, role)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gpts
