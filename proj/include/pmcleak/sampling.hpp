// Copyright 2026 The pmcleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded generators for random finite instances. Doubles are drawn from
// continuous laws; rationals from small integer weights so that exact
// arithmetic stays cheap.

#ifndef PMCLEAK_SAMPLING_HPP_
#define PMCLEAK_SAMPLING_HPP_

#include <cstddef>
#include <random>
#include <vector>

#include "pmcleak/probcore.hpp"

namespace pmcleak {

using Rng = std::mt19937_64;

// A strictly positive weight.
template <Scalar T>
T RandomWeight(Rng& rng) {
  if constexpr (kIsExact<T>) {
    return T(std::uniform_int_distribution<long>(1, 12)(rng));
  } else {
    return std::uniform_real_distribution<double>(0.02, 1.0)(rng);
  }
}

template <Scalar T>
std::vector<T> RandomSimplexPoint(Rng& rng, std::size_t n,
                                  double zero_probability = 0.0) {
  std::bernoulli_distribution zero(zero_probability);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<T> w(n);
  for (T& v : w) v = zero(rng) ? T(0) : RandomWeight<T>(rng);
  // Keep at least one positive entry.
  const std::size_t keep = pick(rng);
  if (w[keep] == 0) w[keep] = RandomWeight<T>(rng);
  T total(0);
  for (const T& v : w) total += v;
  for (T& v : w) v /= total;
  if constexpr (!kIsExact<T>) {
    // Absorb rounding so the row sums to 1 as closely as possible.
    T rest(0);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != keep) rest += w[i];
    }
    w[keep] = 1.0 - rest;
  }
  return w;
}

template <Scalar T>
Pmf<T> RandomPmf(Rng& rng, std::size_t n) {
  std::vector<T> w(n);
  for (T& v : w) v = RandomWeight<T>(rng);
  return Pmf<T>::FromWeights(std::move(w));
}

template <Scalar T>
Channel<T> RandomChannel(Rng& rng, std::size_t inputs, std::size_t outputs,
                         double zero_probability = 0.0) {
  std::vector<std::vector<T>> rows;
  rows.reserve(inputs);
  for (std::size_t x = 0; x < inputs; ++x) {
    rows.push_back(RandomSimplexPoint<T>(rng, outputs, zero_probability));
  }
  return Channel<T>::FromRows(std::move(rows));
}

template <Scalar T>
Joint<T> RandomJoint(Rng& rng, std::size_t inputs, std::size_t outputs,
                     double zero_probability = 0.0) {
  return Joint<T>(RandomPmf<T>(rng, inputs),
                  RandomChannel<T>(rng, inputs, outputs, zero_probability));
}

inline std::size_t RandomSize(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace pmcleak

#endif  // PMCLEAK_SAMPLING_HPP_
