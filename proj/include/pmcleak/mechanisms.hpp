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

// The worked mechanisms: randomized response, the extremal mechanism, the
// Laplace mechanism releasing a sample mean, and additive Gaussian noise.

#ifndef PMCLEAK_MECHANISMS_HPP_
#define PMCLEAK_MECHANISMS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pmcleak/bounds.hpp"
#include "pmcleak/error.hpp"
#include "pmcleak/ext_real.hpp"
#include "pmcleak/probcore.hpp"

namespace pmcleak {

// Randomized response with e^{eps_r} = e: diagonal e/(n-1+e), off-diagonal
// 1/(n-1+e).
template <Scalar T>
Channel<T> RandomizedResponseRatio(std::size_t n, const T& e) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidAlphabet,
                "randomized response needs at least 2 symbols");
  }
  if (!(e >= 1)) {
    throw Error(ErrorCode::kInvalidArgument, "eps_r must be non-negative");
  }
  const T den = T(static_cast<long>(n - 1)) + e;
  std::vector<std::vector<T>> rows(n, std::vector<T>(n, T(T(1) / den)));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = T(e / den);
  return Channel<T>::FromRows(std::move(rows));
}

Channel<double> RandomizedResponse(std::size_t n, double eps_r);

// 1 + max_j P_X(j) (e - 1).
template <Scalar T>
T RrPmcRatio(std::size_t n, const T& e, const Pmf<T>& prior) {
  if (prior.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "prior has " + std::to_string(prior.size()) +
                    " symbols, mechanism has " + std::to_string(n));
  }
  auto p = prior.probabilities();
  const T& top = *std::max_element(p.begin(), p.end());
  return T(T(1) + top * (e - T(1)));
}

ExtReal RrPmc(std::size_t n, double eps_r, const Pmf<double>& prior);

// Extremal mechanism with e^{eps_u} = e: diagonal 1 - e (1 - P_X(i)),
// off-diagonal e P_X(j). Requires e (1 - p_min) < 1.
template <Scalar T>
Channel<T> ExtremalMechanismRatio(const Pmf<T>& prior, const T& e) {
  if (!(e >= 1)) {
    throw Error(ErrorCode::kInvalidArgument, "eps_u must be non-negative");
  }
  if (!(e * (T(1) - prior.min_probability()) < 1)) {
    throw Error(ErrorCode::kOutsideHighPrivacy,
                "eps_u must be below log 1/(1 - p_min)");
  }
  const std::size_t n = prior.size();
  std::vector<std::vector<T>> rows(n, std::vector<T>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rows[i][j] = i == j ? T(T(1) - e * (T(1) - prior[i])) : T(e * prior[j]);
    }
  }
  return Channel<T>::FromRows(std::move(rows));
}

Channel<double> ExtremalMechanism(const Pmf<double>& prior, double eps_u);

template <Scalar T>
T ExtremalPmcRatio(const Pmf<T>& prior, const T& e) {
  auto r = PmlToPmcRatio(e, prior.min_probability());
  if (!r) {
    throw Error(ErrorCode::kOutsideHighPrivacy,
                "eps_u must be below log 1/(1 - p_min)");
  }
  return *r;
}

double ExtremalPmc(const Pmf<double>& prior, double eps_u);

// A bounded input law on [lower, upper]. The cumulant generating function is
// centered: K(t) = log E[exp(t (X - mean))]. Missing callables make the
// operations that need them fail with kCgfUnavailable or kSamplerUnavailable.
struct InputLaw {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  double mean = 0.5;
  std::function<double(double)> density;
  std::function<double(double)> cgf;
  std::function<double(std::mt19937_64&)> sampler;

  static InputLaw Uniform(double lower, double upper);
  // Density proportional to exp(-rate (x - lower)) on [lower, upper];
  // rate may be negative but not zero.
  static InputLaw TruncatedExponential(double lower, double upper,
                                       double rate);

  double Cgf(double t) const;
  double Sample(std::mt19937_64& rng) const;
  void Validate() const;
};

// Y | X^n ~ Lap(mean of X^n, b); leakage is measured from one data point.
// The law must put mass arbitrarily close to both endpoints; otherwise the
// values below are upper bounds.
struct LaplaceMean {
  InputLaw law;
  int n = 1;
  double b = 1.0;

  void Validate() const;
};

struct PointEstimate {
  double value = 0.0;
  // Absolute error estimate (quadrature) or 95% half-width (Monte Carlo).
  double error = 0.0;
  std::string method;
};

// max{(mu - c)/(nb) + K(1/(nb)), (d - mu)/(nb) + K(-1/(nb))}.
double LaplaceMeanSupPmc(const LaplaceMean& m);

// Closed form on y >= d and y <= c; quadrature (n = 1) or Monte Carlo
// (n > 1) in between.
PointEstimate LaplacePmcAt(const LaplaceMean& m, double y,
                           std::uint64_t seed = 0,
                           std::size_t samples = 200000);

// log E[exp((D - |y - X|)/b)] with D the distance from y to the farther
// endpoint, by adaptive quadrature. n = 1 only.
PointEstimate LaplacePmcQuadrature(const LaplaceMean& m, double y);

// Y = X + N(0, sigma^2) with a zero-mean law on [-A, A].
struct GaussianPerturb {
  InputLaw law;
  double sigma = 1.0;

  double amplitude() const;
  void Validate() const;
};

struct PmcInterval {
  double lower;
  double upper;
};

// [A|y|/sigma^2, A(A + 4|y|)/(2 sigma^2)].
PmcInterval GaussianPmcBounds(double amplitude, double sigma, double y);

// log E[exp((D^2 - (y - X)^2)/(2 sigma^2))] with D = |y| + A. Uses the erfc
// closed form when the law is uniform on [-A, A], quadrature otherwise.
PointEstimate GaussianPmcAt(const GaussianPerturb& m, double y);

PointEstimate GaussianPmcQuadrature(const GaussianPerturb& m, double y);

double GaussianPmcUniform(double amplitude, double sigma, double y);

// min(1, 2 exp(-beta^2 / (8 (r^2 + r)))).
double GaussianTailBound(double r, double beta);

struct TailEstimate {
  double frequency = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

// Empirical P{Lambda(X -> Y) >= beta + A^2/(2 sigma^2)}.
TailEstimate GaussianTailFrequency(const GaussianPerturb& m, double beta,
                                   std::size_t samples, std::uint64_t seed);

}  // namespace pmcleak

#endif  // PMCLEAK_MECHANISMS_HPP_
