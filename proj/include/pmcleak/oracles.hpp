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

// Brute-force adversary models used to certify the closed forms on small
// instances: the randomized-function model, the cost-function model and
// guesswork, together with the explicit constructions that attain the
// supremum in each.

#ifndef PMCLEAK_ORACLES_HPP_
#define PMCLEAK_ORACLES_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pmcleak/ext_real.hpp"
#include "pmcleak/leakage.hpp"
#include "pmcleak/probcore.hpp"

namespace pmcleak {

// A randomized function U of the secret, given by its kernel P_{U|X}.
template <Scalar T>
struct RandomizedFunction {
  Channel<T> kernel;

  std::size_t alphabet_size() const { return kernel.outputs(); }
};

// Non-negative cost table c(x, w) over secrets x and actions w. In floating
// point mode entries may be +inf.
template <Scalar T>
class CostFunction {
 public:
  static CostFunction FromRows(std::vector<std::vector<T>> rows);

  std::size_t inputs() const { return inputs_; }
  std::size_t actions() const { return actions_; }
  const T& operator()(std::size_t x, std::size_t w) const {
    return table_[x * actions_ + w];
  }
  std::vector<std::vector<T>> rows() const;

 private:
  CostFunction(std::size_t inputs, std::size_t actions, std::vector<T> table)
      : inputs_(inputs), actions_(actions), table_(std::move(table)) {}

  std::size_t inputs_;
  std::size_t actions_;
  std::vector<T> table_;
};

struct SearchConfig {
  // Kernel rows are drawn from the simplex lattice with denominator
  // resolution - 1.
  int resolution = 11;
  // Largest alphabet |U| searched.
  int max_alphabet = 3;
  // Enumeration is exhaustive while |X| * |U| stays within this limit.
  int exhaustive_limit = 9;
  // Kernels drawn per alphabet size beyond the exhaustive limit.
  int max_samples = 20000;
  std::uint64_t seed = 0;

  void Validate() const;
};

template <Scalar T>
struct OracleSearchResult {
  LogRatio<T> value;
  RandomizedFunction<T> witness;
  std::size_t kernels_evaluated = 0;
};

// Lambda_U(X -> y) = log (1 - max_u P_U(u)) / (1 - max_u P_{U|Y=y}(u)).
template <Scalar T>
LogRatio<T> LambdaU(const Joint<T>& joint, std::size_t y,
                    const RandomizedFunction<T>& u);

// Lambda_c(X -> y) = log min_w E[c(X, w)] / min_w E[c(X, w) | Y = y].
template <Scalar T>
LogRatio<T> LambdaCost(const Joint<T>& joint, std::size_t y,
                       const CostFunction<T>& cost);

// Largest Lambda_U over the kernel lattice with 2 <= |U| <= max_alphabet.
// Beyond the exhaustive limit kernels are sampled (seeded) and every
// deterministic binary kernel is added, so indicator witnesses are always
// covered.
template <Scalar T>
OracleSearchResult<T> OraclePmcRandomized(const Joint<T>& joint, std::size_t y,
                                          const SearchConfig& config);

// Largest log ratio of prior to posterior minimal guesswork over the same
// kernel family, with the guessing orders enumerated explicitly.
template <Scalar T>
OracleSearchResult<T> GuessworkLeakageOracle(const Joint<T>& joint,
                                             std::size_t y,
                                             const SearchConfig& config);

// Smallest power of two k >= 2 such that the (k+1)-th symbol of the
// achievability construction is the most likely one a priori and a
// posteriori. Requires finite PMC at y.
template <Scalar T>
std::size_t DefaultSplitK(const Joint<T>& joint, std::size_t y);

// The (k+1)-symbol randomized function W: inputs other than the PMC witness
// x* map to symbol k+1, x* is spread uniformly over symbols 1..k. Attains
// Lambda_W = PMC exactly once k passes DefaultSplitK. Throws kKTooSmall if
// the maximality conditions fail for the given k and kUnboundedLeakage if
// the PMC at y is infinite.
template <Scalar T>
RandomizedFunction<T> ConstructOptimalU(const Joint<T>& joint, std::size_t y,
                                        std::size_t k);

// Binary witness for infinite PMC: inputs in the posterior support map to
// symbol 0, the rest split evenly. Requires a zero posterior entry.
template <Scalar T>
RandomizedFunction<T> IndicatorWitness(const Joint<T>& joint, std::size_t y);

// c_U(x, u) = 1 - P_{U|X=x}(u).
template <Scalar T>
CostFunction<T> CostFromU(const RandomizedFunction<T>& u);

template <Scalar T>
struct UFromCostResult {
  RandomizedFunction<T> u;
  // Mixture weight on S (the prior-optimal action); unused on the infinite
  // branch.
  T delta;
  std::size_t k = 0;
  bool infinite_branch = false;
  LogRatio<T> lambda_u;
  LogRatio<T> lambda_cost;
};

// Builds U_delta, the mixture of the prior-optimal and posterior-optimal
// split functions, and bisects (60 steps) on delta until Lambda_U meets
// Lambda_c. Costs are rescaled by their largest entry first. k = 0 picks the
// split size automatically.
template <Scalar T>
UFromCostResult<T> UFromCost(const CostFunction<T>& cost, const Joint<T>& joint,
                             std::size_t y, std::size_t k = 0);

template <Scalar T>
struct OracleCertificate {
  LogRatio<T> closed_form;
  LogRatio<T> oracle_value;
  RandomizedFunction<T> witness;
  // "construct_optimal_u", "indicator" or "grid".
  std::string witness_source;
  std::size_t kernels_evaluated = 0;
  // Largest lambda found by the grid search alone; must not exceed the
  // closed form.
  LogRatio<T> grid_value;
  bool dominance_holds = true;

  // closed_form - oracle_value in nats; 0 when both are infinite.
  double gap() const;
};

// Runs the grid search and the explicit achievability construction at y.
// Fails with kBudgetExceeded when |X| * max |U| exceeds 64.
template <Scalar T>
OracleCertificate<T> CertifyPmc(const Joint<T>& joint, std::size_t y,
                                const SearchConfig& config);

}  // namespace pmcleak

#endif  // PMCLEAK_ORACLES_HPP_
