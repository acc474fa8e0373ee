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

#include "pmcleak/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <utility>

namespace pmcleak {
namespace {

template <Scalar T>
const T& MaxOf(std::span<const T> v) {
  return *std::max_element(v.begin(), v.end());
}

// 1 - max_u p(u), clamped at zero against rounding.
template <Scalar T>
T GuessError(std::span<const T> p) {
  T e = T(1) - MaxOf(p);
  if (e < 0) e = T(0);
  return e;
}

// All compositions of `total` into `parts` non-negative integers, in
// lexicographic order.
std::vector<std::vector<int>> Compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(parts, 0);
  auto rec = [&](auto&& self, int index, int remaining) -> void {
    if (index == parts - 1) {
      current[index] = remaining;
      out.push_back(current);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      current[index] = v;
      self(self, index + 1, remaining - v);
    }
  };
  rec(rec, 0, total);
  return out;
}

template <Scalar T>
std::vector<T> LatticeRow(const std::vector<int>& counts, int denominator) {
  std::vector<T> row;
  row.reserve(counts.size());
  for (int c : counts) row.push_back(T(c) / T(denominator));
  return row;
}

template <Scalar T>
std::vector<std::vector<T>> CopyRows(
    const std::vector<const std::vector<T>*>& rows) {
  std::vector<std::vector<T>> copy;
  copy.reserve(rows.size());
  for (const auto* r : rows) copy.push_back(*r);
  return copy;
}

// Pushes `dist` through the kernel given by `rows` into `out`.
template <Scalar T>
void Push(std::span<const T> dist,
          const std::vector<const std::vector<T>*>& rows, std::vector<T>& out) {
  std::fill(out.begin(), out.end(), T(0));
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (dist[x] == 0) continue;
    const auto& r = *rows[x];
    for (std::size_t u = 0; u < out.size(); ++u) {
      if (r[u] != 0) out[u] += dist[x] * r[u];
    }
  }
}

// Minimal expected guesswork sum_r r * p_(r), found by trying every order.
template <Scalar T>
T MinGuesswork(std::span<const T> p) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::optional<T> best;
  do {
    T g(0);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      g += T(static_cast<long>(rank + 1)) * p[order[rank]];
    }
    if (!best || g < *best) best = g;
  } while (std::next_permutation(order.begin(), order.end()));
  return *best;
}

// Walks the kernel family of OraclePmcRandomized and reports every kernel
// to `visit(rows, alphabet)`.
template <Scalar T, class Visit>
void ForEachKernel(std::size_t inputs, const SearchConfig& config,
                   Visit&& visit) {
  const int denominator = config.resolution - 1;
  std::mt19937_64 rng(config.seed);
  for (int alphabet = 2; alphabet <= config.max_alphabet; ++alphabet) {
    const auto comps = Compositions(denominator, alphabet);
    std::vector<std::vector<T>> lattice;
    lattice.reserve(comps.size());
    for (const auto& c : comps) lattice.push_back(LatticeRow<T>(c, denominator));
    std::vector<const std::vector<T>*> rows(inputs);

    if (static_cast<long>(inputs) * alphabet <= config.exhaustive_limit) {
      std::vector<std::size_t> idx(inputs, 0);
      while (true) {
        for (std::size_t x = 0; x < inputs; ++x) rows[x] = &lattice[idx[x]];
        visit(rows, static_cast<std::size_t>(alphabet));
        std::size_t pos = 0;
        while (pos < inputs && ++idx[pos] == lattice.size()) idx[pos++] = 0;
        if (pos == inputs) break;
      }
      continue;
    }

    std::uniform_int_distribution<std::size_t> pick(0, lattice.size() - 1);
    for (int s = 0; s < config.max_samples; ++s) {
      for (std::size_t x = 0; x < inputs; ++x) rows[x] = &lattice[pick(rng)];
      visit(rows, static_cast<std::size_t>(alphabet));
    }
    if (alphabet == 2 && inputs < 24) {
      // Deterministic binary kernels: the lattice vertices with |U| = 2.
      std::vector<T> zero_row{T(1), T(0)};
      std::vector<T> one_row{T(0), T(1)};
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inputs);
           ++mask) {
        for (std::size_t x = 0; x < inputs; ++x) {
          rows[x] = (mask >> x) & 1 ? &one_row : &zero_row;
        }
        visit(rows, 2);
      }
    }
  }
}

}  // namespace

void SearchConfig::Validate() const {
  if (resolution < 2) {
    throw Error(ErrorCode::kInvalidArgument, "grid resolution must be >= 2");
  }
  if (max_alphabet < 2) {
    throw Error(ErrorCode::kInvalidArgument, "max |U| must be >= 2");
  }
  if (max_samples < 1 || exhaustive_limit < 0) {
    throw Error(ErrorCode::kInvalidArgument, "search budget must be positive");
  }
}

template <Scalar T>
CostFunction<T> CostFunction<T>::FromRows(std::vector<std::vector<T>> rows) {
  if (rows.empty() || rows.front().empty()) {
    throw Error(ErrorCode::kEmptySupport, "cost table is empty");
  }
  const std::size_t actions = rows.front().size();
  std::vector<T> table;
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (rows[x].size() != actions) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "cost row " + std::to_string(x) + " has the wrong length");
    }
    for (std::size_t w = 0; w < actions; ++w) {
      if (!(rows[x][w] >= 0)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "cost(" + std::to_string(x) + ", " + std::to_string(w) +
                        ") must be non-negative");
      }
      table.push_back(rows[x][w]);
    }
  }
  return CostFunction(rows.size(), actions, std::move(table));
}

template <Scalar T>
std::vector<std::vector<T>> CostFunction<T>::rows() const {
  std::vector<std::vector<T>> out(inputs_);
  for (std::size_t x = 0; x < inputs_; ++x) {
    out[x].assign(table_.begin() + x * actions_,
                  table_.begin() + (x + 1) * actions_);
  }
  return out;
}

template <Scalar T>
LogRatio<T> LambdaU(const Joint<T>& joint, std::size_t y,
                    const RandomizedFunction<T>& u) {
  if (u.kernel.inputs() != joint.inputs()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "randomized function is defined on a different alphabet");
  }
  const auto prior_u = u.kernel.Apply(joint.prior().probabilities());
  const auto post_u = u.kernel.Apply(joint.posterior(y));
  return LogRatio<T>::Quotient(GuessError<T>(prior_u), GuessError<T>(post_u));
}

namespace {

// min_w sum_x c(x, w) p(x) with 0 * inf = 0. Returns nullopt when every
// action has infinite expected cost.
template <Scalar T>
std::optional<T> MinExpectedCost(const CostFunction<T>& cost,
                                 std::span<const T> p,
                                 std::size_t* argmin = nullptr) {
  std::optional<T> best;
  for (std::size_t w = 0; w < cost.actions(); ++w) {
    T total(0);
    bool finite = true;
    for (std::size_t x = 0; x < cost.inputs(); ++x) {
      if (p[x] == 0) continue;
      if constexpr (!kIsExact<T>) {
        if (std::isinf(cost(x, w))) {
          finite = false;
          break;
        }
      }
      total += cost(x, w) * p[x];
    }
    if (!finite) continue;
    if (!best || total < *best) {
      best = total;
      if (argmin) *argmin = w;
    }
  }
  return best;
}

}  // namespace

template <Scalar T>
LogRatio<T> LambdaCost(const Joint<T>& joint, std::size_t y,
                       const CostFunction<T>& cost) {
  if (cost.inputs() != joint.inputs()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cost function is defined on a different alphabet");
  }
  auto post = joint.posterior(y);
  auto prior_min = MinExpectedCost(cost, joint.prior().probabilities());
  if (!prior_min) {
    throw Error(ErrorCode::kAllInfinitePrior,
                "every action has infinite prior expected cost");
  }
  // The posterior is dominated by the prior, so some action stays finite.
  auto post_min = MinExpectedCost(cost, post);
  return LogRatio<T>::Quotient(*prior_min, *post_min);
}

template <Scalar T>
OracleSearchResult<T> OraclePmcRandomized(const Joint<T>& joint, std::size_t y,
                                          const SearchConfig& config) {
  config.Validate();
  const auto prior = joint.prior().probabilities();
  const auto post = joint.posterior(y);
  OracleSearchResult<T> result{
      LogRatio<T>(),
      RandomizedFunction<T>{Channel<T>::Constant(joint.inputs(), {T(1)})}, 0};
  std::vector<std::vector<T>> best_rows;
  std::vector<T> pu, pu_post;
  ForEachKernel<T>(
      joint.inputs(), config,
      [&](const std::vector<const std::vector<T>*>& rows, std::size_t alpha) {
        pu.resize(alpha);
        pu_post.resize(alpha);
        Push<T>(prior, rows, pu);
        Push<T>(post, rows, pu_post);
        auto value = LogRatio<T>::Quotient(GuessError<T>(pu),
                                           GuessError<T>(pu_post));
        ++result.kernels_evaluated;
        if (result.value < value) {
          result.value = std::move(value);
          best_rows = CopyRows<T>(rows);
        }
      });
  if (!best_rows.empty()) {
    result.witness = RandomizedFunction<T>{Channel<T>::FromRows(std::move(best_rows))};
  }
  return result;
}

template <Scalar T>
OracleSearchResult<T> GuessworkLeakageOracle(const Joint<T>& joint,
                                             std::size_t y,
                                             const SearchConfig& config) {
  config.Validate();
  const auto prior = joint.prior().probabilities();
  const auto post = joint.posterior(y);
  OracleSearchResult<T> result{
      LogRatio<T>(),
      RandomizedFunction<T>{Channel<T>::Constant(joint.inputs(), {T(1)})}, 0};
  std::vector<std::vector<T>> best_rows;
  std::vector<T> pu, pu_post;
  ForEachKernel<T>(
      joint.inputs(), config,
      [&](const std::vector<const std::vector<T>*>& rows, std::size_t alpha) {
        pu.resize(alpha);
        pu_post.resize(alpha);
        Push<T>(prior, rows, pu);
        Push<T>(post, rows, pu_post);
        auto value = LogRatio<T>::Quotient(MinGuesswork<T>(pu),
                                           MinGuesswork<T>(pu_post));
        ++result.kernels_evaluated;
        if (result.value < value) {
          result.value = std::move(value);
          best_rows = CopyRows<T>(rows);
        }
      });
  if (!best_rows.empty()) {
    result.witness = RandomizedFunction<T>{Channel<T>::FromRows(std::move(best_rows))};
  }
  return result;
}

namespace {

template <Scalar T>
bool SplitConditionsHold(const T& prior_mass, const T& post_mass,
                         std::size_t k) {
  // Symbol k+1 carries 1 - mass, each of the k others mass / k.
  const T kk(static_cast<long>(k));
  return prior_mass / kk <= T(1) - prior_mass &&
         post_mass / kk <= T(1) - post_mass;
}

constexpr std::size_t kMaxSplit = std::size_t{1} << 16;

}  // namespace

template <Scalar T>
std::size_t DefaultSplitK(const Joint<T>& joint, std::size_t y) {
  if (Pmc(joint, y).is_infinite()) {
    throw Error(ErrorCode::kUnboundedLeakage,
                "PMC is infinite at this outcome; use IndicatorWitness");
  }
  const std::size_t star = PmcWitness(joint, y);
  const T& p = joint.prior()[star];
  const T& q = joint.posterior(y)[star];
  for (std::size_t k = 2; k <= kMaxSplit; k *= 2) {
    if (SplitConditionsHold(p, q, k)) return k;
  }
  throw Error(ErrorCode::kBudgetExceeded,
              "split construction needs more than 65536 symbols");
}

template <Scalar T>
RandomizedFunction<T> ConstructOptimalU(const Joint<T>& joint, std::size_t y,
                                        std::size_t k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (k > kMaxSplit) {
    throw Error(ErrorCode::kBudgetExceeded, "k exceeds 65536");
  }
  if (Pmc(joint, y).is_infinite()) {
    throw Error(ErrorCode::kUnboundedLeakage,
                "PMC is infinite at this outcome; use IndicatorWitness");
  }
  const std::size_t star = PmcWitness(joint, y);
  if (!SplitConditionsHold(joint.prior()[star], joint.posterior(y)[star], k)) {
    throw Error(ErrorCode::kKTooSmall,
                "symbol k+1 is not the most likely one for k = " +
                    std::to_string(k));
  }
  std::vector<std::vector<T>> rows(joint.inputs(),
                                   std::vector<T>(k + 1, T(0)));
  for (std::size_t x = 0; x < joint.inputs(); ++x) {
    if (x == star) {
      for (std::size_t w = 0; w < k; ++w) {
        rows[x][w] = T(1) / T(static_cast<long>(k));
      }
    } else {
      rows[x][k] = T(1);
    }
  }
  return RandomizedFunction<T>{Channel<T>::FromRows(std::move(rows))};
}

template <Scalar T>
RandomizedFunction<T> IndicatorWitness(const Joint<T>& joint, std::size_t y) {
  auto post = joint.posterior(y);
  std::vector<std::vector<T>> rows;
  bool proper = false;
  for (std::size_t x = 0; x < post.size(); ++x) {
    if (post[x] > 0) {
      rows.push_back({T(1), T(0)});
    } else {
      proper = true;
      rows.push_back({T(1) / T(2), T(1) / T(2)});
    }
  }
  if (!proper) {
    throw Error(ErrorCode::kInvalidArgument,
                "posterior has full support; PMC is finite");
  }
  return RandomizedFunction<T>{Channel<T>::FromRows(std::move(rows))};
}

template <Scalar T>
CostFunction<T> CostFromU(const RandomizedFunction<T>& u) {
  auto rows = u.kernel.rows();
  for (auto& r : rows) {
    for (T& v : r) v = T(1) - v;
  }
  return CostFunction<T>::FromRows(std::move(rows));
}

template <Scalar T>
UFromCostResult<T> UFromCost(const CostFunction<T>& cost, const Joint<T>& joint,
                             std::size_t y, std::size_t k) {
  if (cost.inputs() != joint.inputs()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cost function is defined on a different alphabet");
  }
  T scale(0);
  for (std::size_t x = 0; x < cost.inputs(); ++x) {
    for (std::size_t w = 0; w < cost.actions(); ++w) {
      if constexpr (!kIsExact<T>) {
        if (std::isinf(cost(x, w))) {
          throw Error(ErrorCode::kInvalidArgument,
                      "cost must be finite to be normalized");
        }
      }
      if (scale < cost(x, w)) scale = cost(x, w);
    }
  }
  if (scale == 0) {
    throw Error(ErrorCode::kNormalizationDegenerate, "cost is identically 0");
  }
  auto rows = cost.rows();
  for (auto& r : rows) {
    for (T& v : r) v /= scale;
  }
  const auto normalized = CostFunction<T>::FromRows(std::move(rows));

  const auto prior = joint.prior().probabilities();
  const auto post = joint.posterior(y);
  std::size_t w_s = 0;
  std::size_t w_t = 0;
  const T prior_min = *MinExpectedCost(normalized, prior, &w_s);
  const T post_min = *MinExpectedCost(normalized, post, &w_t);

  UFromCostResult<T> result{
      RandomizedFunction<T>{Channel<T>::Constant(joint.inputs(), {T(1)})},
      T(0),
      0,
      false,
      LogRatio<T>(),
      LogRatio<T>::Quotient(prior_min, post_min)};

  if (result.lambda_cost.is_infinite()) {
    // c(., w_T) vanishes on the posterior support but not everywhere.
    std::vector<std::vector<T>> ind;
    for (std::size_t x = 0; x < post.size(); ++x) {
      if (post[x] > 0) {
        ind.push_back({T(1), T(0)});
      } else {
        ind.push_back({T(1) / T(2), T(1) / T(2)});
      }
    }
    result.u = RandomizedFunction<T>{Channel<T>::FromRows(std::move(ind))};
    result.infinite_branch = true;
    result.lambda_u = LambdaU(joint, y, result.u);
    return result;
  }

  auto mass = [&](std::span<const T> p, std::size_t w) {
    T m(0);
    for (std::size_t x = 0; x < p.size(); ++x) m += normalized(x, w) * p[x];
    return m;
  };
  const T prior_s = mass(prior, w_s);
  const T prior_t = mass(prior, w_t);
  const T post_s = mass(post, w_s);
  const T post_t = mass(post, w_t);

  if (k == 0) {
    k = 2;
    while (k < kMaxSplit && !(SplitConditionsHold(prior_s, post_s, k) &&
                              SplitConditionsHold(prior_t, post_t, k))) {
      k *= 2;
    }
  } else if (!(SplitConditionsHold(prior_s, post_s, k) &&
               SplitConditionsHold(prior_t, post_t, k))) {
    throw Error(ErrorCode::kKTooSmall,
                "symbol k+1 is not the most likely one for k = " +
                    std::to_string(k));
  }
  if (k > kMaxSplit) {
    throw Error(ErrorCode::kBudgetExceeded, "k exceeds 65536");
  }
  const T kk(static_cast<long>(k));

  // Lambda of U_delta for the finite k, from the two masses it induces.
  auto lambda_at = [&](const T& delta) {
    const T mp = delta * prior_s + (T(1) - delta) * prior_t;
    const T mq = delta * post_s + (T(1) - delta) * post_t;
    auto error = [&](const T& m) {
      const T top = T(1) - m;
      const T split = m / kk;
      T e = T(1) - (top < split ? split : top);
      if (e < 0) e = T(0);
      return e;
    };
    return LogRatio<T>::Quotient(error(mp), error(mq));
  };

  // lambda(0) >= lambda_c >= lambda(1); the map is continuous in delta.
  T lo(0);
  T hi(1);
  T delta(1);
  const auto& target = result.lambda_cost;
  if (lambda_at(hi) == target) {
    delta = hi;
  } else if (lambda_at(lo) == target) {
    delta = lo;
  } else {
    for (int i = 0; i < 60; ++i) {
      T mid = (lo + hi) / T(2);
      auto value = lambda_at(mid);
      if (value == target) {
        lo = hi = mid;
        break;
      }
      if (target < value) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double gap_lo = std::abs(lambda_at(lo).nats() - target.nats());
    const double gap_hi = std::abs(lambda_at(hi).nats() - target.nats());
    delta = gap_lo <= gap_hi ? lo : hi;
  }

  std::vector<std::vector<T>> kernel(joint.inputs(),
                                     std::vector<T>(k + 1, T(0)));
  for (std::size_t x = 0; x < joint.inputs(); ++x) {
    const T mix =
        delta * normalized(x, w_s) + (T(1) - delta) * normalized(x, w_t);
    for (std::size_t i = 0; i < k; ++i) kernel[x][i] = mix / kk;
    kernel[x][k] = T(1) - mix;
  }
  result.u = RandomizedFunction<T>{Channel<T>::FromRows(std::move(kernel))};
  result.delta = delta;
  result.k = k;
  result.lambda_u = LambdaU(joint, y, result.u);
  return result;
}

template <Scalar T>
double OracleCertificate<T>::gap() const {
  if (closed_form.is_infinite() && oracle_value.is_infinite()) return 0.0;
  return closed_form.nats() - oracle_value.nats();
}

template <Scalar T>
OracleCertificate<T> CertifyPmc(const Joint<T>& joint, std::size_t y,
                                const SearchConfig& config) {
  config.Validate();
  if (joint.inputs() * static_cast<std::size_t>(config.max_alphabet) > 64) {
    throw Error(ErrorCode::kBudgetExceeded,
                "|X| * max |U| = " +
                    std::to_string(joint.inputs() * config.max_alphabet) +
                    " exceeds 64");
  }
  const auto closed = Pmc(joint, y);
  auto grid = OraclePmcRandomized(joint, y, config);
  OracleCertificate<T> cert{closed,       grid.value,
                            grid.witness, "grid",
                            grid.kernels_evaluated, grid.value,
                            true};
  if constexpr (kIsExact<T>) {
    cert.dominance_holds = !(closed < grid.value);
  } else {
    cert.dominance_holds =
        closed.is_infinite() || grid.value.nats() <= closed.nats() + 1e-12;
  }
  if (closed == LogRatio<T>()) return cert;
  RandomizedFunction<T> explicit_u =
      closed.is_infinite()
          ? IndicatorWitness(joint, y)
          : ConstructOptimalU(joint, y, DefaultSplitK(joint, y));
  auto explicit_value = LambdaU(joint, y, explicit_u);
  if (cert.oracle_value <= explicit_value) {
    cert.oracle_value = std::move(explicit_value);
    cert.witness = std::move(explicit_u);
    cert.witness_source =
        closed.is_infinite() ? "indicator" : "construct_optimal_u";
  }
  return cert;
}

#define PMCLEAK_INSTANTIATE_ORACLES(T)                                        \
  template class CostFunction<T>;                                             \
  template LogRatio<T> LambdaU(const Joint<T>&, std::size_t,                  \
                               const RandomizedFunction<T>&);                 \
  template LogRatio<T> LambdaCost(const Joint<T>&, std::size_t,               \
                                  const CostFunction<T>&);                    \
  template OracleSearchResult<T> OraclePmcRandomized(                         \
      const Joint<T>&, std::size_t, const SearchConfig&);                     \
  template OracleSearchResult<T> GuessworkLeakageOracle(                      \
      const Joint<T>&, std::size_t, const SearchConfig&);                     \
  template std::size_t DefaultSplitK(const Joint<T>&, std::size_t);           \
  template RandomizedFunction<T> ConstructOptimalU(const Joint<T>&,           \
                                                   std::size_t, std::size_t); \
  template RandomizedFunction<T> IndicatorWitness(const Joint<T>&,            \
                                                  std::size_t);               \
  template CostFunction<T> CostFromU(const RandomizedFunction<T>&);           \
  template UFromCostResult<T> UFromCost(const CostFunction<T>&,               \
                                        const Joint<T>&, std::size_t,         \
                                        std::size_t);     \
  template struct OracleCertificate<T>;                                       \
  template OracleCertificate<T> CertifyPmc(const Joint<T>&, std::size_t,      \
                                           const SearchConfig&);

PMCLEAK_INSTANTIATE_ORACLES(double)
PMCLEAK_INSTANTIATE_ORACLES(Rational)

#undef PMCLEAK_INSTANTIATE_ORACLES

}  // namespace pmcleak
