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

// Finite probability primitives: full-support priors, row-stochastic
// mechanisms, joints with cached marginal and posteriors, information density
// and the order-infinity Renyi divergence.

#ifndef PMCLEAK_PROBCORE_HPP_
#define PMCLEAK_PROBCORE_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pmcleak/error.hpp"
#include "pmcleak/ext_real.hpp"
#include "pmcleak/scalar.hpp"

namespace pmcleak {

namespace internal {

template <Scalar T>
T Sum(std::span<const T> v) {
  T s(0);
  for (const T& x : v) s += x;
  return s;
}

// Checks that a vector of non-negative entries sums to one and rescales it so
// that it does so exactly (floating point) or verifies exact equality
// (rational). `what` names the vector in diagnostics.
template <Scalar T>
void NormalizeStochastic(std::vector<T>& v, const std::string& what) {
  if (v.empty()) throw Error(ErrorCode::kEmptySupport, what + " is empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0) || !(v[i] <= 1)) {
      throw Error(ErrorCode::kNotStochastic,
                  what + "[" + std::to_string(i) + "] outside [0, 1]");
    }
  }
  const T total = Sum<T>(v);
  if constexpr (kIsExact<T>) {
    if (total != 1) {
      throw Error(ErrorCode::kNotStochastic,
                  what + " sums to " + ToString(total) + ", not 1");
    }
  } else {
    if (std::abs(total - 1.0) > kStochasticTolerance) {
      throw Error(ErrorCode::kNotStochastic,
                  what + " sums to " + std::to_string(total) + ", not 1");
    }
    for (T& x : v) x /= total;
  }
}

}  // namespace internal

// Probability mass function with full support.
template <Scalar T>
class Pmf {
 public:
  // Normalizes arbitrary strictly positive weights.
  static Pmf FromWeights(std::vector<T> weights) {
    if (weights.empty()) {
      throw Error(ErrorCode::kEmptySupport, "pmf needs at least one weight");
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (!(weights[i] > 0)) {
        throw Error(ErrorCode::kZeroOrNegativeWeight,
                    "weight " + std::to_string(i) +
                        " is not strictly positive (full support required)");
      }
    }
    const T total = internal::Sum<T>(weights);
    for (T& w : weights) w /= total;
    return Pmf(std::move(weights));
  }

  // Like FromWeights, but the input must already be a probability vector.
  static Pmf FromProbabilities(std::vector<T> probabilities) {
    if (probabilities.empty()) {
      throw Error(ErrorCode::kEmptySupport, "pmf needs at least one entry");
    }
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
      if (!(probabilities[i] > 0)) {
        throw Error(ErrorCode::kZeroOrNegativeWeight,
                    "prior[" + std::to_string(i) +
                        "] is not strictly positive (full support required)");
      }
    }
    internal::NormalizeStochastic(probabilities, "prior");
    return Pmf(std::move(probabilities));
  }

  static Pmf Uniform(std::size_t n) {
    return FromWeights(std::vector<T>(n, T(1)));
  }

  std::size_t size() const { return p_.size(); }
  const T& operator[](std::size_t i) const { return p_[i]; }
  std::span<const T> probabilities() const { return p_; }
  const T& min_probability() const { return p_min_; }

 private:
  explicit Pmf(std::vector<T> p)
      : p_(std::move(p)), p_min_(*std::min_element(p_.begin(), p_.end())) {}

  std::vector<T> p_;
  T p_min_;
};

// Row-stochastic matrix P_{Y|X}; entry (x, y) is the probability of output y
// given input x. Zero entries are allowed.
template <Scalar T>
class Channel {
 public:
  static Channel FromRows(std::vector<std::vector<T>> rows) {
    if (rows.empty()) {
      throw Error(ErrorCode::kEmptySupport, "channel has no rows");
    }
    const std::size_t outputs = rows.front().size();
    std::vector<T> data;
    data.reserve(rows.size() * outputs);
    for (std::size_t x = 0; x < rows.size(); ++x) {
      if (rows[x].size() != outputs) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "channel row " + std::to_string(x) + " has " +
                        std::to_string(rows[x].size()) + " entries, expected " +
                        std::to_string(outputs));
      }
      internal::NormalizeStochastic(rows[x],
                                    "channel[" + std::to_string(x) + "]");
      for (T& v : rows[x]) data.push_back(std::move(v));
    }
    return Channel(rows.size(), outputs, std::move(data));
  }

  static Channel Identity(std::size_t n) {
    std::vector<std::vector<T>> rows(n, std::vector<T>(n, T(0)));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = T(1);
    return FromRows(std::move(rows));
  }

  // Every row equal to `row`: the output is independent of the input.
  static Channel Constant(std::size_t inputs, const std::vector<T>& row) {
    return FromRows(std::vector<std::vector<T>>(inputs, row));
  }

  std::size_t inputs() const { return inputs_; }
  std::size_t outputs() const { return outputs_; }

  const T& operator()(std::size_t x, std::size_t y) const {
    return data_[x * outputs_ + y];
  }

  std::span<const T> row(std::size_t x) const {
    return std::span<const T>(data_).subspan(x * outputs_, outputs_);
  }

  std::vector<std::vector<T>> rows() const {
    std::vector<std::vector<T>> out;
    for (std::size_t x = 0; x < inputs_; ++x) {
      auto r = row(x);
      out.emplace_back(r.begin(), r.end());
    }
    return out;
  }

  // Runs this channel and then `next` on its output.
  Channel Then(const Channel& next) const {
    if (next.inputs_ != outputs_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "cannot compose channels: inner outputs " +
                      std::to_string(outputs_) + ", outer inputs " +
                      std::to_string(next.inputs_));
    }
    std::vector<T> data(inputs_ * next.outputs_, T(0));
    for (std::size_t x = 0; x < inputs_; ++x) {
      for (std::size_t y = 0; y < outputs_; ++y) {
        const T& a = (*this)(x, y);
        if (a == 0) continue;
        for (std::size_t z = 0; z < next.outputs_; ++z) {
          data[x * next.outputs_ + z] += a * next(y, z);
        }
      }
    }
    return Channel(inputs_, next.outputs_, std::move(data));
  }

  // Pushes a distribution over inputs through the channel.
  std::vector<T> Apply(std::span<const T> input) const {
    if (input.size() != inputs_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "distribution has " + std::to_string(input.size()) +
                      " entries, channel expects " + std::to_string(inputs_));
    }
    std::vector<T> out(outputs_, T(0));
    for (std::size_t x = 0; x < inputs_; ++x) {
      if (input[x] == 0) continue;
      for (std::size_t y = 0; y < outputs_; ++y) {
        out[y] += input[x] * (*this)(x, y);
      }
    }
    return out;
  }

 private:
  Channel(std::size_t inputs, std::size_t outputs, std::vector<T> data)
      : inputs_(inputs), outputs_(outputs), data_(std::move(data)) {}

  std::size_t inputs_;
  std::size_t outputs_;
  std::vector<T> data_;
};

// P_XY = P_X x P_{Y|X}, with P_Y and the posteriors P_{X|Y=y} cached.
// Posteriors exist only for outcomes in the support of P_Y.
template <Scalar T>
class Joint {
 public:
  Joint(Pmf<T> prior, Channel<T> channel)
      : prior_(std::move(prior)), channel_(std::move(channel)) {
    if (channel_.inputs() != prior_.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "prior has " + std::to_string(prior_.size()) +
                      " symbols but the channel has " +
                      std::to_string(channel_.inputs()) + " rows");
    }
    marginal_ = channel_.Apply(prior_.probabilities());
    posteriors_.resize(channel_.outputs());
    for (std::size_t y = 0; y < channel_.outputs(); ++y) {
      if (marginal_[y] == 0) continue;
      std::vector<T> post(prior_.size());
      for (std::size_t x = 0; x < prior_.size(); ++x) {
        post[x] = prior_[x] * channel_(x, y) / marginal_[y];
      }
      posteriors_[y] = std::move(post);
      support_.push_back(y);
    }
  }

  const Pmf<T>& prior() const { return prior_; }
  const Channel<T>& channel() const { return channel_; }
  std::size_t inputs() const { return channel_.inputs(); }
  std::size_t outputs() const { return channel_.outputs(); }

  std::span<const T> marginal() const { return marginal_; }
  const T& marginal(std::size_t y) const { return marginal_.at(y); }

  bool in_support(std::size_t y) const {
    return y < posteriors_.size() && posteriors_[y].has_value();
  }

  // Outcomes with P_Y(y) > 0, ascending.
  const std::vector<std::size_t>& support() const { return support_; }

  std::span<const T> posterior(std::size_t y) const {
    RequireOutcome(y);
    return *posteriors_[y];
  }

  void RequireOutcome(std::size_t y) const {
    if (y >= outputs()) {
      throw Error(ErrorCode::kUndefinedOutcome,
                  "outcome " + std::to_string(y) + " out of range");
    }
    if (!posteriors_[y]) {
      throw Error(ErrorCode::kUndefinedOutcome,
                  "outcome " + std::to_string(y) + " has P_Y(y) = 0");
    }
  }

 private:
  Pmf<T> prior_;
  Channel<T> channel_;
  std::vector<T> marginal_;
  std::vector<std::optional<std::vector<T>>> posteriors_;
  std::vector<std::size_t> support_;
};

// D_inf(P || Q) = log max_{w : P(w) > 0} P(w) / Q(w); +inf when P is not
// absolutely continuous with respect to Q.
template <Scalar T>
LogRatio<T> RenyiDivergenceInf(std::span<const T> p, std::span<const T> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "divergence arguments have " + std::to_string(p.size()) +
                    " and " + std::to_string(q.size()) + " entries");
  }
  if (p.empty()) throw Error(ErrorCode::kEmptySupport, "empty distribution");
  std::optional<LogRatio<T>> best;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    auto r = LogRatio<T>::Quotient(p[i], q[i]);
    if (r.is_infinite()) return r;
    if (!best || *best < r) best = std::move(r);
  }
  return best.value_or(LogRatio<T>());
}

// i(x; y) = log P_{Y|X=x}(y) / P_Y(y).
template <Scalar T>
LogRatio<T> InformationDensity(const Joint<T>& joint, std::size_t x,
                               std::size_t y) {
  joint.RequireOutcome(y);
  if (x >= joint.inputs()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "input " + std::to_string(x) + " out of range");
  }
  return LogRatio<T>::Quotient(joint.channel()(x, y), joint.marginal(y));
}

}  // namespace pmcleak

#endif  // PMCLEAK_PROBCORE_HPP_
