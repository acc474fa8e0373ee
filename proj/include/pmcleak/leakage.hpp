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

// Leakage measures evaluated on a finite joint distribution: pointwise
// maximal cost (PMC), pointwise maximal leakage (PML), conditional PMC, the
// LIP/ALIP/LDP levels, maximal cost leakage and maximal realizable cost.
//
// Essential suprema over Y are maxima over the support of P_Y. Outcomes with
// P_Y(y) = 0 never contribute.

#ifndef PMCLEAK_LEAKAGE_HPP_
#define PMCLEAK_LEAKAGE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pmcleak/error.hpp"
#include "pmcleak/ext_real.hpp"
#include "pmcleak/probcore.hpp"

namespace pmcleak {

enum class GuaranteeKind { kPml, kPmc, kLip, kAlip, kLdp };

std::string_view GuaranteeKindName(GuaranteeKind kind);
std::optional<GuaranteeKind> ParseGuaranteeKind(std::string_view name);

// A privacy level. `epsilon` is the single parameter of PML/PMC/LIP/LDP and
// the lower-bound parameter epsilon_l of ALIP; `epsilon_upper` is only
// meaningful for ALIP.
struct Guarantee {
  GuaranteeKind kind = GuaranteeKind::kPml;
  ExtReal epsilon;
  ExtReal epsilon_upper;

  static Guarantee Of(GuaranteeKind kind, ExtReal epsilon) {
    return Guarantee{kind, epsilon, ExtReal()};
  }
  static Guarantee Alip(ExtReal epsilon_lower, ExtReal epsilon_upper) {
    return Guarantee{GuaranteeKind::kAlip, epsilon_lower, epsilon_upper};
  }

  friend bool operator==(const Guarantee&, const Guarantee&) = default;
};

std::string ToString(const Guarantee& g);

// Lambda(X -> y) = D_inf(P_X || P_{X|Y=y}) = -min_x i(x; y).
template <Scalar T>
LogRatio<T> Pmc(const Joint<T>& joint, std::size_t y) {
  return RenyiDivergenceInf<T>(joint.prior().probabilities(),
                               joint.posterior(y));
}

// l(X -> y) = D_inf(P_{X|Y=y} || P_X) = max_x i(x; y).
template <Scalar T>
LogRatio<T> Pml(const Joint<T>& joint, std::size_t y) {
  return RenyiDivergenceInf<T>(joint.posterior(y),
                               joint.prior().probabilities());
}

// The input attaining the PMC at y: argmax_x P_X(x) / P_{X|Y=y}(x), lowest
// index on ties. Inputs with zero posterior win outright.
template <Scalar T>
std::size_t PmcWitness(const Joint<T>& joint, std::size_t y) {
  auto post = joint.posterior(y);
  std::size_t best = 0;
  std::optional<LogRatio<T>> best_ratio;
  for (std::size_t x = 0; x < post.size(); ++x) {
    auto r = LogRatio<T>::Quotient(joint.prior()[x], post[x]);
    if (!best_ratio || *best_ratio < r) {
      best = x;
      best_ratio = std::move(r);
    }
  }
  return best;
}

// One slice z of a side-information family: the conditional prior P_{X|Z=z}
// (zeros allowed) and the mechanism P_{Y|X,Z=z}.
template <Scalar T>
struct ConditionalSlice {
  std::vector<T> prior;
  Channel<T> channel;
};

// Lambda(X -> y | z) = D_inf(P_{X|Z=z} || P_{X|Y=y,Z=z}).
template <Scalar T>
LogRatio<T> ConditionalPmc(std::span<const ConditionalSlice<T>> family,
                           std::size_t y, std::size_t z) {
  if (z >= family.size()) {
    throw Error(ErrorCode::kUndefinedOutcome,
                "side information " + std::to_string(z) + " out of range");
  }
  const auto& slice = family[z];
  if (slice.prior.size() != slice.channel.inputs()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "conditional prior and channel disagree on |X|");
  }
  if (y >= slice.channel.outputs()) {
    throw Error(ErrorCode::kUndefinedOutcome,
                "outcome " + std::to_string(y) + " out of range");
  }
  std::vector<T> post(slice.prior.size());
  T mass(0);
  for (std::size_t x = 0; x < post.size(); ++x) {
    post[x] = slice.prior[x] * slice.channel(x, y);
    mass += post[x];
  }
  if (mass == 0) {
    throw Error(ErrorCode::kUndefinedOutcome,
                "P(Y = y | Z = z) = 0 for y = " + std::to_string(y) +
                    ", z = " + std::to_string(z));
  }
  for (T& p : post) p /= mass;
  return RenyiDivergenceInf<T>(slice.prior, post);
}

template <Scalar T>
LogRatio<T> MaxPmc(const Joint<T>& joint) {
  LogRatio<T> best;
  for (std::size_t y : joint.support()) best = Max(best, Pmc(joint, y));
  return best;
}

template <Scalar T>
LogRatio<T> MaxPml(const Joint<T>& joint) {
  LogRatio<T> best;
  for (std::size_t y : joint.support()) best = Max(best, Pml(joint, y));
  return best;
}

// log max over y and input pairs (x, x') of P(y|x) / P(y|x'), with 0/0 = 1.
// The prior has full support, so every pair counts.
template <Scalar T>
LogRatio<T> LdpLevel(const Channel<T>& channel) {
  LogRatio<T> best;
  for (std::size_t y = 0; y < channel.outputs(); ++y) {
    const T* hi = nullptr;
    const T* lo = nullptr;
    for (std::size_t x = 0; x < channel.inputs(); ++x) {
      const T& v = channel(x, y);
      if (!hi || *hi < v) hi = &v;
      if (!lo || v < *lo) lo = &v;
    }
    best = Max(best, LogRatio<T>::Quotient(*hi, *lo));
    if (best.is_infinite()) break;
  }
  return best;
}

// L^c(X -> Y) = -log sum_y min_x P(y|x).
template <Scalar T>
LogRatio<T> MaxCostLeakage(const Joint<T>& joint) {
  const auto& ch = joint.channel();
  T total(0);
  for (std::size_t y = 0; y < ch.outputs(); ++y) {
    T lo = ch(0, y);
    for (std::size_t x = 1; x < ch.inputs(); ++x) {
      if (ch(x, y) < lo) lo = ch(x, y);
    }
    total += lo;
  }
  return LogRatio<T>::Quotient(T(1), total);
}

// L^rc(X -> Y) = D_inf(P_X x P_Y || P_XY) = max over the support of PMC.
template <Scalar T>
LogRatio<T> MaxRealizableCost(const Joint<T>& joint) {
  return MaxPmc(joint);
}

// E_{P_Y}[Lambda(X -> Y)] in nats; +inf if any outcome in the support has
// infinite PMC.
template <Scalar T>
double ExpectedPmc(const Joint<T>& joint) {
  double total = 0.0;
  for (std::size_t y : joint.support()) {
    total += ToDouble(joint.marginal(y)) * Pmc(joint, y).nats();
  }
  return total;
}

// Smallest level of the requested kind that the mechanism satisfies under
// the joint's prior. ALIP reports (max PMC, max PML); LIP the larger of the
// two.
template <Scalar T>
Guarantee GuaranteeLevel(const Joint<T>& joint, GuaranteeKind kind) {
  switch (kind) {
    case GuaranteeKind::kPml:
      return Guarantee::Of(kind, MaxPml(joint).ToExtReal());
    case GuaranteeKind::kPmc:
      return Guarantee::Of(kind, MaxPmc(joint).ToExtReal());
    case GuaranteeKind::kAlip:
      return Guarantee::Alip(MaxPmc(joint).ToExtReal(),
                             MaxPml(joint).ToExtReal());
    case GuaranteeKind::kLip:
      return Guarantee::Of(kind, Max(MaxPmc(joint), MaxPml(joint)).ToExtReal());
    case GuaranteeKind::kLdp:
      return Guarantee::Of(kind, LdpLevel(joint.channel()).ToExtReal());
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown guarantee kind");
}

template <Scalar T>
struct ProfileRow {
  std::size_t y;
  T marginal;
  LogRatio<T> pmc;
  LogRatio<T> pml;
};

// Per-outcome PMC and PML over the support of P_Y.
template <Scalar T>
std::vector<ProfileRow<T>> LeakageProfile(const Joint<T>& joint) {
  std::vector<ProfileRow<T>> rows;
  for (std::size_t y : joint.support()) {
    rows.push_back({y, joint.marginal(y), Pmc(joint, y), Pml(joint, y)});
  }
  return rows;
}

enum class DisplayUnit { kNats, kBits };

// CSV with header y,P_Y,pmc_nats,pml_nats,info_density_min,info_density_max.
// With kBits the four leakage columns are converted and suffixed "_bits".
// Infinite values render as "inf" / "-inf".
template <Scalar T>
std::string ProfileCsv(const std::vector<ProfileRow<T>>& rows,
                       DisplayUnit unit = DisplayUnit::kNats);

}  // namespace pmcleak

#endif  // PMCLEAK_LEAKAGE_HPP_
