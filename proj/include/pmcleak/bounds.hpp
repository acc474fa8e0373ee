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

// Translation between PML, PMC, LIP, ALIP and LDP guarantees for finite
// secrets, parameterized by the smallest prior mass p_min.
//
// Scalar maps come in two forms: double-valued functions of epsilon in nats,
// and ratio-valued templates taking e^epsilon so that exact checks can run
// on rationals.

#ifndef PMCLEAK_BOUNDS_HPP_
#define PMCLEAK_BOUNDS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmcleak/error.hpp"
#include "pmcleak/ext_real.hpp"
#include "pmcleak/leakage.hpp"
#include "pmcleak/probcore.hpp"

namespace pmcleak {

void ValidatePmin(double p_min);

// log 1/(1 - p_min): the supremum of PML levels that translate to finite PMC.
double HighPrivacyBoundary(double p_min);

// log[p_min / (1 - e^eps_u (1 - p_min))], +inf at or beyond the boundary.
ExtReal PmlToPmc(ExtReal eps_u, double p_min);

// log[(1 - e^{-eps_l} (1 - p_min)) / p_min]; finite even for eps_l = +inf.
ExtReal PmcToPml(ExtReal eps_l, double p_min);

struct ContextLevels {
  ExtReal eps1;  // LIP level and ALIP lower parameter
  ExtReal eps2;  // PML level and ALIP upper parameter
};

// eps1 = log(p_min + e^eps (1 - p_min)), eps2 = -log(p_min + e^-eps (1 - p_min)).
ContextLevels LdpToContext(ExtReal eps, double p_min);

// log(e^eps - p_min (e^eps - 1)).
ExtReal LdpToPmc(ExtReal eps, double p_min);

template <Scalar T>
void ValidatePminRatio(const T& p_min) {
  if (!(p_min > 0) || !(p_min <= 1)) {
    throw Error(ErrorCode::kInvalidPmin, "p_min must lie in (0, 1]");
  }
}

// Ratio forms. `e` is e^epsilon. PmlToPmcRatio returns nullopt for +inf.
template <Scalar T>
std::optional<T> PmlToPmcRatio(const T& e, const T& p_min) {
  ValidatePminRatio(p_min);
  const T den = T(1) - e * (T(1) - p_min);
  if (!(den > 0)) return std::nullopt;
  return T(p_min / den);
}

template <Scalar T>
T PmcToPmlRatio(const T& e, const T& p_min) {
  ValidatePminRatio(p_min);
  return T((T(1) - (T(1) - p_min) / e) / p_min);
}

template <Scalar T>
T LdpToPmcRatio(const T& e, const T& p_min) {
  ValidatePminRatio(p_min);
  return T(e - p_min * (e - T(1)));
}

template <Scalar T>
std::pair<T, T> LdpToContextRatio(const T& e, const T& p_min) {
  ValidatePminRatio(p_min);
  return {T(p_min + e * (T(1) - p_min)),
          T(T(1) / (p_min + (T(1) - p_min) / e))};
}

struct TranslationResult {
  Guarantee source;
  std::vector<Guarantee> implied;
  double p_min = 1.0;
  // False when a PML to PMC step left the high-privacy regime.
  bool high_privacy = true;
};

TranslationResult DeriveImplications(const Guarantee& g, double p_min);

template <Scalar T>
TranslationResult DeriveImplications(const Guarantee& g, const Pmf<T>& prior) {
  return DeriveImplications(g, ToDouble(prior.min_probability()));
}

struct CurvePoint {
  double eps;
  ExtReal eps_star;
};

struct CurveTable {
  double p_min = 0.0;
  // (eps_u, eps_l_star) over [0, boundary).
  std::vector<CurvePoint> upper;
  // (eps_l, eps_u_star) over [0, eps_l_max].
  std::vector<CurvePoint> lower;
};

// The upper grid stops a relative 1e-6 short of the high-privacy boundary.
CurveTable SweepCurves(double p_min, std::size_t steps,
                       double eps_l_max = 3.0);

// CSV for the upper and lower curves, in that order.
std::pair<std::string, std::string> CurveCsv(const CurveTable& table,
                                             DisplayUnit unit);

// [max PMC finite] == [LDP finite], and finite PMC implies finite PML.
template <Scalar T>
bool VerifyBoundednessEquivalence(const Joint<T>& joint) {
  const bool pmc_finite = !MaxPmc(joint).is_infinite();
  const bool ldp_finite = !LdpLevel(joint.channel()).is_infinite();
  const bool pml_finite = !MaxPml(joint).is_infinite();
  return pmc_finite == ldp_finite && (!pmc_finite || pml_finite);
}

}  // namespace pmcleak

#endif  // PMCLEAK_BOUNDS_HPP_
