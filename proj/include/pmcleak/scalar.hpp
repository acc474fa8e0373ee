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

#ifndef PMCLEAK_SCALAR_HPP_
#define PMCLEAK_SCALAR_HPP_

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace pmcleak {

// Exact arithmetic backend used by the oracle equality checks.
using Rational = boost::multiprecision::mpq_rational;

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar T>
inline constexpr bool kIsExact = std::same_as<T, Rational>;

// Absolute tolerance used when validating stochastic vectors in floating
// point. Exact mode always demands equality.
inline constexpr double kStochasticTolerance = 1e-12;

inline double ToDouble(double v) { return v; }
inline double ToDouble(const Rational& v) { return v.convert_to<double>(); }

template <Scalar T>
T FromDouble(double v) {
  return T(v);
}

// Parses "3/4", "-2", "0.125" or "1e-3" into an exact rational. Decimal
// notation is read digit by digit, so "0.1" becomes exactly 1/10.
Rational ParseRational(std::string_view text);

// Shortest decimal representation of a double, read back as an exact
// rational. 0.1 maps to 1/10 rather than the binary expansion.
Rational RationalFromShortestDecimal(double v);

std::string ToString(const Rational& v);

}  // namespace pmcleak

#endif  // PMCLEAK_SCALAR_HPP_
