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

#ifndef PMCLEAK_EXT_REAL_HPP_
#define PMCLEAK_EXT_REAL_HPP_

#include <cmath>
#include <compare>
#include <limits>
#include <string>

#include "pmcleak/error.hpp"
#include "pmcleak/scalar.hpp"

namespace pmcleak {

// A value in [0, +inf], measured in nats. Privacy levels (epsilons) live here.
class ExtReal {
 public:
  constexpr ExtReal() = default;

  // Rounding residue down to -1e-9 is clamped to zero; anything more negative
  // is a caller bug.
  explicit ExtReal(double nats);

  static ExtReal Infinity() {
    ExtReal e;
    e.nats_ = std::numeric_limits<double>::infinity();
    return e;
  }

  bool is_finite() const { return std::isfinite(nats_); }
  bool is_infinite() const { return !is_finite(); }
  double nats() const { return nats_; }
  double bits() const { return nats_ / std::log(2.0); }

  ExtReal operator+(ExtReal other) const {
    ExtReal e;
    e.nats_ = nats_ + other.nats_;
    return e;
  }

  friend bool operator==(ExtReal a, ExtReal b) { return a.nats_ == b.nats_; }
  friend std::partial_ordering operator<=>(ExtReal a, ExtReal b) {
    return a.nats_ <=> b.nats_;
  }

 private:
  double nats_ = 0.0;
};

inline ExtReal Max(ExtReal a, ExtReal b) { return a < b ? b : a; }

// log(ratio) held as the ratio itself, so that exact backends keep equality
// checks exact. The ratio is a non-negative element of T or +inf; ratio 0 is
// log 0 = -inf. Addition in the log domain multiplies ratios.
template <Scalar T>
class LogRatio {
 public:
  // log 1 = 0.
  LogRatio() : ratio_(1) {}

  static LogRatio FromRatio(T ratio) {
    if (ratio < 0) {
      throw Error(ErrorCode::kInvalidArgument, "negative ratio");
    }
    LogRatio r;
    r.ratio_ = std::move(ratio);
    return r;
  }

  static LogRatio Infinity() {
    LogRatio r;
    r.infinite_ = true;
    return r;
  }

  static LogRatio NegativeInfinity() { return FromRatio(T(0)); }

  // log(num / den) under the conventions 0/0 = 1 and x/0 = +inf for x > 0.
  static LogRatio Quotient(const T& num, const T& den) {
    if (den == 0) return num == 0 ? LogRatio() : Infinity();
    return FromRatio(T(num / den));
  }

  bool is_infinite() const { return infinite_; }
  bool is_negative_infinite() const { return !infinite_ && ratio_ == 0; }
  bool is_finite() const { return !infinite_ && ratio_ != 0; }

  // Requires !is_infinite().
  const T& ratio() const {
    if (infinite_) throw Error(ErrorCode::kInvalidArgument, "ratio of +inf");
    return ratio_;
  }

  double nats() const {
    if (infinite_) return std::numeric_limits<double>::infinity();
    return std::log(ToDouble(ratio_));
  }

  // Non-negative view; requires nats() >= 0 up to rounding.
  ExtReal ToExtReal() const {
    return infinite_ ? ExtReal::Infinity() : ExtReal(nats());
  }

  LogRatio operator+(const LogRatio& other) const {
    if (infinite_ || other.infinite_) {
      if (is_negative_infinite() || other.is_negative_infinite()) {
        throw Error(ErrorCode::kInvalidArgument, "+inf + -inf is undefined");
      }
      return Infinity();
    }
    return FromRatio(T(ratio_ * other.ratio_));
  }

  LogRatio operator-() const {
    if (infinite_) return NegativeInfinity();
    if (ratio_ == 0) return Infinity();
    return FromRatio(T(T(1) / ratio_));
  }

  friend bool operator==(const LogRatio& a, const LogRatio& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.ratio_ == b.ratio_;
  }

  friend std::weak_ordering operator<=>(const LogRatio& a, const LogRatio& b) {
    if (a.infinite_ || b.infinite_) {
      if (a.infinite_ && b.infinite_) return std::weak_ordering::equivalent;
      return a.infinite_ ? std::weak_ordering::greater
                         : std::weak_ordering::less;
    }
    if (a.ratio_ < b.ratio_) return std::weak_ordering::less;
    if (b.ratio_ < a.ratio_) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }

 private:
  T ratio_;
  bool infinite_ = false;
};

template <Scalar T>
LogRatio<T> Max(const LogRatio<T>& a, const LogRatio<T>& b) {
  return a < b ? b : a;
}

// "inf", "-inf" or 17 significant digits.
std::string FormatNats(double nats);

}  // namespace pmcleak

#endif  // PMCLEAK_EXT_REAL_HPP_
