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

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include "pmcleak/error.hpp"
#include "pmcleak/ext_real.hpp"
#include "pmcleak/leakage.hpp"
#include "pmcleak/scalar.hpp"

namespace pmcleak {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptySupport: return "EmptySupport";
    case ErrorCode::kZeroOrNegativeWeight: return "ZeroOrNegativeWeight";
    case ErrorCode::kNotStochastic: return "NotStochastic";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kUndefinedOutcome: return "UndefinedOutcome";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidPmin: return "InvalidPmin";
    case ErrorCode::kInvalidAlphabet: return "InvalidAlphabet";
    case ErrorCode::kOutsideHighPrivacy: return "OutsideHighPrivacy";
    case ErrorCode::kUnboundedLeakage: return "UnboundedLeakage";
    case ErrorCode::kKTooSmall: return "KTooSmall";
    case ErrorCode::kAllInfinitePrior: return "AllInfinitePrior";
    case ErrorCode::kNormalizationDegenerate: return "NormalizationDegenerate";
    case ErrorCode::kCgfUnavailable: return "CgfUnavailable";
    case ErrorCode::kSamplerUnavailable: return "SamplerUnavailable";
    case ErrorCode::kQuadratureFailure: return "QuadratureFailure";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

bool IsDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// Parses [-]digits[.digits][e[+-]digits] exactly.
Rational ParseDecimal(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    text = text.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part[0] == '-' || exp_part[0] == '+')) {
      exp_negative = exp_part[0] == '-';
      exp_part.remove_prefix(1);
    }
    if (!IsDigits(exp_part) || exp_part.size() > 6) {
      throw Error(ErrorCode::kParseError, "bad exponent in '" + original + "'");
    }
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if ((!int_part.empty() && !IsDigits(int_part)) ||
        (!frac_part.empty() && !IsDigits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      throw Error(ErrorCode::kParseError, "not a number: '" + original + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!IsDigits(text)) {
      throw Error(ErrorCode::kParseError, "not a number: '" + original + "'");
    }
    digits = std::string(text);
  }
  const auto first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  using Int = boost::multiprecision::mpz_int;
  Int numerator(digits);
  Int scale = boost::multiprecision::pow(Int(10), static_cast<unsigned>(
                                                      std::labs(exponent)));
  Rational value = exponent >= 0 ? Rational(numerator * scale)
                                 : Rational(numerator, scale);
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::kParseError, "empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = ParseDecimal(text.substr(0, slash));
    Rational den = ParseDecimal(text.substr(slash + 1));
    if (den == 0) {
      throw Error(ErrorCode::kParseError,
                  "zero denominator in '" + std::string(text) + "'");
    }
    return num / den;
  }
  return ParseDecimal(text);
}

Rational RationalFromShortestDecimal(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kParseError, "non-finite value has no rational form");
  }
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return ParseDecimal(std::string_view(buffer, result.ptr - buffer));
}

std::string ToString(const Rational& v) { return v.str(); }

ExtReal::ExtReal(double nats) {
  if (std::isnan(nats) || nats < -1e-9) {
    throw Error(ErrorCode::kInvalidArgument,
                "leakage level must be non-negative, got " + FormatNats(nats));
  }
  nats_ = nats < 0 ? 0.0 : nats;
}

std::string FormatNats(double nats) {
  if (std::isnan(nats)) return "nan";
  if (std::isinf(nats)) return nats > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", nats);
  return buffer;
}

std::string_view GuaranteeKindName(GuaranteeKind kind) {
  switch (kind) {
    case GuaranteeKind::kPml: return "PML";
    case GuaranteeKind::kPmc: return "PMC";
    case GuaranteeKind::kLip: return "LIP";
    case GuaranteeKind::kAlip: return "ALIP";
    case GuaranteeKind::kLdp: return "LDP";
  }
  return "?";
}

std::optional<GuaranteeKind> ParseGuaranteeKind(std::string_view name) {
  std::string upper;
  for (char c : name) upper.push_back(static_cast<char>(std::toupper(c)));
  for (auto kind : {GuaranteeKind::kPml, GuaranteeKind::kPmc,
                    GuaranteeKind::kLip, GuaranteeKind::kAlip,
                    GuaranteeKind::kLdp}) {
    if (upper == GuaranteeKindName(kind)) return kind;
  }
  return std::nullopt;
}

std::string ToString(const Guarantee& g) {
  std::string out(GuaranteeKindName(g.kind));
  out += "(" + FormatNats(g.epsilon.nats());
  if (g.kind == GuaranteeKind::kAlip) {
    out += ", " + FormatNats(g.epsilon_upper.nats());
  }
  return out + ")";
}

template <Scalar T>
std::string ProfileCsv(const std::vector<ProfileRow<T>>& rows,
                       DisplayUnit unit) {
  const bool bits = unit == DisplayUnit::kBits;
  const std::string suffix = bits ? "_bits" : "_nats";
  const double scale = bits ? 1.0 / std::log(2.0) : 1.0;
  std::ostringstream out;
  out << "y,P_Y,pmc" << suffix << ",pml" << suffix << ",info_density_min"
      << (bits ? "_bits" : "") << ",info_density_max" << (bits ? "_bits" : "")
      << "\n";
  for (const auto& r : rows) {
    const double pmc = r.pmc.nats() * scale;
    const double pml = r.pml.nats() * scale;
    out << r.y << "," << FormatNats(ToDouble(r.marginal)) << ","
        << FormatNats(pmc) << "," << FormatNats(pml) << ","
        << FormatNats(pmc == 0 ? 0.0 : -pmc) << "," << FormatNats(pml) << "\n";
  }
  return out.str();
}

template std::string ProfileCsv(const std::vector<ProfileRow<double>>&,
                                DisplayUnit);
template std::string ProfileCsv(const std::vector<ProfileRow<Rational>>&,
                                DisplayUnit);

}  // namespace pmcleak
