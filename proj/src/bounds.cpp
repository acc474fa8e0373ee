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

#include "pmcleak/bounds.hpp"

#include <cmath>
#include <sstream>

namespace pmcleak {
void ValidatePmin(double p_min) {
  if (!(p_min > 0.0) || !(p_min <= 1.0)) {
    throw Error(ErrorCode::kInvalidPmin,
                "p_min must lie in (0, 1], got " + FormatNats(p_min));
  }
}

double HighPrivacyBoundary(double p_min) {
  ValidatePmin(p_min);
  return -std::log1p(-p_min);
}

namespace {

constexpr double kBoundarySlack = 1e-12;

}  // namespace

ExtReal PmlToPmc(ExtReal eps_u, double p_min) {
  ValidatePmin(p_min);
  if (eps_u.is_infinite()) return ExtReal::Infinity();
  if (p_min == 1.0) return ExtReal(0.0);
  // 1 - e^eps (1 - p) written to keep precision near eps = 0.
  const double den = -std::expm1(eps_u.nats() + std::log1p(-p_min));
  // Levels within rounding of the boundary are treated as on it.
  if (!(den > kBoundarySlack)) return ExtReal::Infinity();
  return ExtReal(std::log(p_min) - std::log(den));
}

ExtReal PmcToPml(ExtReal eps_l, double p_min) {
  ValidatePmin(p_min);
  if (eps_l.is_infinite()) return ExtReal(-std::log(p_min));
  const double num = -std::expm1(-eps_l.nats() + std::log1p(-p_min));
  return ExtReal(std::log(num) - std::log(p_min));
}

ContextLevels LdpToContext(ExtReal eps, double p_min) {
  ValidatePmin(p_min);
  if (eps.is_infinite()) {
    return {p_min == 1.0 ? ExtReal(0.0) : ExtReal::Infinity(),
            ExtReal(-std::log(p_min))};
  }
  const double e = eps.nats();
  // p + e^eps (1 - p) = 1 + (1 - p) expm1(eps).
  const double eps1 = std::log1p((1.0 - p_min) * std::expm1(e));
  const double eps2 = -std::log1p((1.0 - p_min) * std::expm1(-e));
  return {ExtReal(eps1), ExtReal(eps2)};
}

ExtReal LdpToPmc(ExtReal eps, double p_min) {
  return LdpToContext(eps, p_min).eps1;
}

TranslationResult DeriveImplications(const Guarantee& g, double p_min) {
  ValidatePmin(p_min);
  TranslationResult result{g, {}, p_min, true};
  auto& out = result.implied;
  auto add_pair = [&](ExtReal lower, ExtReal upper) {
    out.push_back(Guarantee::Alip(lower, upper));
    out.push_back(Guarantee::Of(GuaranteeKind::kLip, Max(lower, upper)));
    out.push_back(Guarantee::Of(GuaranteeKind::kLdp, lower + upper));
  };
  switch (g.kind) {
    case GuaranteeKind::kPml: {
      const ExtReal eps_l = PmlToPmc(g.epsilon, p_min);
      result.high_privacy = eps_l.is_finite();
      out.push_back(Guarantee::Of(GuaranteeKind::kPmc, eps_l));
      add_pair(eps_l, g.epsilon);
      break;
    }
    case GuaranteeKind::kPmc: {
      const ExtReal eps_u = PmcToPml(g.epsilon, p_min);
      out.push_back(Guarantee::Of(GuaranteeKind::kPml, eps_u));
      add_pair(g.epsilon, eps_u);
      break;
    }
    case GuaranteeKind::kLdp: {
      const ContextLevels c = LdpToContext(g.epsilon, p_min);
      out.push_back(Guarantee::Of(GuaranteeKind::kLip, c.eps1));
      out.push_back(Guarantee::Alip(c.eps1, c.eps2));
      out.push_back(Guarantee::Of(GuaranteeKind::kPml, c.eps2));
      out.push_back(
          Guarantee::Of(GuaranteeKind::kPmc, LdpToPmc(g.epsilon, p_min)));
      break;
    }
    case GuaranteeKind::kLip:
      out.push_back(Guarantee::Alip(g.epsilon, g.epsilon));
      out.push_back(Guarantee::Of(GuaranteeKind::kPml, g.epsilon));
      out.push_back(Guarantee::Of(GuaranteeKind::kPmc, g.epsilon));
      out.push_back(Guarantee::Of(GuaranteeKind::kLdp, g.epsilon + g.epsilon));
      break;
    case GuaranteeKind::kAlip:
      out.push_back(Guarantee::Of(GuaranteeKind::kPml, g.epsilon_upper));
      out.push_back(Guarantee::Of(GuaranteeKind::kPmc, g.epsilon));
      out.push_back(
          Guarantee::Of(GuaranteeKind::kLdp, g.epsilon + g.epsilon_upper));
      break;
  }
  return result;
}

CurveTable SweepCurves(double p_min, std::size_t steps, double eps_l_max) {
  ValidatePmin(p_min);
  if (steps < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a sweep needs at least 2 steps");
  }
  if (!(eps_l_max > 0.0) || !std::isfinite(eps_l_max)) {
    throw Error(ErrorCode::kInvalidArgument, "eps_l range must be positive");
  }
  CurveTable table;
  table.p_min = p_min;
  const double boundary = HighPrivacyBoundary(p_min);
  const double eps_u_max =
      std::isfinite(boundary) ? boundary * (1.0 - 1e-6) : eps_l_max;
  const double last = static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / last;
    const double eps_u = t * eps_u_max;
    table.upper.push_back({eps_u, PmlToPmc(ExtReal(eps_u), p_min)});
    const double eps_l = t * eps_l_max;
    table.lower.push_back({eps_l, PmcToPml(ExtReal(eps_l), p_min)});
  }
  return table;
}

std::pair<std::string, std::string> CurveCsv(const CurveTable& table,
                                             DisplayUnit unit) {
  const bool bits = unit == DisplayUnit::kBits;
  const double scale = bits ? 1.0 / std::log(2.0) : 1.0;
  const std::string suffix = bits ? "_bits" : "";
  auto render = [&](const std::vector<CurvePoint>& rows, const char* x,
                    const char* y) {
    std::ostringstream out;
    out << x << suffix << "," << y << suffix << "\n";
    for (const auto& r : rows) {
      out << FormatNats(r.eps * scale) << ","
          << FormatNats(r.eps_star.nats() * scale) << "\n";
    }
    return out.str();
  };
  return {render(table.upper, "eps_u", "eps_l_star"),
          render(table.lower, "eps_l", "eps_u_star")};
}

}  // namespace pmcleak
