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

#include "pmcleak/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace pmcleak {
namespace {

constexpr double kQuadratureRelTol = 1e-6;
constexpr double kMonteCarloHalfWidth = 1e-2;

// log(sinh(s)/s), stable for small and large |s|.
double LogSinhc(double s) {
  const double a = std::abs(s);
  if (a < 1e-4) return a * a / 6.0;
  return a + std::log(-std::expm1(-2.0 * a) / (2.0 * a));
}

struct Integral {
  double value;
  double error;
};

template <class F>
Integral Integrate(F f, double a, double b) {
  if (!(a < b)) return {0.0, 0.0};
  double error = 0.0;
  double l1 = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          f, a, b, 15, 1e-12, &error, &l1);
  return {value, error};
}

// Splits [a, b] at the interior kinks before integrating.
template <class F>
Integral IntegratePieces(F f, double a, double b, std::vector<double> kinks) {
  std::vector<double> points{a};
  std::sort(kinks.begin(), kinks.end());
  for (double k : kinks) {
    if (k > a && k < b) points.push_back(k);
  }
  points.push_back(b);
  Integral total{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const Integral piece = Integrate(f, points[i], points[i + 1]);
    total.value += piece.value;
    total.error += piece.error;
  }
  return total;
}

PointEstimate LogOfIntegral(const Integral& r, const char* what) {
  if (!(r.value > 0.0) || !std::isfinite(r.value)) {
    throw Error(ErrorCode::kQuadratureFailure,
                std::string(what) + ": integral is not positive");
  }
  const double rel = r.error / r.value;
  if (rel > kQuadratureRelTol) {
    throw Error(ErrorCode::kQuadratureFailure,
                std::string(what) + ": relative error " + FormatNats(rel) +
                    " exceeds 1e-6");
  }
  // d log(v) = dv / v.
  return {std::log(r.value), rel, "quadrature"};
}

}  // namespace

Channel<double> RandomizedResponse(std::size_t n, double eps_r) {
  if (!(eps_r >= 0.0) || !std::isfinite(eps_r)) {
    throw Error(ErrorCode::kInvalidArgument,
                "eps_r must be finite and non-negative");
  }
  return RandomizedResponseRatio<double>(n, std::exp(eps_r));
}

ExtReal RrPmc(std::size_t n, double eps_r, const Pmf<double>& prior) {
  if (!(eps_r >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "eps_r must be non-negative");
  }
  if (prior.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "prior has " + std::to_string(prior.size()) +
                    " symbols, mechanism has " + std::to_string(n));
  }
  auto p = prior.probabilities();
  const double top = *std::max_element(p.begin(), p.end());
  return ExtReal(std::log1p(top * std::expm1(eps_r)));
}

Channel<double> ExtremalMechanism(const Pmf<double>& prior, double eps_u) {
  if (!(eps_u >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "eps_u must be non-negative");
  }
  if (!(eps_u < HighPrivacyBoundary(ToDouble(prior.min_probability())))) {
    throw Error(ErrorCode::kOutsideHighPrivacy,
                "eps_u must be below log 1/(1 - p_min)");
  }
  return ExtremalMechanismRatio<double>(prior, std::exp(eps_u));
}

double ExtremalPmc(const Pmf<double>& prior, double eps_u) {
  const double p_min = prior.min_probability();
  if (!(eps_u >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "eps_u must be non-negative");
  }
  if (!(eps_u < HighPrivacyBoundary(p_min))) {
    throw Error(ErrorCode::kOutsideHighPrivacy,
                "eps_u must be below log 1/(1 - p_min)");
  }
  return PmlToPmc(ExtReal(eps_u), p_min).nats();
}

InputLaw InputLaw::Uniform(double lower, double upper) {
  InputLaw law;
  law.name = "uniform";
  law.lower = lower;
  law.upper = upper;
  law.mean = 0.5 * (lower + upper);
  const double width = upper - lower;
  law.density = [width](double) { return 1.0 / width; };
  law.cgf = [width](double t) { return LogSinhc(0.5 * t * width); };
  law.sampler = [lower, upper](std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(lower, upper)(rng);
  };
  law.Validate();
  return law;
}

InputLaw InputLaw::TruncatedExponential(double lower, double upper,
                                        double rate) {
  if (!(rate != 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::kInvalidArgument, "rate must be finite and nonzero");
  }
  InputLaw law;
  law.name = "truncated_exponential";
  law.lower = lower;
  law.upper = upper;
  const double w = upper - lower;
  // Z = -expm1(-rate w) normalizes rate exp(-rate (x - lower)).
  const double z = -std::expm1(-rate * w);
  law.mean = lower + 1.0 / rate - w * std::exp(-rate * w) / z;
  law.density = [lower, rate, z](double x) {
    return rate * std::exp(-rate * (x - lower)) / z;
  };
  const double mean = law.mean;
  law.cgf = [lower, w, rate, z, mean](double t) {
    // E exp(tX) = exp(t lower) rate (1 - exp((t - rate) w)) / ((rate - t) Z).
    const double gap = rate - t;
    const double factor =
        std::abs(gap) < 1e-12 ? w : -std::expm1(-gap * w) / gap;
    return t * (lower - mean) + std::log(rate * factor / z);
  };
  law.sampler = [lower, rate, z](std::mt19937_64& rng) {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return lower - std::log1p(-u * z) / rate;
  };
  law.Validate();
  return law;
}

double InputLaw::Cgf(double t) const {
  if (!cgf) {
    throw Error(ErrorCode::kCgfUnavailable,
                "input law '" + name + "' has no cumulant generating function");
  }
  return cgf(t);
}

double InputLaw::Sample(std::mt19937_64& rng) const {
  if (!sampler) {
    throw Error(ErrorCode::kSamplerUnavailable,
                "input law '" + name + "' has no sampler");
  }
  return sampler(rng);
}

void InputLaw::Validate() const {
  if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw Error(ErrorCode::kInvalidArgument,
                "input law needs a finite interval with lower < upper");
  }
  if (!(mean >= lower && mean <= upper)) {
    throw Error(ErrorCode::kInvalidArgument, "mean lies outside the support");
  }
}

void LaplaceMean::Validate() const {
  law.Validate();
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw Error(ErrorCode::kInvalidArgument, "scale b must be positive");
  }
}

double LaplaceMeanSupPmc(const LaplaceMean& m) {
  m.Validate();
  const double nb = m.n * m.b;
  const double c = m.law.lower;
  const double d = m.law.upper;
  const double mu = m.law.mean;
  if (m.law.name == "uniform") {
    // log[nb/(d-c) (e^{(d-c)/(nb)} - 1)].
    const double s = (d - c) / nb;
    return std::log(std::expm1(s) / s);
  }
  const double right = (mu - c) / nb + m.law.Cgf(1.0 / nb);
  const double left = (d - mu) / nb + m.law.Cgf(-1.0 / nb);
  return std::max(right, left);
}

PointEstimate LaplacePmcQuadrature(const LaplaceMean& m, double y) {
  m.Validate();
  if (m.n != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "quadrature evaluation covers n = 1 only");
  }
  if (!m.law.density) {
    throw Error(ErrorCode::kInvalidArgument,
                "input law '" + m.law.name + "' has no density");
  }
  const double c = m.law.lower;
  const double d = m.law.upper;
  const double far = std::max(std::abs(y - c), std::abs(y - d));
  auto f = [&](double x) {
    return m.law.density(x) * std::exp((far - std::abs(y - x)) / m.b);
  };
  return LogOfIntegral(IntegratePieces(f, c, d, {y}), "Laplace PMC");
}

PointEstimate LaplacePmcAt(const LaplaceMean& m, double y, std::uint64_t seed,
                           std::size_t samples) {
  m.Validate();
  const double nb = m.n * m.b;
  const double c = m.law.lower;
  const double d = m.law.upper;
  const double mu = m.law.mean;
  if (y >= d || y <= c) {
    double value = 0.0;
    if (m.law.name == "uniform") {
      value = LaplaceMeanSupPmc(m);
    } else if (y >= d) {
      value = (mu - c) / nb + m.law.Cgf(1.0 / nb);
    } else {
      value = (d - mu) / nb + m.law.Cgf(-1.0 / nb);
    }
    return {value, 0.0, "closed_form"};
  }
  if (m.n == 1) return LaplacePmcQuadrature(m, y);

  if (samples < 2) {
    throw Error(ErrorCode::kInvalidArgument, "Monte Carlo needs 2+ samples");
  }
  // Numerator E[g(S_n)], denominators E[g(x + S_{n-1})] at x = c and x = d,
  // with g(s) = exp(-|y - s/n| / b). All three share the draws of X^{n-1}.
  std::mt19937_64 rng(seed);
  const double n = static_cast<double>(m.n);
  double sa = 0, sb = 0, sc = 0, saa = 0, sbb = 0, scc = 0, sab = 0, sac = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    double rest = 0.0;
    for (int j = 0; j + 1 < m.n; ++j) rest += m.law.Sample(rng);
    const double last = m.law.Sample(rng);
    const double a = std::exp(-std::abs(y - (rest + last) / n) / m.b);
    const double bc = std::exp(-std::abs(y - (rest + c) / n) / m.b);
    const double bd = std::exp(-std::abs(y - (rest + d) / n) / m.b);
    sa += a;
    sb += bc;
    sc += bd;
    saa += a * a;
    sbb += bc * bc;
    scc += bd * bd;
    sab += a * bc;
    sac += a * bd;
  }
  const double count = static_cast<double>(samples);
  const double ma = sa / count;
  const bool use_c = sb <= sc;
  const double mb = (use_c ? sb : sc) / count;
  const double vaa = saa / count - ma * ma;
  const double vbb = (use_c ? sbb : scc) / count - mb * mb;
  const double vab = (use_c ? sab : sac) / count - ma * mb;
  // Delta method for log(ma) - log(mb).
  const double var =
      (vaa / (ma * ma) + vbb / (mb * mb) - 2.0 * vab / (ma * mb)) / count;
  const double half_width = 1.96 * std::sqrt(std::max(var, 0.0));
  if (half_width > kMonteCarloHalfWidth) {
    throw Error(ErrorCode::kQuadratureFailure,
                "Monte Carlo half-width " + FormatNats(half_width) +
                    " exceeds 1e-2; raise the sample count");
  }
  return {std::log(ma) - std::log(mb), half_width, "monte_carlo"};
}

double GaussianPerturb::amplitude() const {
  return std::max(std::abs(law.lower), std::abs(law.upper));
}

void GaussianPerturb::Validate() const {
  law.Validate();
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  }
  if (std::abs(law.mean) > 1e-12 * amplitude()) {
    throw Error(ErrorCode::kInvalidArgument, "input law must have zero mean");
  }
}

PmcInterval GaussianPmcBounds(double amplitude, double sigma, double y) {
  if (!(amplitude > 0.0) || !(sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "A and sigma must be positive");
  }
  const double s2 = sigma * sigma;
  const double ay = std::abs(y);
  return {amplitude * ay / s2, amplitude * (amplitude + 4.0 * ay) / (2.0 * s2)};
}

double GaussianPmcUniform(double amplitude, double sigma, double y) {
  if (!(amplitude > 0.0) || !(sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "A and sigma must be positive");
  }
  const double ay = std::abs(y);
  const double far = ay + amplitude;
  const double root2 = std::numbers::sqrt2 * sigma;
  // E exp(-(y - X)^2 / (2 sigma^2)) for X ~ U[-A, A]
  //   = sigma sqrt(2 pi) / (2A) * (erfc(u1) - erfc(u2)) / 2.
  const double e1 = std::erfc((ay - amplitude) / root2);
  const double e2 = std::erfc((ay + amplitude) / root2);
  const double log_mass = std::log(e1) + std::log1p(-e2 / e1) - std::log(2.0);
  return far * far / (2.0 * sigma * sigma) +
         std::log(sigma * std::sqrt(2.0 * std::numbers::pi) /
                  (2.0 * amplitude)) +
         log_mass;
}

PointEstimate GaussianPmcQuadrature(const GaussianPerturb& m, double y) {
  m.Validate();
  if (!m.law.density) {
    throw Error(ErrorCode::kInvalidArgument,
                "input law '" + m.law.name + "' has no density");
  }
  const double far = std::abs(y) + m.amplitude();
  const double s2 = 2.0 * m.sigma * m.sigma;
  auto f = [&](double x) {
    return m.law.density(x) * std::exp((far * far - (y - x) * (y - x)) / s2);
  };
  return LogOfIntegral(IntegratePieces(f, m.law.lower, m.law.upper, {y}),
                       "Gaussian PMC");
}

PointEstimate GaussianPmcAt(const GaussianPerturb& m, double y) {
  m.Validate();
  if (m.law.name == "uniform" && m.law.lower == -m.law.upper) {
    return {GaussianPmcUniform(m.amplitude(), m.sigma, y), 0.0, "closed_form"};
  }
  return GaussianPmcQuadrature(m, y);
}

double GaussianTailBound(double r, double beta) {
  if (!(r > 0.0) || !(beta >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "need r > 0 and beta >= 0");
  }
  return std::min(1.0, 2.0 * std::exp(-beta * beta / (8.0 * (r * r + r))));
}

TailEstimate GaussianTailFrequency(const GaussianPerturb& m, double beta,
                                   std::size_t samples, std::uint64_t seed) {
  m.Validate();
  if (samples == 0) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one sample");
  }
  const double a = m.amplitude();
  const double threshold = beta + a * a / (2.0 * m.sigma * m.sigma);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, m.sigma);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double y = m.law.Sample(rng) + noise(rng);
    if (GaussianPmcAt(m, y).value >= threshold) ++hits;
  }
  const double count = static_cast<double>(samples);
  const double f = static_cast<double>(hits) / count;
  return {f, std::sqrt(f * (1.0 - f) / count), samples};
}

}  // namespace pmcleak
