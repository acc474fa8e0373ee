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

// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "pmcleak/bounds.hpp"
#include "pmcleak/leakage.hpp"
#include "pmcleak/mechanisms.hpp"
#include "pmcleak/oracles.hpp"
#include "pmcleak/properties.hpp"
#include "pmcleak/sampling.hpp"

namespace pmcleak {
namespace {

using R = Rational;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Rational in [lo, hi] on a grid of step 1/denominator.
R RandomRational(Rng& rng, const R& lo, const R& hi, long denominator = 97) {
  const long k = std::uniform_int_distribution<long>(0, denominator)(rng);
  return lo + (hi - lo) * R(k, denominator);
}

Outcome OracleEquality() {
  Rng rng(20260101);
  SearchConfig cfg;
  std::size_t instances = 0;
  std::size_t outcomes = 0;
  std::size_t mismatches = 0;
  std::size_t exceedances = 0;
  std::size_t kernels = 0;
  for (std::size_t outputs : {2u, 3u}) {
    for (int i = 0; i < 100; ++i) {
      const auto joint = RandomJoint<R>(rng, 2, outputs);
      ++instances;
      for (std::size_t y : joint.support()) {
        ++outcomes;
        const auto pmc = Pmc(joint, y);
        if (pmc.is_infinite()) continue;
        const auto u = ConstructOptimalU(joint, y, DefaultSplitK(joint, y));
        if (!(LambdaU(joint, y, u) == pmc)) ++mismatches;
        const auto grid = OraclePmcRandomized(joint, y, cfg);
        kernels += grid.kernels_evaluated;
        if (pmc < grid.value) ++exceedances;
      }
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "%zu joints, %zu outcomes, %zu construction mismatches, %zu "
                "grid exceedances over %zu kernels",
                instances, outcomes, mismatches, exceedances, kernels);
  return {mismatches == 0 && exceedances == 0 && instances >= 200, buf};
}

Outcome CostEquivalence() {
  Rng rng(20260102);
  double worst_preserve = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t nx = RandomSize(rng, 2, 4);
    const auto joint = RandomJoint<double>(rng, nx, RandomSize(rng, 2, 4), 0.2);
    const RandomizedFunction<double> u{
        RandomChannel<double>(rng, nx, RandomSize(rng, 2, 4), 0.2)};
    const auto cost = CostFromU(u);
    for (std::size_t y : joint.support()) {
      const auto a = LambdaU(joint, y, u);
      const auto b = LambdaCost(joint, y, cost);
      if (a.is_infinite() || b.is_infinite()) {
        if (a.is_infinite() != b.is_infinite()) worst_preserve = INFINITY;
        continue;
      }
      worst_preserve = std::max(worst_preserve, std::abs(a.nats() - b.nats()));
    }
  }
  double worst_recover = 0.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const std::size_t nx = RandomSize(rng, 2, 3);
    const std::size_t nw = RandomSize(rng, 2, 3);
    const auto joint = RandomJoint<double>(rng, nx, RandomSize(rng, 2, 3));
    std::vector<std::vector<double>> rows(nx, std::vector<double>(nw));
    for (auto& row : rows) {
      for (double& v : row) v = unit(rng);
    }
    const auto cost = CostFunction<double>::FromRows(rows);
    for (std::size_t y : joint.support()) {
      const auto r = UFromCost(cost, joint, y);
      worst_recover = std::max(
          worst_recover, std::abs(r.lambda_u.nats() - r.lambda_cost.nats()));
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "cost_from_U max error %.3g (tol 1e-12), U_from_cost max error "
                "%.3g (tol 1e-9)",
                worst_preserve, worst_recover);
  return {worst_preserve <= 1e-12 && worst_recover <= 1e-9, buf};
}

Outcome PropertySuite() {
  const auto results = RunPmcProperties(1000, 20260103, 1e-10);
  Outcome out;
  for (const auto& r : results) {
    if (!r.passed()) out.pass = false;
    if (!out.detail.empty()) out.detail += ", ";
    out.detail += r.name + (r.passed() ? " ok" : " FAILED");
  }
  out.detail = "1000 instances each: " + out.detail;
  return out;
}

Outcome RandomizedResponseReproduction() {
  Rng rng(20260104);
  const R e_max = RationalFromShortestDecimal(std::exp(2.0));
  std::size_t mismatches = 0;
  std::size_t binary = 0;
  std::size_t binary_mismatches = 0;
  std::size_t wider = 0;
  std::size_t wider_mismatches = 0;
  std::size_t unsound = 0;
  double worst_float = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = RandomSize(rng, 2, 6);
    const R e = RandomRational(rng, R(1), e_max);
    const auto prior = RandomPmf<R>(rng, n);
    const Joint<R> joint(prior, RandomizedResponseRatio<R>(n, e));
    if (!(MaxPmc(joint).ratio() == RrPmcRatio<R>(n, e, prior))) ++mismatches;
    const auto uniform = Pmf<R>::Uniform(n);
    const Joint<R> uj(uniform, RandomizedResponseRatio<R>(n, e));
    const R measured = MaxPmc(uj).ratio();
    const R tight = LdpToPmcRatio<R>(e, R(1, static_cast<long>(n)));
    const bool equal =
        measured == tight && RrPmcRatio<R>(n, e, uniform) == tight;
    if (n == 2) {
      ++binary;
      if (!equal) ++binary_mismatches;
    } else {
      ++wider;
      if (!equal) ++wider_mismatches;
    }
    if (tight < measured) ++unsound;
    // Same triple in floating point.
    const double eps = std::log(ToDouble(e));
    std::vector<double> pd;
    for (const R& p : prior.probabilities()) pd.push_back(ToDouble(p));
    const auto pf = Pmf<double>::FromWeights(pd);
    const Joint<double> fj(pf, RandomizedResponse(n, eps));
    worst_float = std::max(
        worst_float, std::abs(MaxPmc(fj).nats() - RrPmc(n, eps, pf).nats()));
  }
  char buf[400];
  std::snprintf(
      buf, sizeof(buf),
      "50 triples: %zu exact closed-form mismatches, float max error %.3g; "
      "uniform prior equals ldp_to_pmc(eps_r, 1/n) for %zu of %zu binary and "
      "%zu of %zu larger alphabets, %zu above it. For n > 2 the closed form "
      "log((e^eps + n - 1)/n) is strictly below log((1 + (n - 1)e^eps)/n), so "
      "equality holds only for n = 2",
      mismatches, worst_float, binary - binary_mismatches, binary,
      wider - wider_mismatches, wider, unsound);
  return {mismatches == 0 && worst_float <= 1e-12 && binary_mismatches == 0 &&
              wider_mismatches == 0 && unsound == 0,
          buf};
}

Outcome ExtremalTightness() {
  Rng rng(20260105);
  std::size_t mismatches = 0;
  for (int i = 0; i < 50; ++i) {
    const auto prior = RandomPmf<R>(rng, RandomSize(rng, 2, 6));
    const R boundary = R(1) / (R(1) - prior.min_probability());
    // Strictly inside the high-privacy regime.
    const R e = RandomRational(rng, R(1), boundary, 1000) * R(999, 1000) +
                R(1, 1000);
    const Joint<R> joint(prior, ExtremalMechanismRatio<R>(prior, e));
    const auto expected = PmlToPmcRatio<R>(e, prior.min_probability());
    if (!expected || !(MaxPml(joint).ratio() == e) ||
        !(MaxPmc(joint).ratio() == *expected) ||
        !(ExtremalPmcRatio<R>(prior, e) == *expected)) {
      ++mismatches;
    }
    for (std::size_t y = 0; y < prior.size(); ++y) {
      if (!(joint.marginal(y) == prior[y])) ++mismatches;
    }
  }
  return {mismatches == 0,
          "50 high-privacy pairs, " + std::to_string(mismatches) +
              " exact mismatches"};
}

Outcome SweepReproduction() {
  std::string detail;
  bool pass = true;
  for (double p : {0.2, 0.5}) {
    const auto t = SweepCurves(p, 100);
    bool ok = t.upper.front().eps == 0.0 &&
              t.upper.front().eps_star.nats() == 0.0 &&
              t.lower.front().eps == 0.0 &&
              t.lower.front().eps_star.nats() == 0.0;
    for (std::size_t i = 1; i < t.upper.size(); ++i) {
      ok = ok && t.upper[i - 1].eps_star <= t.upper[i].eps_star &&
           t.lower[i - 1].eps_star <= t.lower[i].eps_star;
    }
    // Divergence: the curve keeps climbing as eps_u approaches the boundary.
    const double boundary = HighPrivacyBoundary(p);
    const double last = t.upper.back().eps_star.nats();
    const double closer =
        PmlToPmc(ExtReal(boundary * (1.0 - 1e-9)), p).nats();
    ok = ok && t.upper.back().eps < boundary && last > 10.0 &&
         closer > last + 5.0 &&
         PmlToPmc(ExtReal(boundary), p).is_infinite();
    double worst = 0.0;
    if (p == 0.5) {
      for (const auto& pt : t.upper) {
        worst = std::max(worst,
                         std::abs(PmcToPml(pt.eps_star, p).nats() - pt.eps));
      }
      for (const auto& pt : t.lower) {
        worst = std::max(worst,
                         std::abs(PmlToPmc(pt.eps_star, p).nats() - pt.eps));
      }
      ok = ok && worst <= 1e-12;
    }
    char involution[64] = "";
    if (p == 0.5) {
      std::snprintf(involution, sizeof(involution), ", involution error %.3g",
                    worst);
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%sp_min %.1f %s (last eps_l* %.3g%s)",
                  detail.empty() ? "" : "; ", p, ok ? "ok" : "FAILED", last,
                  involution);
    detail += buf;
    pass = pass && ok;
  }
  return {pass, detail};
}

Outcome LaplaceReproduction() {
  const LaplaceMean m{InputLaw::Uniform(0.0, 1.0), 1, 1.0};
  const double closed = std::log(std::numbers::e - 1.0);
  double worst_outside = 0.0;
  for (double y : {1.0, 2.0, 5.0, -1.0}) {
    worst_outside = std::max(
        worst_outside, std::abs(LaplacePmcQuadrature(m, y).value - closed));
  }
  double worst_interior = -INFINITY;
  for (int i = 1; i < 20; ++i) {
    const double y = i / 20.0;
    worst_interior =
        std::max(worst_interior, LaplacePmcQuadrature(m, y).value - closed);
  }
  Rng rng(20260107);
  std::uniform_real_distribution<double> rate(-5.0, 5.0);
  std::uniform_real_distribution<double> scale(0.2, 3.0);
  std::size_t violations = 0;
  for (int i = 0; i < 20; ++i) {
    double r = rate(rng);
    if (std::abs(r) < 1e-3) r = 1e-3;
    const double c = -scale(rng);
    const double d = scale(rng);
    const LaplaceMean law{InputLaw::TruncatedExponential(c, d, r),
                          static_cast<int>(RandomSize(rng, 1, 5)), scale(rng)};
    if (LaplaceMeanSupPmc(law) > (d - c) / (law.n * law.b) + 1e-12) {
      ++violations;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "closed form vs quadrature max error %.3g, interior max excess "
                "%.3g, %zu of 20 laws above (d-c)/(nb)",
                worst_outside, worst_interior, violations);
  return {worst_outside <= 1e-6 && worst_interior <= 1e-6 && violations == 0,
          buf};
}

Outcome GaussianReproduction() {
  const GaussianPerturb m{InputLaw::Uniform(-1.0, 1.0), 1.0};
  std::size_t outside = 0;
  for (double y : {0.0, 0.5, -0.5, 1.0, -1.0, 3.0, -3.0}) {
    const double v = GaussianPmcQuadrature(m, y).value;
    if (v < std::abs(y) - 1e-12 || v > (1.0 + 4.0 * std::abs(y)) / 2.0 + 1e-12) {
      ++outside;
    }
  }
  std::string detail =
      std::to_string(outside) + " of 7 quadrature values outside the bounds";
  bool tail_ok = true;
  for (double beta : {1.0, 2.0, 4.0}) {
    const auto t = GaussianTailFrequency(m, beta, 1000000, 20260108);
    const double bound = GaussianTailBound(1.0, beta);
    const bool ok = t.frequency <= bound + 3.0 * t.standard_error;
    tail_ok = tail_ok && ok;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "; beta %.0f freq %.4g <= bound %.4g", beta,
                  t.frequency, bound);
    detail += buf;
  }
  return {outside == 0 && tail_ok, detail};
}

Outcome BoundednessEquivalence() {
  Rng rng(20260109);
  std::size_t exceptions = 0;
  std::size_t infinite = 0;
  for (int i = 0; i < 500; ++i) {
    const auto joint = RandomJoint<double>(rng, RandomSize(rng, 2, 5),
                                           RandomSize(rng, 2, 5), 0.25);
    if (!VerifyBoundednessEquivalence(joint)) ++exceptions;
    if (MaxPmc(joint).is_infinite()) ++infinite;
  }
  return {exceptions == 0,
          "500 channels (" + std::to_string(infinite) + " with infinite PMC), " +
              std::to_string(exceptions) + " exceptions"};
}

Outcome JensenGap() {
  Rng rng(20260110);
  std::size_t violations = 0;
  std::size_t non_strict = 0;
  std::size_t non_constant = 0;
  double smallest_gap = INFINITY;
  for (int i = 0; i < 500; ++i) {
    const auto joint = RandomJoint<double>(rng, RandomSize(rng, 2, 5),
                                           RandomSize(rng, 2, 5));
    const double cost = MaxCostLeakage(joint).nats();
    const double expected = ExpectedPmc(joint);
    double lo = INFINITY;
    double hi = -INFINITY;
    for (std::size_t y : joint.support()) {
      const double v = Pmc(joint, y).nats();
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double gap = expected - cost;
    if (gap < -1e-12) ++violations;
    if (hi - lo > 1e-6) {
      ++non_constant;
      smallest_gap = std::min(smallest_gap, gap);
      if (!(gap > 1e-12)) ++non_strict;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "500 joints: %zu violations, %zu non-constant profiles, %zu not "
                "strict, smallest strict gap %.3g",
                violations, non_constant, non_strict, smallest_gap);
  return {violations == 0 && non_strict == 0, buf};
}

}  // namespace
}  // namespace pmcleak

int main() {
  using namespace pmcleak;
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "optimal randomized function attains PMC", 60, OracleEquality},
      {2, "cost and randomized-function models agree", 60, CostEquivalence},
      {3, "PMC property suite", 120, PropertySuite},
      {4, "randomized response closed form", 0,
       RandomizedResponseReproduction},
      {5, "extremal mechanism tightness", 0, ExtremalTightness},
      {6, "PML/PMC translation curves", 0, SweepReproduction},
      {7, "Laplace mean release", 0, LaplaceReproduction},
      {8, "Gaussian perturbation", 0, GaussianReproduction},
      {9, "bounded PMC iff bounded LDP", 0, BoundednessEquivalence},
      {10, "maximal cost leakage below expected PMC", 0, JensenGap},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    if (c.budget_seconds > 0 && seconds > c.budget_seconds) {
      out.pass = false;
      out.detail += "; over the time budget";
    }
    if (!out.pass) ++failures;
    std::printf("criterion %2d %s: %s (%s; %.2f s)\n", c.id,
                out.pass ? "PASS" : "FAIL", c.name, out.detail.c_str(),
                seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
