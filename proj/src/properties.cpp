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

#include "pmcleak/properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "pmcleak/leakage.hpp"
#include "pmcleak/sampling.hpp"

namespace pmcleak {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// b - a for the claim a <= b, with +inf <= +inf holding.
double LeqSlack(double a, double b) {
  if (std::isinf(b)) return kInf;
  if (std::isinf(a)) return -kInf;
  return b - a;
}

double EqSlack(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) {
    return std::isinf(a) == std::isinf(b) ? 0.0 : -kInf;
  }
  return -std::abs(a - b);
}

using Check = std::function<double(Rng&)>;

// Kernel with strictly positive entries, so every induced marginal keeps
// full support.
Channel<double> PositiveKernel(Rng& rng, std::size_t in, std::size_t out) {
  return RandomChannel<double>(rng, in, out, 0.0);
}

double NonNegativity(Rng& rng) {
  const auto joint = RandomJoint<double>(rng, RandomSize(rng, 1, 5),
                                         RandomSize(rng, 1, 5), 0.3);
  double slack = kInf;
  for (std::size_t y : joint.support()) {
    slack = std::min(slack, LeqSlack(0.0, Pmc(joint, y).nats()));
    slack = std::min(slack, LeqSlack(0.0, Pml(joint, y).nats()));
  }
  return slack;
}

double IndependenceZero(Rng& rng) {
  const std::size_t n = RandomSize(rng, 1, 5);
  const auto row = RandomSimplexPoint<double>(rng, RandomSize(rng, 1, 5), 0.3);
  const Joint<double> joint(RandomPmf<double>(rng, n),
                            Channel<double>::Constant(n, row));
  double slack = kInf;
  for (std::size_t y : joint.support()) {
    slack = std::min(slack, EqSlack(Pmc(joint, y).nats(), 0.0));
    slack = std::min(slack, EqSlack(Pml(joint, y).nats(), 0.0));
  }
  return slack;
}

double Additivity(Rng& rng) {
  const auto a = RandomJoint<double>(rng, RandomSize(rng, 1, 3),
                                     RandomSize(rng, 1, 3), 0.2);
  const auto b = RandomJoint<double>(rng, RandomSize(rng, 1, 3),
                                     RandomSize(rng, 1, 3), 0.2);
  std::vector<double> prior;
  for (double p : a.prior().probabilities()) {
    for (double q : b.prior().probabilities()) prior.push_back(p * q);
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t x1 = 0; x1 < a.inputs(); ++x1) {
    for (std::size_t x2 = 0; x2 < b.inputs(); ++x2) {
      std::vector<double> row;
      for (std::size_t y1 = 0; y1 < a.outputs(); ++y1) {
        for (std::size_t y2 = 0; y2 < b.outputs(); ++y2) {
          row.push_back(a.channel()(x1, y1) * b.channel()(x2, y2));
        }
      }
      rows.push_back(std::move(row));
    }
  }
  const Joint<double> product(Pmf<double>::FromProbabilities(prior),
                              Channel<double>::FromRows(std::move(rows)));
  double slack = kInf;
  for (std::size_t y1 : a.support()) {
    for (std::size_t y2 : b.support()) {
      const double joint = Pmc(product, y1 * b.outputs() + y2).nats();
      slack = std::min(slack,
                       EqSlack(joint, Pmc(a, y1).nats() + Pmc(b, y2).nats()));
    }
  }
  return slack;
}

double Concavity(Rng& rng) {
  const std::size_t n = RandomSize(rng, 2, 5);
  const auto channel = RandomChannel<double>(rng, n, RandomSize(rng, 2, 5), 0.2);
  const auto p = RandomPmf<double>(rng, n);
  const auto q = RandomPmf<double>(rng, n);
  const Joint<double> jp(p, channel);
  const Joint<double> jq(q, channel);
  double slack = kInf;
  for (std::size_t y : jp.support()) {
    const double vp = Pmc(jp, y).nats();
    const double vq = Pmc(jq, y).nats();
    for (int i = 0; i <= 10; ++i) {
      const double theta = i / 10.0;
      std::vector<double> mix(n);
      for (std::size_t x = 0; x < n; ++x) {
        mix[x] = theta * p[x] + (1.0 - theta) * q[x];
      }
      const Joint<double> jm(Pmf<double>::FromProbabilities(mix), channel);
      double rhs = 0.0;
      if (std::isinf(vp) || std::isinf(vq)) {
        rhs = (theta > 0 && std::isinf(vp)) || (theta < 1 && std::isinf(vq))
                  ? kInf
                  : theta * (std::isinf(vp) ? 0.0 : vp) +
                        (1.0 - theta) * (std::isinf(vq) ? 0.0 : vq);
      } else {
        rhs = theta * vp + (1.0 - theta) * vq;
      }
      slack = std::min(slack, LeqSlack(rhs, Pmc(jm, y).nats()));
    }
  }
  return slack;
}

double PreProcessing(Rng& rng) {
  const std::size_t nx = RandomSize(rng, 2, 4);
  const std::size_t nz = RandomSize(rng, 2, 4);
  const auto joint = RandomJoint<double>(rng, nx, RandomSize(rng, 2, 4), 0.2);
  const auto kernel = PositiveKernel(rng, nx, nz);
  // Z - X - Y: P_Z = P_X K, P(y|z) = sum_x P(x|z) P(y|x).
  const auto pz = kernel.Apply(joint.prior().probabilities());
  std::vector<std::vector<double>> rows(nz,
                                        std::vector<double>(joint.outputs()));
  for (std::size_t z = 0; z < nz; ++z) {
    for (std::size_t x = 0; x < nx; ++x) {
      const double w = joint.prior()[x] * kernel(x, z) / pz[z];
      for (std::size_t y = 0; y < joint.outputs(); ++y) {
        rows[z][y] += w * joint.channel()(x, y);
      }
    }
  }
  const Joint<double> induced(Pmf<double>::FromProbabilities(pz),
                              Channel<double>::FromRows(std::move(rows)));
  double slack = kInf;
  for (std::size_t y : joint.support()) {
    slack = std::min(slack,
                     LeqSlack(Pmc(induced, y).nats(), Pmc(joint, y).nats()));
  }
  return slack;
}

double PostProcessing(Rng& rng) {
  const std::size_t ny = RandomSize(rng, 2, 4);
  const auto joint =
      RandomJoint<double>(rng, RandomSize(rng, 2, 4), ny, 0.2);
  const auto kernel =
      RandomChannel<double>(rng, ny, RandomSize(rng, 2, 4), 0.3);
  const Joint<double> processed(joint.prior(), joint.channel().Then(kernel));
  return LeqSlack(MaxPmc(processed).nats(), MaxPmc(joint).nats());
}

double Composition(Rng& rng) {
  const std::size_t nx = RandomSize(rng, 2, 4);
  const std::size_t n1 = RandomSize(rng, 2, 3);
  const std::size_t n2 = RandomSize(rng, 2, 3);
  const auto first = RandomJoint<double>(rng, nx, n1, 0.2);
  // P_{Y2 | X, Y1 = y1} for each y1.
  std::vector<Channel<double>> second;
  for (std::size_t y1 = 0; y1 < n1; ++y1) {
    second.push_back(RandomChannel<double>(rng, nx, n2, 0.2));
  }
  std::vector<std::vector<double>> rows(nx);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y1 = 0; y1 < n1; ++y1) {
      for (std::size_t y2 = 0; y2 < n2; ++y2) {
        rows[x].push_back(first.channel()(x, y1) * second[y1](x, y2));
      }
    }
  }
  const Joint<double> pair(first.prior(),
                           Channel<double>::FromRows(std::move(rows)));
  std::vector<ConditionalSlice<double>> family;
  for (std::size_t y1 = 0; y1 < n1; ++y1) {
    std::vector<double> prior(nx, 0.0);
    if (first.in_support(y1)) {
      auto post = first.posterior(y1);
      prior.assign(post.begin(), post.end());
    } else {
      prior = std::vector<double>(nx, 1.0 / static_cast<double>(nx));
    }
    family.push_back({std::move(prior), second[y1]});
  }
  double slack = kInf;
  for (std::size_t y : pair.support()) {
    const std::size_t y1 = y / n2;
    const std::size_t y2 = y % n2;
    const double lhs = Pmc(pair, y).nats();
    const double rhs =
        Pmc(first, y1).nats() +
        ConditionalPmc<double>(family, y2, y1).nats();
    slack = std::min(slack, LeqSlack(lhs, rhs));
  }
  return slack;
}

}  // namespace

std::vector<PropertyResult> RunPmcProperties(std::size_t instances,
                                             std::uint64_t seed,
                                             double tolerance) {
  const std::vector<std::pair<std::string, Check>> checks = {
      {"non_negativity", NonNegativity},
      {"independence_zero", IndependenceZero},
      {"additivity", Additivity},
      {"concavity", Concavity},
      {"pre_processing", PreProcessing},
      {"post_processing", PostProcessing},
      {"composition", Composition},
  };
  std::vector<PropertyResult> results;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Rng rng(seed + 7919 * i);
    PropertyResult r{checks[i].first, instances, 0, kInf};
    for (std::size_t k = 0; k < instances; ++k) {
      const double slack = checks[i].second(rng);
      r.worst_slack = std::min(r.worst_slack, slack);
      if (slack < -tolerance) ++r.failures;
    }
    results.push_back(r);
  }
  return results;
}

std::string PropertyTable(const std::vector<PropertyResult>& results) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-20s %9s %9s %14s  %s\n", "property",
                "instances", "failures", "worst_slack", "result");
  out << line;
  for (const auto& r : results) {
    std::snprintf(line, sizeof(line), "%-20s %9zu %9zu %14.6g  %s\n",
                  r.name.c_str(), r.instances, r.failures, r.worst_slack,
                  r.passed() ? "PASS" : "FAIL");
    out << line;
  }
  return out.str();
}

}  // namespace pmcleak
