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

#include <cmath>

#include <gtest/gtest.h>

#include "pmcleak/bounds.hpp"
#include "pmcleak/mechanisms.hpp"
#include "pmcleak/sampling.hpp"

namespace pmcleak {
namespace {

const double kLog2 = std::log(2.0);
const double kLog15 = std::log(1.5);

TEST(PmlToPmcTest, Examples) {
  EXPECT_EQ(PmlToPmc(ExtReal(0.0), 0.3).nats(), 0.0);
  EXPECT_NEAR(PmlToPmc(ExtReal(kLog15), 0.5).nats(), kLog2, 1e-15);
  EXPECT_TRUE(PmlToPmc(ExtReal(kLog2), 0.5).is_infinite());
  EXPECT_TRUE(PmlToPmc(ExtReal(0.8), 0.5).is_infinite());
}

TEST(PmlToPmcTest, InvalidPmin) {
  for (double p : {0.0, -0.1, 1.5}) {
    try {
      PmlToPmc(ExtReal(0.1), p);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidPmin);
    }
  }
}

TEST(PmcToPmlTest, Examples) {
  EXPECT_EQ(PmcToPml(ExtReal(0.0), 0.5).nats(), 0.0);
  EXPECT_NEAR(PmcToPml(ExtReal(kLog2), 0.5).nats(), kLog15, 1e-15);
  EXPECT_NEAR(PmcToPml(ExtReal::Infinity(), 0.5).nats(), kLog2, 1e-15);
}

TEST(LdpToContextTest, Examples) {
  auto zero = LdpToContext(ExtReal(0.0), 0.5);
  EXPECT_EQ(zero.eps1.nats(), 0.0);
  EXPECT_EQ(zero.eps2.nats(), 0.0);
  auto c = LdpToContext(ExtReal(kLog2), 0.5);
  EXPECT_NEAR(c.eps1.nats(), kLog15, 1e-15);
  EXPECT_NEAR(c.eps2.nats(), std::log(4.0 / 3.0), 1e-15);
  auto small = LdpToContext(ExtReal(0.7), 1e-12);
  EXPECT_NEAR(small.eps1.nats(), 0.7, 1e-9);
  EXPECT_NEAR(small.eps2.nats(), 0.7, 1e-9);
}

TEST(LdpToContextTest, ChannelWithLdpLog2) {
  Joint<double> j(Pmf<double>::Uniform(2),
                  Channel<double>::FromRows({{2.0 / 3, 1.0 / 3},
                                             {1.0 / 3, 2.0 / 3}}));
  EXPECT_LE(MaxPml(j).nats(), LdpToContext(ExtReal(kLog2), 0.5).eps2.nats() +
                                  1e-12);
}

TEST(LdpToPmcTest, Examples) {
  EXPECT_EQ(LdpToPmc(ExtReal(0.0), 0.2).nats(), 0.0);
  EXPECT_NEAR(LdpToPmc(ExtReal(kLog2), 0.5).nats(), kLog15, 1e-15);
  EXPECT_EQ(LdpToPmc(ExtReal(3.0), 1.0).nats(), 0.0);
}

TEST(RatioFormsTest, Exact) {
  const Rational half(1, 2);
  EXPECT_EQ(*PmlToPmcRatio(Rational(3, 2), half), Rational(2));
  EXPECT_FALSE(PmlToPmcRatio(Rational(2), half).has_value());
  EXPECT_EQ(PmcToPmlRatio(Rational(2), half), Rational(3, 2));
  EXPECT_EQ(LdpToPmcRatio(Rational(2), half), Rational(3, 2));
  auto [e1, e2] = LdpToContextRatio(Rational(2), half);
  EXPECT_EQ(e1, Rational(3, 2));
  EXPECT_EQ(e2, Rational(4, 3));
}

bool Contains(const TranslationResult& r, const Guarantee& g, double tol) {
  for (const auto& h : r.implied) {
    if (h.kind != g.kind) continue;
    auto close = [&](ExtReal a, ExtReal b) {
      if (a.is_infinite() || b.is_infinite()) return a == b;
      return std::abs(a.nats() - b.nats()) <= tol;
    };
    if (close(h.epsilon, g.epsilon) &&
        close(h.epsilon_upper, g.epsilon_upper)) {
      return true;
    }
  }
  return false;
}

TEST(DeriveImplicationsTest, PmlHighPrivacy) {
  auto r = DeriveImplications(Guarantee::Of(GuaranteeKind::kPml,
                                            ExtReal(kLog15)), 0.5);
  EXPECT_TRUE(r.high_privacy);
  EXPECT_TRUE(Contains(r, Guarantee::Of(GuaranteeKind::kPmc, ExtReal(kLog2)),
                       1e-12));
  EXPECT_TRUE(Contains(r, Guarantee::Alip(ExtReal(kLog2), ExtReal(kLog15)),
                       1e-12));
  EXPECT_TRUE(Contains(
      r, Guarantee::Of(GuaranteeKind::kLdp, ExtReal(std::log(3.0))), 1e-12));
  EXPECT_TRUE(Contains(r, Guarantee::Of(GuaranteeKind::kLip, ExtReal(kLog2)),
                       1e-12));
}

TEST(DeriveImplicationsTest, ZeroStaysZero) {
  for (auto kind : {GuaranteeKind::kPml, GuaranteeKind::kPmc,
                    GuaranteeKind::kLip, GuaranteeKind::kLdp}) {
    auto r = DeriveImplications(Guarantee::Of(kind, ExtReal(0.0)), 0.3);
    for (const auto& g : r.implied) {
      EXPECT_NEAR(g.epsilon.nats(), 0.0, 1e-15);
      EXPECT_NEAR(g.epsilon_upper.nats(), 0.0, 1e-15);
    }
  }
}

TEST(DeriveImplicationsTest, OutsideHighPrivacy) {
  auto r = DeriveImplications(
      Guarantee::Of(GuaranteeKind::kPml, ExtReal(kLog2)), 0.5);
  EXPECT_FALSE(r.high_privacy);
  EXPECT_TRUE(Contains(r, Guarantee::Of(GuaranteeKind::kPmc,
                                        ExtReal::Infinity()), 0));
}

TEST(DeriveImplicationsTest, CitedRoutes) {
  auto lip = DeriveImplications(Guarantee::Of(GuaranteeKind::kLip,
                                              ExtReal(0.4)), 0.2);
  EXPECT_TRUE(Contains(lip, Guarantee::Of(GuaranteeKind::kLdp, ExtReal(0.8)),
                       1e-15));
  EXPECT_TRUE(Contains(lip, Guarantee::Alip(ExtReal(0.4), ExtReal(0.4)), 0));
  auto alip = DeriveImplications(Guarantee::Alip(ExtReal(0.3), ExtReal(0.2)),
                                 0.2);
  EXPECT_TRUE(Contains(alip, Guarantee::Of(GuaranteeKind::kLdp, ExtReal(0.5)),
                       1e-15));
  EXPECT_TRUE(Contains(alip, Guarantee::Of(GuaranteeKind::kPml, ExtReal(0.2)),
                       0));
  EXPECT_TRUE(Contains(alip, Guarantee::Of(GuaranteeKind::kPmc, ExtReal(0.3)),
                       0));
}

TEST(DeriveImplicationsTest, BinaryUniformInvolution) {
  for (double x : {0.05, 0.2, 0.4, 0.6}) {
    auto forward = DeriveImplications(
        Guarantee::Of(GuaranteeKind::kPml, ExtReal(x)), 0.5);
    ExtReal eps_l;
    for (const auto& g : forward.implied) {
      if (g.kind == GuaranteeKind::kPmc) eps_l = g.epsilon;
    }
    auto back =
        DeriveImplications(Guarantee::Of(GuaranteeKind::kPmc, eps_l), 0.5);
    EXPECT_TRUE(Contains(back, Guarantee::Of(GuaranteeKind::kPml, ExtReal(x)),
                         1e-12));
  }
}

TEST(SweepTest, InvolutionAtHalf) {
  for (double x : {0.1, 0.2, 0.3}) {
    const ExtReal l = PmlToPmc(ExtReal(x), 0.5);
    EXPECT_NEAR(PmcToPml(l, 0.5).nats(), x, 1e-12);
  }
}

TEST(SweepTest, SmallPminDiverges) {
  EXPECT_NEAR(PmlToPmc(ExtReal(0.2), 0.2).nats(),
              std::log(0.2 / (1 - std::exp(0.2) * 0.8)), 1e-12);
  EXPECT_NEAR(PmlToPmc(ExtReal(0.2), 0.2).nats(), 2.168, 1e-3);
  auto t = SweepCurves(0.2, 100);
  ASSERT_EQ(t.upper.size(), 100u);
  EXPECT_EQ(t.upper.front().eps, 0.0);
  EXPECT_EQ(t.upper.front().eps_star.nats(), 0.0);
  EXPECT_EQ(t.lower.front().eps_star.nats(), 0.0);
  EXPECT_LT(t.upper.back().eps, std::log(1.25));
  for (std::size_t i = 1; i < t.upper.size(); ++i) {
    EXPECT_GE(t.upper[i].eps_star, t.upper[i - 1].eps_star);
    EXPECT_GE(t.lower[i].eps_star, t.lower[i - 1].eps_star);
  }
  EXPECT_GT(t.upper.back().eps_star.nats(), 10.0);
}

TEST(SweepTest, TwoSteps) {
  auto t = SweepCurves(0.5, 2);
  ASSERT_EQ(t.upper.size(), 2u);
  auto [upper, lower] = CurveCsv(t, DisplayUnit::kNats);
  EXPECT_EQ(upper.substr(0, upper.find('\n')), "eps_u,eps_l_star");
  EXPECT_EQ(lower.substr(0, lower.find('\n')), "eps_l,eps_u_star");
  EXPECT_NE(upper.find("\n0,0\n"), std::string::npos);
  EXPECT_THROW(SweepCurves(0.5, 1), Error);
  EXPECT_THROW(SweepCurves(0.0, 10), Error);
}

TEST(SweepTest, BitsHeader) {
  auto [upper, lower] = CurveCsv(SweepCurves(0.5, 3), DisplayUnit::kBits);
  EXPECT_EQ(upper.substr(0, upper.find('\n')), "eps_u_bits,eps_l_star_bits");
}

TEST(BoundednessTest, Examples) {
  Joint<double> positive(Pmf<double>::Uniform(2),
                         Channel<double>::FromRows({{0.6, 0.4}, {0.3, 0.7}}));
  EXPECT_TRUE(VerifyBoundednessEquivalence(positive));
  Joint<double> zero(Pmf<double>::Uniform(2),
                     Channel<double>::FromRows({{0.5, 0.5}, {0.0, 1.0}}));
  EXPECT_TRUE(MaxPmc(zero).is_infinite());
  EXPECT_TRUE(VerifyBoundednessEquivalence(zero));
  Rng rng(99);
  for (int i = 0; i < 500; ++i) {
    auto j = RandomJoint<double>(rng, RandomSize(rng, 2, 5),
                                 RandomSize(rng, 2, 5), 0.25);
    EXPECT_TRUE(VerifyBoundednessEquivalence(j));
  }
}

TEST(SoundnessTest, RandomJoints) {
  Rng rng(4242);
  for (int i = 0; i < 1000; ++i) {
    auto j = RandomJoint<double>(rng, RandomSize(rng, 2, 5),
                                 RandomSize(rng, 2, 5), 0.1);
    const double p_min = j.prior().min_probability();
    const ExtReal pml = MaxPml(j).ToExtReal();
    const ExtReal pmc = MaxPmc(j).ToExtReal();
    const ExtReal ldp = LdpLevel(j.channel()).ToExtReal();
    const ExtReal eps_l = PmlToPmc(pml, p_min);
    if (eps_l.is_finite()) EXPECT_LE(pmc.nats(), eps_l.nats() + 1e-9);
    EXPECT_LE(pml.nats(), PmcToPml(pmc, p_min).nats() + 1e-9);
    if (ldp.is_finite()) {
      EXPECT_LE(pml.nats(), LdpToContext(ldp, p_min).eps2.nats() + 1e-9);
      EXPECT_LE(pmc.nats(), LdpToPmc(ldp, p_min).nats() + 1e-9);
    }
  }
}

TEST(MonotonicityTest, Maps) {
  double prev_l = 0, prev_u = 0, prev_c = 0;
  for (int i = 1; i < 50; ++i) {
    const double e = i * 0.01;
    const double l = PmlToPmc(ExtReal(e), 0.3).nats();
    const double u = PmcToPml(ExtReal(e), 0.3).nats();
    const double c = LdpToPmc(ExtReal(e), 0.3).nats();
    EXPECT_GE(l, prev_l);
    EXPECT_GE(u, prev_u);
    EXPECT_GE(c, prev_c);
    prev_l = l;
    prev_u = u;
    prev_c = c;
  }
  EXPECT_GE(PmlToPmc(ExtReal(0.1), 0.2).nats(),
            PmlToPmc(ExtReal(0.1), 0.4).nats());
  EXPECT_GE(PmcToPml(ExtReal(0.1), 0.2).nats(),
            PmcToPml(ExtReal(0.1), 0.4).nats());
}

}  // namespace
}  // namespace pmcleak
