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
#include <nlohmann/json.hpp>

#include "pmcleak/io.hpp"

namespace pmcleak {
namespace {

using Json = nlohmann::json;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kInvalidArgument;
}

TEST(ParseTest, FiniteDocument) {
  auto j = ParseFiniteMechanism<double>(
      R"({"prior": [0.5, 0.5], "channel": [[0.75, 0.25], [0.25, 0.75]]})");
  EXPECT_EQ(j.inputs(), 2u);
  EXPECT_EQ(j.channel()(1, 1), 0.75);
}

TEST(ParseTest, RationalStringsAndDecimals) {
  auto j = ParseFiniteMechanism<Rational>(
      R"({"prior": ["1/3", "2/3"], "channel": [[0.1, 0.9], [1, 0]]})");
  EXPECT_EQ(j.prior()[0], Rational(1, 3));
  EXPECT_EQ(j.channel()(0, 0), Rational(1, 10));
}

TEST(ParseTest, FieldDiagnostics) {
  try {
    ParseFiniteMechanism<double>(
        R"({"prior": [0.5, 0.5], "channel": [[0.5, 0.5], [1.5, -0.5]]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("channel[1][1]"), std::string::npos);
  }
  EXPECT_EQ(CodeOf([] { ParseFiniteMechanism<double>(R"({"prior": [1]})"); }),
            ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] {
              ParseFiniteMechanism<double>(
                  R"({"prior": ["nan", 0.5], "channel": [[1], [1]]})");
            }),
            ErrorCode::kParseError);
}

TEST(ParseTest, SyntaxErrorHasLine) {
  try {
    ParseFiniteMechanism<double>("{\n\"prior\": [0.5,\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(ParseTest, ZeroPriorRejected) {
  EXPECT_EQ(CodeOf([] {
              ParseFiniteMechanism<double>(
                  R"({"prior": [1, 0], "channel": [[1], [1]]})");
            }),
            ErrorCode::kZeroOrNegativeWeight);
}

TEST(ParseTest, Families) {
  auto rr = ParseFiniteMechanism<Rational>(
      R"({"family": "rr", "n": 2, "exp_eps_r": 3})");
  EXPECT_EQ(rr.channel()(0, 0), Rational(3, 4));
  auto ex = ParseFiniteMechanism<Rational>(
      R"({"family": "extremal", "prior": [0.5, 0.5], "exp_eps_u": "3/2"})");
  EXPECT_EQ(ex.channel()(0, 0), Rational(1, 4));
  auto rr_nats = ParseFiniteMechanism<double>(
      R"({"family": "rr", "n": 3, "eps_r": 0.5, "prior": [0.2, 0.3, 0.5]})");
  EXPECT_NEAR(rr_nats.channel()(0, 0), std::exp(0.5) / (2 + std::exp(0.5)),
              1e-15);
  EXPECT_EQ(MechanismFamily(R"({"family": "gaussian"})"), "gaussian");
  EXPECT_EQ(CodeOf([] { MechanismFamily(R"({"family": "dp"})"); }),
            ErrorCode::kParseError);
}

TEST(ParseTest, Continuous) {
  ContinuousQuery q;
  auto m = ParseLaplaceMean(
      R"({"family": "laplace_mean", "c": 0, "d": 1, "n": 1, "b": 1,
          "y": [2, 0.5]})",
      &q);
  EXPECT_EQ(m.law.name, "uniform");
  EXPECT_EQ(q.points.size(), 2u);
  auto g = ParseGaussian(
      R"({"family": "gaussian", "amplitude": 1, "sigma": 2, "beta": [1]})",
      &q);
  EXPECT_EQ(g.amplitude(), 1.0);
  EXPECT_EQ(q.betas.size(), 1u);
}

TEST(ReportTest, AnalysisOfRr) {
  auto j = ParseFiniteMechanism<double>(
      R"({"family": "rr", "n": 2, "eps_r": 1.0986122886681098})");
  const Json r = Json::parse(AnalysisJson(j, DisplayUnit::kNats));
  EXPECT_NEAR(r["levels"]["pmc"].get<double>(), std::log(2.0), 1e-12);
  EXPECT_NEAR(r["levels"]["pml"].get<double>(), std::log(1.5), 1e-12);
  EXPECT_NEAR(r["levels"]["ldp"].get<double>(), std::log(3.0), 1e-12);
  EXPECT_EQ(r["profile"].size(), 2u);
}

TEST(ReportTest, InfinityToken) {
  auto j = ParseFiniteMechanism<Rational>(
      R"({"prior": [0.5, 0.5], "channel": [[0.5, 0.5], [0, 1]]})");
  const Json r = Json::parse(AnalysisJson(j, DisplayUnit::kNats));
  EXPECT_EQ(r["levels"]["pmc"], "inf");
  EXPECT_EQ(r["exp_levels"]["pml"], "2");
}

TEST(ReportTest, MechanismRoundTrip) {
  auto j = ParseFiniteMechanism<Rational>(
      R"({"family": "extremal", "prior": ["1/3", "2/3"], "exp_eps_u": "5/4"})");
  auto again = ParseFiniteMechanism<Rational>(MechanismJson(j));
  EXPECT_EQ(again.channel().rows(), j.channel().rows());
  auto jd = ParseFiniteMechanism<double>(
      R"({"prior": [0.1, 0.9], "channel": [[0.123456789012345678, 0.876543210987654322], [0.3, 0.7]]})");
  auto again_d = ParseFiniteMechanism<double>(MechanismJson(jd));
  EXPECT_EQ(again_d.channel().rows(), jd.channel().rows());
}

TEST(ReportTest, Translation) {
  auto r = DeriveImplications(
      Guarantee::Of(GuaranteeKind::kPml, ExtReal(0.8)), 0.5);
  const Json j = Json::parse(TranslationJson(r, DisplayUnit::kNats));
  EXPECT_EQ(j["flags"][0], "OutsideHighPrivacy");
  EXPECT_EQ(j["implied"][0]["kind"], "PMC");
  EXPECT_EQ(j["implied"][0]["epsilon"], "inf");
}

}  // namespace
}  // namespace pmcleak
