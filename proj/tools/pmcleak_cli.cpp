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

// pmcleak command-line frontend.
//
//   pmcleak analyze   --input mech.json [--output PREFIX]
//   pmcleak translate --pml 0.405465 --pmin 0.5
//   pmcleak sweep     --pmin 0.2 --steps 100 [--output PREFIX]
//   pmcleak oracle    --input mech.json --y 0 [--grid 11] [--max-u 3]
//   pmcleak mechanism --input mech.json
//   pmcleak props     --seed 1 [--instances 1000]
//
// Exit codes: 0 success, 1 property violation, 2 input error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmcleak/bounds.hpp"
#include "pmcleak/error.hpp"
#include "pmcleak/io.hpp"
#include "pmcleak/leakage.hpp"
#include "pmcleak/oracles.hpp"
#include "pmcleak/properties.hpp"

namespace pmcleak {
namespace {

constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

struct RunConfig {
  std::string input;
  std::string output;
  std::string mode = "float";
  std::string unit = "nats";
  std::optional<std::uint64_t> seed;
  double p_min = 0.0;
  std::size_t steps = 100;
  int grid = 11;
  int max_u = 3;
  std::size_t y = 0;
  std::size_t instances = 1000;
  double tolerance = 1e-10;
  std::optional<double> pml, pmc, lip, ldp;
  std::vector<double> alip;
};

DisplayUnit Unit(const RunConfig& c) {
  return c.unit == "bits" ? DisplayUnit::kBits : DisplayUnit::kNats;
}

bool Rational(const RunConfig& c) { return c.mode == "rational"; }

std::uint64_t RequireSeed(const RunConfig& c, const std::string& why) {
  if (!c.seed) {
    throw Error(ErrorCode::kInvalidArgument, "--seed is required: " + why);
  }
  return *c.seed;
}

void Emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    WriteTextFile(path, content);
  }
}

template <Scalar T>
int AnalyzeFinite(const RunConfig& c, const std::string& doc) {
  const auto joint = ParseFiniteMechanism<T>(doc);
  const std::string levels = AnalysisJson(joint, Unit(c));
  const std::string profile = ProfileCsv(LeakageProfile(joint), Unit(c));
  if (c.output.empty()) {
    Emit("", levels);
  } else {
    WriteTextFile(c.output + "_levels.json", levels + "\n");
    WriteTextFile(c.output + "_profile.csv", profile);
  }
  return 0;
}

int Analyze(const RunConfig& c) {
  const std::string doc = ReadTextFile(c.input);
  const std::string family = MechanismFamily(doc);
  std::string report;
  if (family == "laplace_mean") {
    ContinuousQuery q;
    const auto m = ParseLaplaceMean(doc, &q);
    std::uint64_t seed = c.seed.value_or(0);
    if (m.n > 1) seed = RequireSeed(c, "Monte Carlo evaluation for n > 1");
    report = LaplaceReportJson(m, q, Unit(c), seed);
  } else if (family == "gaussian") {
    ContinuousQuery q;
    const auto m = ParseGaussian(doc, &q);
    report = GaussianReportJson(m, q, Unit(c));
  } else {
    return Rational(c) ? AnalyzeFinite<pmcleak::Rational>(c, doc)
                       : AnalyzeFinite<double>(c, doc);
  }
  Emit(c.output.empty() ? "" : c.output + "_levels.json", report + "\n");
  return 0;
}

int Translate(const RunConfig& c) {
  std::vector<Guarantee> given;
  if (c.pml) given.push_back(Guarantee::Of(GuaranteeKind::kPml, ExtReal(*c.pml)));
  if (c.pmc) given.push_back(Guarantee::Of(GuaranteeKind::kPmc, ExtReal(*c.pmc)));
  if (c.lip) given.push_back(Guarantee::Of(GuaranteeKind::kLip, ExtReal(*c.lip)));
  if (c.ldp) given.push_back(Guarantee::Of(GuaranteeKind::kLdp, ExtReal(*c.ldp)));
  if (!c.alip.empty()) {
    given.push_back(Guarantee::Alip(ExtReal(c.alip[0]), ExtReal(c.alip[1])));
  }
  if (given.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "give exactly one of --pml, --pmc, --lip, --ldp, --alip");
  }
  const auto result = DeriveImplications(given.front(), c.p_min);
  Emit(c.output, TranslationJson(result, Unit(c)) + "\n");
  return 0;
}

int Sweep(const RunConfig& c) {
  const auto table = SweepCurves(c.p_min, c.steps);
  const auto [upper, lower] = CurveCsv(table, Unit(c));
  if (c.output.empty()) {
    std::cout << upper << '\n' << lower;
  } else {
    WriteTextFile(c.output + "_upper.csv", upper);
    WriteTextFile(c.output + "_lower.csv", lower);
  }
  return 0;
}

template <Scalar T>
int OracleFor(const RunConfig& c, const std::string& doc) {
  const auto joint = ParseFiniteMechanism<T>(doc);
  SearchConfig search;
  search.resolution = c.grid;
  search.max_alphabet = c.max_u;
  if (static_cast<long>(joint.inputs()) * c.max_u > search.exhaustive_limit) {
    search.seed = RequireSeed(c, "the kernel search samples beyond |X|*|U| = " +
                                     std::to_string(search.exhaustive_limit));
  }
  const auto cert = CertifyPmc(joint, c.y, search);
  Emit(c.output, OracleJson(cert, Unit(c)) + "\n");
  if (!cert.dominance_holds) {
    std::cerr << "pmcleak: oracle value exceeds the closed form\n";
    return kExitViolation;
  }
  return 0;
}

int Oracle(const RunConfig& c) {
  const std::string doc = ReadTextFile(c.input);
  return Rational(c) ? OracleFor<pmcleak::Rational>(c, doc)
                     : OracleFor<double>(c, doc);
}

int Mechanism(const RunConfig& c) {
  const std::string doc = ReadTextFile(c.input);
  const std::string family = MechanismFamily(doc);
  if (family == "laplace_mean" || family == "gaussian") {
    throw Error(ErrorCode::kInvalidArgument,
                "family '" + family + "' has no finite channel to dump");
  }
  const std::string out =
      Rational(c) ? MechanismJson(ParseFiniteMechanism<pmcleak::Rational>(doc))
                  : MechanismJson(ParseFiniteMechanism<double>(doc));
  Emit(c.output, out + "\n");
  return 0;
}

int Props(const RunConfig& c) {
  const auto results = RunPmcProperties(
      c.instances, RequireSeed(c, "property instances are sampled"),
      c.tolerance);
  Emit(c.output, PropertyTable(results));
  for (const auto& r : results) {
    if (!r.passed()) return kExitViolation;
  }
  return 0;
}

}  // namespace
}  // namespace pmcleak

int main(int argc, char** argv) {
  using namespace pmcleak;
  RunConfig c;
  CLI::App app{"Pointwise maximal cost and leakage analysis"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", c.output, "Output file or prefix");
    sub->add_option("--mode", c.mode, "Numeric mode")
        ->check(CLI::IsMember({"float", "rational"}));
    sub->add_option("--unit", c.unit, "Display unit")
        ->check(CLI::IsMember({"nats", "bits"}));
    sub->add_option("--seed", c.seed, "Seed for sampled paths");
  };

  auto* analyze = app.add_subcommand("analyze", "Leakage report for a mechanism");
  analyze->add_option("--input", c.input, "Mechanism JSON")->required();
  add_common(analyze);

  auto* translate =
      app.add_subcommand("translate", "Guarantees implied by a given one");
  translate->add_option("--pmin", c.p_min, "Smallest prior mass")->required();
  translate->add_option("--pml", c.pml, "PML level in nats");
  translate->add_option("--pmc", c.pmc, "PMC level in nats");
  translate->add_option("--lip", c.lip, "LIP level in nats");
  translate->add_option("--ldp", c.ldp, "LDP level in nats");
  translate->add_option("--alip", c.alip, "ALIP levels eps_l eps_u in nats")
      ->expected(2);
  add_common(translate);

  auto* sweep = app.add_subcommand("sweep", "PML/PMC translation curves");
  sweep->add_option("--pmin", c.p_min, "Smallest prior mass")->required();
  sweep->add_option("--steps", c.steps, "Grid points per curve");
  add_common(sweep);

  auto* oracle = app.add_subcommand("oracle", "Certify PMC by brute force");
  oracle->add_option("--input", c.input, "Mechanism JSON")->required();
  oracle->add_option("--y", c.y, "Outcome index")->required();
  oracle->add_option("--grid", c.grid, "Points per simplex edge");
  oracle->add_option("--max-u", c.max_u, "Largest guess alphabet");
  add_common(oracle);

  auto* mechanism = app.add_subcommand("mechanism", "Dump the constructed channel");
  mechanism->add_option("--input", c.input, "Mechanism JSON")->required();
  add_common(mechanism);

  auto* props = app.add_subcommand("props", "Run the PMC property suite");
  props->add_option("--instances", c.instances, "Instances per property");
  props->add_option("--tolerance", c.tolerance, "Allowed violation");
  add_common(props);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*analyze) return Analyze(c);
    if (*translate) return Translate(c);
    if (*sweep) return Sweep(c);
    if (*oracle) return Oracle(c);
    if (*mechanism) return Mechanism(c);
    if (*props) return Props(c);
  } catch (const Error& e) {
    std::cerr << "pmcleak: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "pmcleak: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
