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

#include "pmcleak/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pmcleak {
namespace {

using Json = nlohmann::json;

Json ParseDocument(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParseError, path + ": " + what);
}

const Json& Field(const Json& obj, const std::string& key,
                  const std::string& path = "") {
  if (!obj.is_object()) Fail(path.empty() ? "document" : path, "not an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    Fail(path.empty() ? "document" : path, "missing field '" + key + "'");
  }
  return *it;
}

template <Scalar T>
T ReadNumber(const Json& v, const std::string& path) {
  T out;
  try {
    if (v.is_string()) {
      const Rational r = ParseRational(v.get<std::string>());
      if constexpr (kIsExact<T>) {
        out = r;
      } else {
        out = ToDouble(r);
      }
    } else if (v.is_number_integer()) {
      if constexpr (kIsExact<T>) {
        out = Rational(v.get<long long>());
      } else {
        out = static_cast<double>(v.get<long long>());
      }
    } else if (v.is_number()) {
      const double d = v.get<double>();
      if constexpr (kIsExact<T>) {
        out = RationalFromShortestDecimal(d);
      } else {
        out = d;
      }
    } else {
      Fail(path, "expected a number");
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kParseError) throw;
    Fail(path, e.what());
  }
  if constexpr (!kIsExact<T>) {
    if (!std::isfinite(out)) Fail(path, "not a finite number");
  }
  return out;
}

template <Scalar T>
T ReadNonNegative(const Json& v, const std::string& path) {
  T out = ReadNumber<T>(v, path);
  if (out < 0) Fail(path, "negative entry");
  return out;
}

template <Scalar T>
std::vector<T> ReadVector(const Json& v, const std::string& path) {
  if (!v.is_array()) Fail(path, "expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(ReadNonNegative<T>(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

long ReadInteger(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) Fail(path, "expected an integer");
  return v.get<long>();
}

double ReadDouble(const Json& v, const std::string& path) {
  return ReadNumber<double>(v, path);
}

// e^eps from either "exp_<key>" (exact) or "<key>" (nats).
template <Scalar T>
T ReadExpEpsilon(const Json& doc, const std::string& key) {
  if (doc.contains("exp_" + key)) {
    T e = ReadNumber<T>(doc["exp_" + key], "exp_" + key);
    if (!(e >= 1)) Fail("exp_" + key, "must be >= 1");
    return e;
  }
  const double eps = ReadDouble(Field(doc, key), key);
  if (!(eps >= 0)) Fail(key, "must be non-negative");
  if constexpr (kIsExact<T>) {
    return RationalFromShortestDecimal(std::exp(eps));
  } else {
    return std::exp(eps);
  }
}

template <Scalar T>
Pmf<T> ReadPrior(const Json& doc) {
  return Pmf<T>::FromProbabilities(ReadVector<T>(Field(doc, "prior"), "prior"));
}

template <Scalar T>
Json Exact(const T& v) {
  if constexpr (kIsExact<T>) {
    return ToString(v);
  } else {
    return v;
  }
}

Json NatsValue(double nats, DisplayUnit unit) {
  if (std::isinf(nats)) return nats > 0 ? "inf" : "-inf";
  return unit == DisplayUnit::kBits ? nats / std::log(2.0) : nats;
}

const char* UnitName(DisplayUnit unit) {
  return unit == DisplayUnit::kBits ? "bits" : "nats";
}

template <Scalar T>
Json ExactRatio(const LogRatio<T>& r) {
  if (r.is_infinite()) return "inf";
  return ToString(r.ratio());
}

template <Scalar T>
Json KernelJson(const Channel<T>& ch) {
  Json rows = Json::array();
  for (const auto& row : ch.rows()) {
    Json r = Json::array();
    for (const T& v : row) r.push_back(Exact(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

Json GuaranteeJson(const Guarantee& g, DisplayUnit unit) {
  Json out;
  out["kind"] = std::string(GuaranteeKindName(g.kind));
  if (g.kind == GuaranteeKind::kAlip) {
    out["eps_l"] = NatsValue(g.epsilon.nats(), unit);
    out["eps_u"] = NatsValue(g.epsilon_upper.nats(), unit);
  } else {
    out["epsilon"] = NatsValue(g.epsilon.nats(), unit);
  }
  return out;
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

InputLaw ReadLaw(const Json& doc, double lower, double upper) {
  if (!doc.contains("law")) return InputLaw::Uniform(lower, upper);
  const Json& law = doc["law"];
  const std::string kind = Field(law, "kind", "law").get<std::string>();
  if (kind == "uniform") return InputLaw::Uniform(lower, upper);
  if (kind == "truncated_exponential") {
    return InputLaw::TruncatedExponential(
        lower, upper, ReadDouble(Field(law, "rate", "law"), "law.rate"));
  }
  Fail("law.kind", "unknown law '" + kind + "'");
}

void ReadQuery(const Json& doc, ContinuousQuery* query,
               std::vector<double> default_points) {
  if (!query) return;
  query->points = std::move(default_points);
  if (doc.contains("y")) {
    query->points.clear();
    const Json& ys = doc["y"];
    if (!ys.is_array()) Fail("y", "expected an array");
    for (std::size_t i = 0; i < ys.size(); ++i) {
      query->points.push_back(
          ReadDouble(ys[i], "y[" + std::to_string(i) + "]"));
    }
  }
  if (doc.contains("beta")) {
    query->betas = ReadVector<double>(doc["beta"], "beta");
  }
}

}  // namespace

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  }
  out << content;
}

std::string MechanismFamily(std::string_view document) {
  const Json doc = ParseDocument(document);
  if (!doc.is_object()) Fail("document", "not an object");
  if (!doc.contains("family")) return "finite";
  const Json& f = doc["family"];
  if (!f.is_string()) Fail("family", "expected a string");
  const std::string family = f.get<std::string>();
  for (const char* known : {"rr", "extremal", "laplace_mean", "gaussian"}) {
    if (family == known) return family;
  }
  Fail("family", "unknown family '" + family + "'");
}

template <Scalar T>
Joint<T> ParseFiniteMechanism(std::string_view document) {
  const std::string family = MechanismFamily(document);
  const Json doc = ParseDocument(document);
  if (family == "finite") {
    const Json& rows = Field(doc, "channel");
    if (!rows.is_array()) Fail("channel", "expected an array of rows");
    std::vector<std::vector<T>> channel;
    for (std::size_t x = 0; x < rows.size(); ++x) {
      channel.push_back(
          ReadVector<T>(rows[x], "channel[" + std::to_string(x) + "]"));
    }
    return Joint<T>(ReadPrior<T>(doc), Channel<T>::FromRows(std::move(channel)));
  }
  if (family == "rr") {
    const long n = ReadInteger(Field(doc, "n"), "n");
    if (n < 2) Fail("n", "randomized response needs n >= 2");
    const auto size = static_cast<std::size_t>(n);
    Pmf<T> prior = doc.contains("prior") ? ReadPrior<T>(doc)
                                         : Pmf<T>::Uniform(size);
    return Joint<T>(std::move(prior),
                    RandomizedResponseRatio<T>(size, ReadExpEpsilon<T>(doc, "eps_r")));
  }
  if (family == "extremal") {
    Pmf<T> prior = ReadPrior<T>(doc);
    const T e = ReadExpEpsilon<T>(doc, "eps_u");
    Channel<T> channel = ExtremalMechanismRatio<T>(prior, e);
    return Joint<T>(std::move(prior), std::move(channel));
  }
  Fail("family", "'" + family + "' is not a finite mechanism");
}

LaplaceMean ParseLaplaceMean(std::string_view document,
                             ContinuousQuery* query) {
  const Json doc = ParseDocument(document);
  const double c = ReadDouble(Field(doc, "c"), "c");
  const double d = ReadDouble(Field(doc, "d"), "d");
  if (!(c < d)) Fail("c", "need c < d");
  LaplaceMean m{ReadLaw(doc, c, d),
                static_cast<int>(ReadInteger(Field(doc, "n"), "n")),
                ReadDouble(Field(doc, "b"), "b")};
  m.Validate();
  ReadQuery(doc, query, {c - 1.0, 0.5 * (c + d), d + 1.0});
  return m;
}

GaussianPerturb ParseGaussian(std::string_view document,
                              ContinuousQuery* query) {
  const Json doc = ParseDocument(document);
  const double a = ReadDouble(Field(doc, "amplitude"), "amplitude");
  if (!(a > 0)) Fail("amplitude", "must be positive");
  if (doc.contains("law")) {
    const std::string kind = Field(doc["law"], "kind", "law").get<std::string>();
    if (kind != "uniform") {
      Fail("law.kind", "the Gaussian family takes a uniform law on [-A, A]");
    }
  }
  GaussianPerturb m{InputLaw::Uniform(-a, a),
                    ReadDouble(Field(doc, "sigma"), "sigma")};
  m.Validate();
  ReadQuery(doc, query, {0.0, 1.0, -1.0});
  return m;
}

template <Scalar T>
std::string AnalysisJson(const Joint<T>& joint, DisplayUnit unit) {
  Json out;
  out["mode"] = kIsExact<T> ? "rational" : "float";
  out["unit"] = UnitName(unit);
  out["inputs"] = joint.inputs();
  out["outputs"] = joint.outputs();
  out["p_min"] = Exact(joint.prior().min_probability());
  const auto pmc = MaxPmc(joint);
  const auto pml = MaxPml(joint);
  const auto ldp = LdpLevel(joint.channel());
  const auto cost = MaxCostLeakage(joint);
  Json levels;
  levels["pml"] = NatsValue(pml.nats(), unit);
  levels["pmc"] = NatsValue(pmc.nats(), unit);
  levels["lip"] = NatsValue(Max(pmc, pml).nats(), unit);
  levels["alip"] = {{"eps_l", NatsValue(pmc.nats(), unit)},
                    {"eps_u", NatsValue(pml.nats(), unit)}};
  levels["ldp"] = NatsValue(ldp.nats(), unit);
  levels["max_cost_leakage"] = NatsValue(cost.nats(), unit);
  levels["max_realizable_cost"] = NatsValue(MaxRealizableCost(joint).nats(), unit);
  levels["expected_pmc"] = NatsValue(ExpectedPmc(joint), unit);
  out["levels"] = std::move(levels);
  if constexpr (kIsExact<T>) {
    out["exp_levels"] = {{"pml", ExactRatio(pml)},
                         {"pmc", ExactRatio(pmc)},
                         {"ldp", ExactRatio(ldp)},
                         {"max_cost_leakage", ExactRatio(cost)}};
  }
  Json profile = Json::array();
  for (const auto& row : LeakageProfile(joint)) {
    Json r{{"y", row.y},
           {"P_Y", Exact(row.marginal)},
           {"pmc", NatsValue(row.pmc.nats(), unit)},
           {"pml", NatsValue(row.pml.nats(), unit)}};
    if constexpr (kIsExact<T>) {
      r["exp_pmc"] = ExactRatio(row.pmc);
      r["exp_pml"] = ExactRatio(row.pml);
    }
    profile.push_back(std::move(r));
  }
  out["profile"] = std::move(profile);
  return Dump(out);
}

template <Scalar T>
std::string MechanismJson(const Joint<T>& joint) {
  Json prior = Json::array();
  for (const T& p : joint.prior().probabilities()) prior.push_back(Exact(p));
  Json out{{"prior", std::move(prior)},
           {"channel", KernelJson(joint.channel())}};
  return Dump(out);
}

std::string LaplaceReportJson(const LaplaceMean& m,
                              const ContinuousQuery& query, DisplayUnit unit,
                              std::uint64_t seed) {
  Json out;
  out["family"] = "laplace_mean";
  out["unit"] = UnitName(unit);
  out["law"] = m.law.name;
  out["c"] = m.law.lower;
  out["d"] = m.law.upper;
  out["n"] = m.n;
  out["b"] = m.b;
  out["sup_pmc"] = NatsValue(LaplaceMeanSupPmc(m), unit);
  out["dp_bound"] =
      NatsValue((m.law.upper - m.law.lower) / (m.n * m.b), unit);
  Json points = Json::array();
  for (double y : query.points) {
    const PointEstimate e = LaplacePmcAt(m, y, seed);
    points.push_back({{"y", y},
                      {"pmc", NatsValue(e.value, unit)},
                      {"error", NatsValue(e.error, unit)},
                      {"method", e.method}});
  }
  out["points"] = std::move(points);
  return Dump(out);
}

std::string GaussianReportJson(const GaussianPerturb& m,
                               const ContinuousQuery& query,
                               DisplayUnit unit) {
  const double a = m.amplitude();
  Json out;
  out["family"] = "gaussian";
  out["unit"] = UnitName(unit);
  out["amplitude"] = a;
  out["sigma"] = m.sigma;
  out["sup_pmc"] = "inf";
  Json points = Json::array();
  for (double y : query.points) {
    const PointEstimate e = GaussianPmcAt(m, y);
    const PmcInterval bounds = GaussianPmcBounds(a, m.sigma, y);
    points.push_back({{"y", y},
                      {"pmc", NatsValue(e.value, unit)},
                      {"lower", NatsValue(bounds.lower, unit)},
                      {"upper", NatsValue(bounds.upper, unit)},
                      {"method", e.method}});
  }
  out["points"] = std::move(points);
  Json tail = Json::array();
  const double r = a * a / (m.sigma * m.sigma);
  for (double beta : query.betas) {
    tail.push_back({{"beta", beta},
                    {"threshold", NatsValue(beta + r / 2.0, unit)},
                    {"bound", GaussianTailBound(r, beta)}});
  }
  out["tail"] = std::move(tail);
  return Dump(out);
}

std::string TranslationJson(const TranslationResult& result,
                            DisplayUnit unit) {
  Json out;
  out["unit"] = UnitName(unit);
  out["p_min"] = result.p_min;
  out["source"] = GuaranteeJson(result.source, unit);
  out["high_privacy"] = result.high_privacy;
  out["flags"] = Json::array();
  if (!result.high_privacy) out["flags"].push_back("OutsideHighPrivacy");
  Json implied = Json::array();
  for (const auto& g : result.implied) implied.push_back(GuaranteeJson(g, unit));
  out["implied"] = std::move(implied);
  return Dump(out);
}

template <Scalar T>
std::string OracleJson(const OracleCertificate<T>& cert, DisplayUnit unit) {
  Json out;
  out["unit"] = UnitName(unit);
  out["closed_form"] = NatsValue(cert.closed_form.nats(), unit);
  out["oracle_value"] = NatsValue(cert.oracle_value.nats(), unit);
  out["witness_kernel"] = KernelJson(cert.witness.kernel);
  out["gap"] = NatsValue(cert.gap(), unit);
  out["witness_source"] = cert.witness_source;
  out["grid_value"] = NatsValue(cert.grid_value.nats(), unit);
  out["kernels_evaluated"] = cert.kernels_evaluated;
  out["dominance_holds"] = cert.dominance_holds;
  if constexpr (kIsExact<T>) {
    out["exp_closed_form"] = ExactRatio(cert.closed_form);
    out["exp_oracle_value"] = ExactRatio(cert.oracle_value);
  }
  return Dump(out);
}

#define PMCLEAK_INSTANTIATE_IO(T)                                          \
  template Joint<T> ParseFiniteMechanism<T>(std::string_view);             \
  template std::string AnalysisJson(const Joint<T>&, DisplayUnit);          \
  template std::string MechanismJson(const Joint<T>&);                      \
  template std::string OracleJson(const OracleCertificate<T>&, DisplayUnit);

PMCLEAK_INSTANTIATE_IO(double)
PMCLEAK_INSTANTIATE_IO(Rational)

#undef PMCLEAK_INSTANTIATE_IO

}  // namespace pmcleak
