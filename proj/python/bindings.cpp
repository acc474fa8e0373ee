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

// Python bindings for the floating-point core and the JSON report builders.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmcleak/bounds.hpp"
#include "pmcleak/error.hpp"
#include "pmcleak/io.hpp"
#include "pmcleak/leakage.hpp"
#include "pmcleak/mechanisms.hpp"
#include "pmcleak/oracles.hpp"
#include "pmcleak/properties.hpp"

namespace py = pybind11;

namespace pmcleak {
namespace {

using Rows = std::vector<std::vector<double>>;

Joint<double> MakeJoint(const std::vector<double>& prior, const Rows& channel) {
  return Joint<double>(Pmf<double>::FromProbabilities(prior),
                       Channel<double>::FromRows(channel));
}

double Nats(const ExtReal& v) { return v.nats(); }

DisplayUnit ParseUnit(const std::string& unit) {
  if (unit == "nats") return DisplayUnit::kNats;
  if (unit == "bits") return DisplayUnit::kBits;
  throw Error(ErrorCode::kInvalidArgument, "unit must be nats or bits");
}

bool ParseMode(const std::string& mode) {
  if (mode == "float") return false;
  if (mode == "rational") return true;
  throw Error(ErrorCode::kInvalidArgument, "mode must be float or rational");
}

GuaranteeKind ParseKind(const std::string& name) {
  const auto kind = ParseGuaranteeKind(name);
  if (!kind) throw Error(ErrorCode::kInvalidArgument, "unknown guarantee " + name);
  return *kind;
}

py::dict GuaranteeDict(const Guarantee& g) {
  py::dict d;
  d["kind"] = std::string(GuaranteeKindName(g.kind));
  if (g.kind == GuaranteeKind::kAlip) {
    d["eps_l"] = g.epsilon.nats();
    d["eps_u"] = g.epsilon_upper.nats();
  } else {
    d["epsilon"] = g.epsilon.nats();
  }
  return d;
}

std::string Analyze(const std::string& document, const std::string& mode,
                    const std::string& unit, std::uint64_t seed) {
  const DisplayUnit u = ParseUnit(unit);
  const std::string family = MechanismFamily(document);
  if (family == "laplace_mean") {
    ContinuousQuery q;
    const auto m = ParseLaplaceMean(document, &q);
    return LaplaceReportJson(m, q, u, seed);
  }
  if (family == "gaussian") {
    ContinuousQuery q;
    const auto m = ParseGaussian(document, &q);
    return GaussianReportJson(m, q, u);
  }
  return ParseMode(mode)
             ? AnalysisJson(ParseFiniteMechanism<Rational>(document), u)
             : AnalysisJson(ParseFiniteMechanism<double>(document), u);
}

std::string Certify(const std::string& document, std::size_t y, int grid,
                    int max_u, std::uint64_t seed, const std::string& mode,
                    const std::string& unit) {
  SearchConfig config;
  config.resolution = grid;
  config.max_alphabet = max_u;
  config.seed = seed;
  const DisplayUnit u = ParseUnit(unit);
  if (ParseMode(mode)) {
    return OracleJson(
        CertifyPmc(ParseFiniteMechanism<Rational>(document), y, config), u);
  }
  return OracleJson(
      CertifyPmc(ParseFiniteMechanism<double>(document), y, config), u);
}

LaplaceMean MakeLaplace(double c, double d, int n, double b,
                        std::optional<double> rate) {
  LaplaceMean m{rate ? InputLaw::TruncatedExponential(c, d, *rate)
                     : InputLaw::Uniform(c, d),
                n, b};
  m.Validate();
  return m;
}

GaussianPerturb MakeGaussian(double amplitude, double sigma) {
  GaussianPerturb m{InputLaw::Uniform(-amplitude, amplitude), sigma};
  m.Validate();
  return m;
}

}  // namespace
}  // namespace pmcleak

PYBIND11_MODULE(_pmcleak, m) {
  using namespace pmcleak;
  m.doc() = "Pointwise maximal cost and leakage";

  py::register_exception<Error>(m, "PmcleakError", PyExc_ValueError);

  py::class_<Joint<double>>(m, "Joint")
      .def(py::init(&MakeJoint), py::arg("prior"), py::arg("channel"))
      .def_property_readonly(
          "prior",
          [](const Joint<double>& j) { return j.prior().probabilities(); })
      .def_property_readonly(
          "channel", [](const Joint<double>& j) { return j.channel().rows(); })
      .def_property_readonly("marginal",
                             [](const Joint<double>& j) {
                               auto v = j.marginal();
                               return std::vector<double>(v.begin(), v.end());
                             })
      .def("posterior",
           [](const Joint<double>& j, std::size_t y) {
             auto v = j.posterior(y);
             return std::vector<double>(v.begin(), v.end());
           })
      .def("support", &Joint<double>::support)
      .def_property_readonly("inputs", &Joint<double>::inputs)
      .def_property_readonly("outputs", &Joint<double>::outputs);

  m.def("pmc", [](const Joint<double>& j, std::size_t y) {
    return Pmc(j, y).nats();
  }, py::arg("joint"), py::arg("y"));
  m.def("pml", [](const Joint<double>& j, std::size_t y) {
    return Pml(j, y).nats();
  }, py::arg("joint"), py::arg("y"));
  m.def("max_pmc", [](const Joint<double>& j) { return MaxPmc(j).nats(); });
  m.def("max_pml", [](const Joint<double>& j) { return MaxPml(j).nats(); });
  m.def("ldp_level", [](const Rows& channel) {
    return LdpLevel(Channel<double>::FromRows(channel)).nats();
  }, py::arg("channel"));
  m.def("max_cost_leakage",
        [](const Joint<double>& j) { return MaxCostLeakage(j).nats(); });
  m.def("max_realizable_cost",
        [](const Joint<double>& j) { return MaxRealizableCost(j).nats(); });
  m.def("expected_pmc", &ExpectedPmc<double>);
  m.def("guarantee_level", [](const Joint<double>& j, const std::string& kind) {
    return GuaranteeDict(GuaranteeLevel(j, ParseKind(kind)));
  }, py::arg("joint"), py::arg("kind"));
  m.def("profile", [](const Joint<double>& j) {
    py::list rows;
    for (const auto& r : LeakageProfile(j)) {
      py::dict d;
      d["y"] = r.y;
      d["P_Y"] = r.marginal;
      d["pmc"] = r.pmc.nats();
      d["pml"] = r.pml.nats();
      rows.append(d);
    }
    return rows;
  });
  m.def("profile_csv", [](const Joint<double>& j, const std::string& unit) {
    return ProfileCsv(LeakageProfile(j), ParseUnit(unit));
  }, py::arg("joint"), py::arg("unit") = "nats");

  m.def("pml_to_pmc", [](double eps_u, double p_min) {
    return Nats(PmlToPmc(ExtReal(eps_u), p_min));
  }, py::arg("eps_u"), py::arg("p_min"));
  m.def("pmc_to_pml", [](double eps_l, double p_min) {
    return Nats(PmcToPml(ExtReal(eps_l), p_min));
  }, py::arg("eps_l"), py::arg("p_min"));
  m.def("ldp_to_pmc", [](double eps, double p_min) {
    return Nats(LdpToPmc(ExtReal(eps), p_min));
  }, py::arg("eps"), py::arg("p_min"));
  m.def("ldp_to_context", [](double eps, double p_min) {
    const auto c = LdpToContext(ExtReal(eps), p_min);
    return py::make_tuple(c.eps1.nats(), c.eps2.nats());
  }, py::arg("eps"), py::arg("p_min"));
  m.def("high_privacy_boundary", &HighPrivacyBoundary, py::arg("p_min"));
  m.def("derive_implications",
        [](const std::string& kind, double eps, double p_min,
           std::optional<double> eps_upper) {
          const GuaranteeKind k = ParseKind(kind);
          const Guarantee g =
              k == GuaranteeKind::kAlip
                  ? Guarantee::Alip(ExtReal(eps), ExtReal(eps_upper.value_or(eps)))
                  : Guarantee::Of(k, ExtReal(eps));
          const auto r = DeriveImplications(g, p_min);
          py::dict d;
          d["source"] = GuaranteeDict(r.source);
          py::list implied;
          for (const auto& i : r.implied) implied.append(GuaranteeDict(i));
          d["implied"] = implied;
          d["p_min"] = r.p_min;
          d["high_privacy"] = r.high_privacy;
          return d;
        },
        py::arg("kind"), py::arg("eps"), py::arg("p_min"),
        py::arg("eps_upper") = py::none());
  m.def("sweep_curves", [](double p_min, std::size_t steps) {
    const auto t = SweepCurves(p_min, steps);
    auto pairs = [](const std::vector<CurvePoint>& pts) {
      std::vector<std::pair<double, double>> out;
      for (const auto& p : pts) out.emplace_back(p.eps, p.eps_star.nats());
      return out;
    };
    return py::make_tuple(pairs(t.upper), pairs(t.lower));
  }, py::arg("p_min"), py::arg("steps") = 100);

  m.def("randomized_response", [](std::size_t n, double eps_r) {
    return RandomizedResponse(n, eps_r).rows();
  }, py::arg("n"), py::arg("eps_r"));
  m.def("rr_pmc", [](std::size_t n, double eps_r,
                     const std::vector<double>& prior) {
    return Nats(RrPmc(n, eps_r, Pmf<double>::FromProbabilities(prior)));
  }, py::arg("n"), py::arg("eps_r"), py::arg("prior"));
  m.def("extremal_mechanism", [](const std::vector<double>& prior,
                                 double eps_u) {
    return ExtremalMechanism(Pmf<double>::FromProbabilities(prior), eps_u)
        .rows();
  }, py::arg("prior"), py::arg("eps_u"));
  m.def("extremal_pmc", [](const std::vector<double>& prior, double eps_u) {
    return ExtremalPmc(Pmf<double>::FromProbabilities(prior), eps_u);
  }, py::arg("prior"), py::arg("eps_u"));
  m.def("laplace_mean_sup_pmc",
        [](double c, double d, int n, double b, std::optional<double> rate) {
          return LaplaceMeanSupPmc(MakeLaplace(c, d, n, b, rate));
        },
        py::arg("c"), py::arg("d"), py::arg("n"), py::arg("b"),
        py::arg("rate") = py::none());
  m.def("laplace_pmc_at",
        [](double c, double d, int n, double b, double y,
           std::optional<double> rate, std::uint64_t seed) {
          const auto e = LaplacePmcAt(MakeLaplace(c, d, n, b, rate), y, seed);
          return py::make_tuple(e.value, e.error, e.method);
        },
        py::arg("c"), py::arg("d"), py::arg("n"), py::arg("b"), py::arg("y"),
        py::arg("rate") = py::none(), py::arg("seed") = 0);
  m.def("gaussian_pmc_bounds", [](double amplitude, double sigma, double y) {
    const auto i = GaussianPmcBounds(amplitude, sigma, y);
    return py::make_tuple(i.lower, i.upper);
  }, py::arg("amplitude"), py::arg("sigma"), py::arg("y"));
  m.def("gaussian_pmc_at", [](double amplitude, double sigma, double y) {
    return GaussianPmcAt(MakeGaussian(amplitude, sigma), y).value;
  }, py::arg("amplitude"), py::arg("sigma"), py::arg("y"));
  m.def("gaussian_tail_bound", &GaussianTailBound, py::arg("r"),
        py::arg("beta"));
  m.def("gaussian_tail_frequency",
        [](double amplitude, double sigma, double beta, std::size_t samples,
           std::uint64_t seed) {
          const auto t = GaussianTailFrequency(MakeGaussian(amplitude, sigma),
                                               beta, samples, seed);
          return py::make_tuple(t.frequency, t.standard_error);
        },
        py::arg("amplitude"), py::arg("sigma"), py::arg("beta"),
        py::arg("samples"), py::arg("seed"));

  m.def("construct_optimal_u", [](const Joint<double>& j, std::size_t y) {
    return ConstructOptimalU(j, y, DefaultSplitK(j, y)).kernel.rows();
  }, py::arg("joint"), py::arg("y"));
  m.def("lambda_u", [](const Joint<double>& j, std::size_t y, const Rows& u) {
    return LambdaU(j, y, RandomizedFunction<double>{
                             Channel<double>::FromRows(u)}).nats();
  }, py::arg("joint"), py::arg("y"), py::arg("kernel"));

  m.def("analyze", &Analyze, py::arg("document"), py::arg("mode") = "float",
        py::arg("unit") = "nats", py::arg("seed") = 0);
  m.def("certify", &Certify, py::arg("document"), py::arg("y"),
        py::arg("grid") = 11, py::arg("max_u") = 3, py::arg("seed") = 0,
        py::arg("mode") = "float", py::arg("unit") = "nats");
  m.def("mechanism_json", [](const std::string& document,
                             const std::string& mode) {
    return ParseMode(mode)
               ? MechanismJson(ParseFiniteMechanism<Rational>(document))
               : MechanismJson(ParseFiniteMechanism<double>(document));
  }, py::arg("document"), py::arg("mode") = "float");
  m.def("run_properties",
        [](std::size_t instances, std::uint64_t seed, double tolerance) {
          py::list out;
          for (const auto& r : RunPmcProperties(instances, seed, tolerance)) {
            py::dict d;
            d["name"] = r.name;
            d["instances"] = r.instances;
            d["failures"] = r.failures;
            d["worst_slack"] = r.worst_slack;
            d["passed"] = r.passed();
            out.append(d);
          }
          return out;
        },
        py::arg("instances"), py::arg("seed"), py::arg("tolerance") = 1e-10);
}
