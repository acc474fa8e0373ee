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

// JSON documents in and JSON/CSV reports out.
//
// A finite mechanism is either {"prior": [...], "channel": [[...], ...]} or
// {"family": "rr" | "extremal", ...}. Continuous families are
// {"family": "laplace_mean" | "gaussian", ...}. Numbers may be JSON numbers
// or strings such as "1/3"; in rational mode a JSON number is read as the
// shortest decimal that round-trips, so 0.1 becomes 1/10.
//
// Reports never contain non-finite JSON numbers: +inf is written as the
// string "inf".

#ifndef PMCLEAK_IO_HPP_
#define PMCLEAK_IO_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmcleak/bounds.hpp"
#include "pmcleak/leakage.hpp"
#include "pmcleak/mechanisms.hpp"
#include "pmcleak/oracles.hpp"
#include "pmcleak/probcore.hpp"

namespace pmcleak {

enum class NumericMode { kFloat, kRational };

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& content);

// "finite", "rr", "extremal", "laplace_mean" or "gaussian".
std::string MechanismFamily(std::string_view document);

template <Scalar T>
Joint<T> ParseFiniteMechanism(std::string_view document);

struct ContinuousQuery {
  std::vector<double> points;
  std::vector<double> betas;
};

LaplaceMean ParseLaplaceMean(std::string_view document,
                             ContinuousQuery* query = nullptr);
GaussianPerturb ParseGaussian(std::string_view document,
                              ContinuousQuery* query = nullptr);

template <Scalar T>
std::string AnalysisJson(const Joint<T>& joint, DisplayUnit unit);

template <Scalar T>
std::string MechanismJson(const Joint<T>& joint);

std::string LaplaceReportJson(const LaplaceMean& m,
                              const ContinuousQuery& query, DisplayUnit unit,
                              std::uint64_t seed);
std::string GaussianReportJson(const GaussianPerturb& m,
                               const ContinuousQuery& query, DisplayUnit unit);

std::string TranslationJson(const TranslationResult& result, DisplayUnit unit);

template <Scalar T>
std::string OracleJson(const OracleCertificate<T>& cert, DisplayUnit unit);

}  // namespace pmcleak

#endif  // PMCLEAK_IO_HPP_
