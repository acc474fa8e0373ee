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

// Property suite for PMC on seeded random finite instances: non-negativity,
// independence, additivity, concavity in the prior, pre-processing,
// post-processing and composition.

#ifndef PMCLEAK_PROPERTIES_HPP_
#define PMCLEAK_PROPERTIES_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pmcleak {

struct PropertyResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  // Smallest slack seen across all checks; negative beyond -tolerance means
  // a failure.
  double worst_slack = 0.0;

  bool passed() const { return failures == 0; }
};

std::vector<PropertyResult> RunPmcProperties(std::size_t instances,
                                             std::uint64_t seed,
                                             double tolerance = 1e-10);

// One line per property: name, instances, failures, worst slack, PASS/FAIL.
std::string PropertyTable(const std::vector<PropertyResult>& results);

}  // namespace pmcleak

#endif  // PMCLEAK_PROPERTIES_HPP_
