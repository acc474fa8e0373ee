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

#include <gtest/gtest.h>

#include "pmcleak/properties.hpp"

namespace pmcleak {
namespace {

TEST(PropertiesTest, AllHoldOnSeededInstances) {
  const auto results = RunPmcProperties(300, 1);
  ASSERT_EQ(results.size(), 7u);
  for (const auto& r : results) {
    EXPECT_TRUE(r.passed()) << r.name << " worst slack " << r.worst_slack;
    EXPECT_EQ(r.instances, 300u);
  }
}

TEST(PropertiesTest, Deterministic) {
  const auto a = RunPmcProperties(20, 5);
  const auto b = RunPmcProperties(20, 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].worst_slack, b[i].worst_slack);
  }
}

TEST(PropertiesTest, Table) {
  const std::string table = PropertyTable(RunPmcProperties(5, 2));
  EXPECT_NE(table.find("composition"), std::string::npos);
  EXPECT_NE(table.find("PASS"), std::string::npos);
}

}  // namespace
}  // namespace pmcleak
