// Copyright 2026 The causalmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "causalmatch/data.h"
#include "causalmatch/errors.h"
#include "causalmatch/sem.h"
#include "test_util.h"

namespace causalmatch {
namespace {

std::string TempPath(const std::string& name) {
  return ::testing::TempDir() + "causalmatch_data_" + name;
}

std::string WriteFile(const std::string& name, const std::string& text) {
  const std::string path = TempPath(name);
  std::ofstream(path) << text;
  return path;
}

Dataset RandomDataset(int n, std::uint64_t seed) {
  Rng rng(seed);
  Dataset d;
  d.x = testing::RandomMatrix(n, 3, rng, 1e3);
  d.x(0, 1) = 1e-300;
  d.x(1, 1) = -std::numeric_limits<double>::min();
  d.x(0, 2) = 0.1 + 0.2;
  d.t = testing::RandomBinary(n, rng);
  d.y = testing::RandomMatrix(n, 1, rng).col(0);
  d.y_cfactual = testing::RandomMatrix(n, 1, rng).col(0);
  d.mu0 = testing::RandomMatrix(n, 1, rng).col(0);
  d.mu1 = testing::RandomMatrix(n, 1, rng).col(0);
  d.anchor_index = 1;
  d.feature_names = {"age", "bw", "z"};
  return d;
}

// Covariates c (confounder) and g (outcome-only); anchor a.
LinearSem ObservedConfounderSem() {
  SemRoles roles;
  roles.anchor = 0;
  roles.treatment = 3;
  roles.outcome = 4;
  LinearSem sem = MakeSem(
      5, {{0, 3, 1.0}, {1, 3, 1.0}, {1, 4, 1.0}, {2, 4, 1.0}, {3, 4, 1.0}},
      {1, 1, 1, 1, 1}, roles);
  sem.names = {"a", "c", "g", "t", "y"};
  return sem;
}

// Coefficient of t in the OLS fit of y on [1, t, x].
double OlsTreatmentCoefficient(const Dataset& d) {
  Matrix design(d.n(), d.d() + 2);
  design.col(0).setOnes();
  design.col(1) = d.t;
  design.rightCols(d.d()) = d.x;
  const Vector beta = design.colPivHouseholderQr().solve(d.y);
  return beta[1];
}

TEST(LoadCsvTest, MinimalTwoRowFile) {
  const std::string path =
      WriteFile("min.csv", "t,y_factual,x_a,x_b\n1,2.5,0.1,3\n0,-1,0.2,4\n");
  Dataset d = LoadCsv(path, "b");
  EXPECT_EQ(d.n(), 2);
  EXPECT_EQ(d.d(), 2);
  EXPECT_EQ(d.anchor_index, 1);
  EXPECT_EQ(d.feature_names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(d.y[0], 2.5);
  EXPECT_FALSE(d.has_ground_truth());
}

TEST(LoadCsvTest, NonBinaryTreatmentNamesTheRow) {
  const std::string path =
      WriteFile("tbad.csv", "t,y_factual,x_a\n0,1,1\n2,1,1\n1,0,0\n");
  try {
    LoadCsv(path, "a");
    FAIL() << "expected a data error";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
  }
}

TEST(LoadCsvTest, DescriptiveErrors) {
  EXPECT_THROW(LoadCsv(TempPath("does_not_exist.csv"), "a"), DataError);
  EXPECT_THROW(LoadCsv(WriteFile("noy.csv", "t,x_a\n0,1\n1,2\n"), "a"), DataError);
  EXPECT_THROW(LoadCsv(WriteFile("nox.csv", "t,y_factual\n0,1\n1,2\n"), "a"),
               DataError);
  EXPECT_THROW(
      LoadCsv(WriteFile("anchor.csv", "t,y_factual,x_a\n0,1,1\n1,2,2\n"), "zz"),
      DataError);
  EXPECT_THROW(
      LoadCsv(WriteFile("mu.csv", "t,y_factual,mu0,x_a\n0,1,1,1\n1,2,2,2\n"), "a"),
      DataError);
  try {
    LoadCsv(WriteFile("missing.csv", "t,y_factual,x_a\n0,1,1\n1,,2\n"), "a");
    FAIL() << "expected a data error";
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("y_factual"), std::string::npos) << msg;
  }
}

TEST(SaveCsvTest, RoundTripIsBitExact) {
  const Dataset d = RandomDataset(25, 4);
  const std::string path = TempPath("roundtrip.csv");
  SaveCsv(d, path);
  Dataset back = LoadCsv(path, "bw");
  EXPECT_EQ(back.x, d.x);
  EXPECT_EQ(back.t, d.t);
  EXPECT_EQ(back.y, d.y);
  EXPECT_EQ(*back.y_cfactual, *d.y_cfactual);
  EXPECT_EQ(*back.mu0, *d.mu0);
  EXPECT_EQ(*back.mu1, *d.mu1);
  EXPECT_EQ(back.feature_names, d.feature_names);
  EXPECT_EQ(back.anchor_index, 1);
}

TEST(SaveCsvTest, DomainColumnIsIgnoredOnLoad) {
  const Dataset d = RandomDataset(6, 5);
  const std::vector<int> labels = {0, 1, 2, 0, 1, 2};
  const std::string path = TempPath("domains.csv");
  SaveCsv(d, path, &labels);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_NE(header.find("domain"), std::string::npos);
  EXPECT_EQ(LoadCsv(path, "age").x, d.x);
}

TEST(InduceConfoundingTest, EmptyDropIsIdentity) {
  const Dataset d = RandomDataset(10, 1);
  Dataset out = InduceConfounding(d, {});
  EXPECT_EQ(out.x, d.x);
  EXPECT_TRUE(out.hidden_names.empty());
}

TEST(InduceConfoundingTest, DropsNamedColumnsOnly) {
  const Dataset d = RandomDataset(10, 2);
  Dataset out = InduceConfounding(d, {"age"});
  EXPECT_EQ(out.d(), d.d() - 1);
  EXPECT_EQ(out.hidden_names, (std::vector<std::string>{"age"}));
  EXPECT_EQ(out.feature_names[out.anchor_index], "bw");
  EXPECT_EQ(out.t, d.t);
  EXPECT_EQ(out.y, d.y);
  EXPECT_EQ(out.x.col(out.anchor_index), d.x.col(d.anchor_index));
  EXPECT_EQ(InduceConfounding(d, {"age", "z"}).d(), 1);
}

TEST(InduceConfoundingTest, RefusesAnchorAndUnknownNames) {
  const Dataset d = RandomDataset(10, 3);
  EXPECT_THROW(InduceConfounding(d, {"bw"}), ConfigError);
  EXPECT_THROW(InduceConfounding(d, {"nope"}), ConfigError);
}

TEST(InduceConfoundingTest, DroppingConfounderBiasesAdjustedEstimate) {
  SynthResult s = SynthDataset(ObservedConfounderSem(), 20000, 11);
  const Dataset& full = s.data;
  const Dataset hidden = InduceConfounding(full, {"c"});
  const double before = std::abs(OlsTreatmentCoefficient(full) - s.true_ate);
  const double after = std::abs(OlsTreatmentCoefficient(hidden) - s.true_ate);
  EXPECT_LT(before, 0.05);
  EXPECT_GT(after - before, 0.1);
}

TEST(SplitTest, SizesAndDeterminism) {
  const Dataset d = RandomDataset(100, 6);
  SplitResult a = Split(d, 0.8, 9);
  EXPECT_EQ(a.train.n(), 80);
  EXPECT_EQ(a.test.n(), 20);
  SplitResult b = Split(d, 0.8, 9);
  EXPECT_EQ(a.train_rows, b.train_rows);
  EXPECT_EQ(a.test_rows, b.test_rows);
  EXPECT_NE(a.train_rows, Split(d, 0.8, 10).train_rows);
}

TEST(SplitTest, PartsCoverEveryRowOnce) {
  const Dataset d = RandomDataset(57, 7);
  SplitResult s = Split(d, 0.7, 1);
  std::vector<int> all = s.train_rows;
  all.insert(all.end(), s.test_rows.begin(), s.test_rows.end());
  std::sort(all.begin(), all.end());
  for (int i = 0; i < 57; ++i) EXPECT_EQ(all[i], i);
  EXPECT_EQ(all.size(), 57u);
  for (size_t k = 0; k < s.train_rows.size(); ++k) {
    EXPECT_EQ(s.train.y[k], d.y[s.train_rows[k]]);
  }
  EXPECT_GT(s.train.num_treated(), 0);
  EXPECT_LT(s.train.num_treated(), s.train.n());
}

TEST(SplitTest, GivesUpWhenArmsCannotBeBalanced) {
  Dataset d = RandomDataset(10, 8);
  d.t.setZero();
  d.t[3] = 1.0;
  EXPECT_THROW(Split(d, 0.1, 0), DegenerateError);
  EXPECT_THROW(Split(d, 1.0, 0), ConfigError);
}

}  // namespace
}  // namespace causalmatch
