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
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "causalmatch/errors.h"
#include "causalmatch/metrics.h"
#include "test_util.h"

namespace causalmatch {
namespace {

using testing::RandomMatrix;

Vector Constant(int n, double v) { return Vector::Constant(n, v); }

TEST(AteErrorTest, ExactEstimateHasZeroError) {
  EXPECT_EQ(AteError(Constant(7, 1.5), 1.5), 0.0);
  EXPECT_NEAR(AteError(Constant(747, 4.016), 4.016), 0.0, 1e-12);
}

TEST(AteErrorTest, ConstantShiftGivesShift) {
  Rng rng(1);
  const Vector tau = RandomMatrix(30, 1, rng).col(0);
  EXPECT_NEAR(AteError((tau.array() - 0.4).matrix(), tau.mean()), 0.4, 1e-12);
  EXPECT_THROW(AteError(Vector(), 0.0), DegenerateError);
}

TEST(SqrtPeheTest, ClosedFormCases) {
  Rng rng(2);
  const Vector tau = RandomMatrix(25, 1, rng).col(0);
  EXPECT_EQ(SqrtPehe(tau, tau), 0.0);
  EXPECT_NEAR(SqrtPehe((tau.array() + 0.3).matrix(), tau), 0.3, 1e-12);
  EXPECT_NEAR(SqrtPehe((tau.array() - 0.3).matrix(), tau), 0.3, 1e-12);
}

TEST(SqrtPeheTest, MatchesTwoPassRecomputation) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const Vector a = RandomMatrix(50, 1, rng).col(0);
    const Vector b = RandomMatrix(50, 1, rng, 2.0).col(0);
    std::vector<double> sq;
    for (int i = 0; i < 50; ++i) sq.push_back((a[i] - b[i]) * (a[i] - b[i]));
    const double expected =
        std::sqrt(std::accumulate(sq.begin(), sq.end(), 0.0) / 50.0);
    EXPECT_NEAR(SqrtPehe(a, b), expected, 1e-12 * expected);
  }
}

TEST(SqrtPeheTest, NeedsGroundTruth) {
  EXPECT_THROW(SqrtPehe(Constant(3, 1.0), std::optional<Vector>()),
               UnavailableError);
  EXPECT_THROW(SqrtPehe(Constant(3, 1.0), Constant(4, 1.0)), ShapeError);
}

TEST(AttErrorTest, ClosedFormCases) {
  Vector t(4);
  t << 1, 0, 1, 0;
  Vector tau(4);
  tau << 1676.3426, -50.0, 1676.3426, 80.0;
  EXPECT_EQ(AttError(tau, t, 1676.3426, false), 0.0);
  Vector doubled = Constant(4, 2.0 * 1676.3426);
  EXPECT_DOUBLE_EQ(AttError(doubled, t, 1676.3426, true), 1.0);
  EXPECT_THROW(AttError(tau, Vector::Zero(4), 1.0, false), DegenerateError);
  EXPECT_THROW(AttError(tau, t, 0.0, true), DegenerateError);
}

TEST(AtcErrorTest, ClosedFormCases) {
  Vector y(5), t(5);
  y << 5, 5, 3, 3, 9;
  t << 0, 0, 1, 1, 1;
  const std::vector<bool> randomized = {true, true, true, true, false};
  AtcTerms r = AtcError(Vector::Zero(5), Constant(5, 2.0), y, t, randomized);
  EXPECT_DOUBLE_EQ(r.true_atc, 2.0);
  EXPECT_DOUBLE_EQ(r.threshold, 2.0);
  EXPECT_EQ(r.error, 0.0);
}

TEST(AtcErrorTest, MatchesDirectRecomputation) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const int n = 40;
    const Vector f0 = RandomMatrix(n, 1, rng).col(0);
    const Vector f1 = RandomMatrix(n, 1, rng).col(0);
    const Vector y = RandomMatrix(n, 1, rng, 3.0).col(0);
    const Vector t = testing::RandomBinary(n, rng);
    std::vector<bool> e(n);
    std::bernoulli_distribution coin(0.6);
    for (int i = 0; i < n; ++i) e[i] = coin(rng);
    e[0] = true;

    double sum_c = 0.0, sum_te = 0.0, sum_tau = 0.0;
    int n_c = 0, n_te = 0;
    for (int i = 0; i < n; ++i) {
      if (t[i] == 0.0) {
        sum_c += y[i];
        sum_tau += f1[i] - f0[i];
        ++n_c;
      } else if (e[i]) {
        sum_te += y[i];
        ++n_te;
      }
    }
    const double true_atc = sum_c / n_c - sum_te / n_te;
    const double expected = std::abs(sum_tau / n_c - true_atc);
    AtcTerms r = AtcError(f0, f1, y, t, e);
    EXPECT_NEAR(r.error, expected, 1e-12 * std::max(1.0, expected));
  }
}

TEST(AtcErrorTest, RejectsEmptySets) {
  Vector y = Constant(3, 1.0);
  Vector t(3);
  t << 1, 1, 1;
  EXPECT_THROW(AtcError(y, y, y, t, {true, true, true}), DegenerateError);
  t << 0, 1, 1;
  EXPECT_THROW(AtcError(y, y, y, t, {true, false, false}), DegenerateError);
}

TEST(MetricsPropertyTest, RmsBoundsMeanError) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const Vector a = RandomMatrix(15, 1, rng).col(0);
    const Vector b = RandomMatrix(15, 1, rng, 0.5).col(0);
    EXPECT_GE(SqrtPehe(a, b) + 1e-15, std::abs(a.mean() - b.mean()));
  }
}

TEST(MetricsPropertyTest, PermutationAndShiftInvariance) {
  Rng rng(3);
  const int n = 20;
  const Vector tau = RandomMatrix(n, 1, rng).col(0);
  const Vector truth = RandomMatrix(n, 1, rng).col(0);
  const Vector t = testing::RandomBinary(n, rng);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const Vector tau_p = SelectRows(tau, perm);
  const Vector truth_p = SelectRows(truth, perm);
  const Vector t_p = SelectRows(t, perm);
  EXPECT_NEAR(SqrtPehe(tau, truth), SqrtPehe(tau_p, truth_p), 1e-14);
  EXPECT_NEAR(AteError(tau, 0.7), AteError(tau_p, 0.7), 1e-14);
  EXPECT_NEAR(AttError(tau, t, 0.2, false), AttError(tau_p, t_p, 0.2, false), 1e-14);
  EXPECT_NEAR(AteError(tau, 0.7), AteError((tau.array() + 5.0).matrix(), 5.7), 1e-12);
  EXPECT_NEAR(AttError(tau, t, 0.2, false),
              AttError((tau.array() + 5.0).matrix(), t, 5.2, false), 1e-12);
}

TEST(FactualRmseTest, ClosedForm) {
  Vector a(2), b(2);
  a << 1, 3;
  b << 0, 0;
  EXPECT_DOUBLE_EQ(FactualRmse(a, b), std::sqrt(5.0));
}

TEST(MetricsReportTest, CsvLeavesMissingCellsEmpty) {
  MetricsReport r;
  r.run = "seed0";
  r.model = "Seq-M-CFR";
  r.split = SampleSplit::kOut;
  r.n = 20;
  r.ate_hat = 1.5;
  r.ate_error = 0.25;
  r.factual_rmse = 0.5;
  EXPECT_EQ(MetricsCsvHeader(),
            "run,model,split,n,ate_hat,ate_error,sqrt_pehe,att_error,atc_error,"
            "factual_rmse");
  EXPECT_EQ(ToCsvRow(r), "seed0,Seq-M-CFR,out,20,1.5,0.25,,,,0.5");
}

}  // namespace
}  // namespace causalmatch
