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
#include <functional>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "causalmatch/errors.h"
#include "causalmatch/random.h"
#include "causalmatch/sem.h"
#include "sem_oracles.h"

namespace causalmatch {
namespace {

using testing::SampleCovariance;
using testing::SampleSem;

// Partial covariance from least-squares residuals on the conditioning columns.
double ResidualCovariance(const Matrix& v, int i, int j,
                          const std::vector<int>& s) {
  const int n = static_cast<int>(v.rows());
  Matrix design(n, s.size() + 1);
  design.col(0).setOnes();
  for (size_t k = 0; k < s.size(); ++k) design.col(k + 1) = v.col(s[k]);
  const auto qr = design.colPivHouseholderQr();
  const Vector ri = v.col(i) - design * qr.solve(Vector(v.col(i)));
  const Vector rj = v.col(j) - design * qr.solve(Vector(v.col(j)));
  return ri.dot(rj) / n;
}

std::vector<std::vector<int>> Subsets(const std::vector<int>& pool) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << pool.size()); ++mask) {
    std::vector<int> s;
    for (size_t k = 0; k < pool.size(); ++k) {
      if (mask & (1u << k)) s.push_back(pool[k]);
    }
    out.push_back(s);
  }
  return out;
}

// Path-enumeration d-separation: walks every simple path in the skeleton and
// applies the collider / non-collider blocking rules directly.
bool PathDSeparated(const LinearSem& sem, int a, int b,
                    const std::vector<int>& s) {
  const int p = sem.p();
  std::vector<bool> in_s(p, false);
  for (int v : s) in_s[v] = true;
  std::vector<std::vector<bool>> reach(p, std::vector<bool>(p, false));
  for (int i = 0; i < p; ++i) {
    reach[i][i] = true;
    std::function<void(int)> dfs = [&](int v) {
      for (int c = 0; c < p; ++c) {
        if (sem.b(v, c) != 0.0 && !reach[i][c]) {
          reach[i][c] = true;
          dfs(c);
        }
      }
    };
    dfs(i);
  }
  const auto collider_open = [&](int v) {
    for (int d = 0; d < p; ++d) {
      if (reach[v][d] && in_s[d]) return true;
    }
    return false;
  };
  std::vector<int> path = {a};
  std::vector<bool> on_path(p, false);
  on_path[a] = true;
  bool connected = false;
  std::function<void(int)> extend = [&](int v) {
    if (connected) return;
    if (v == b) {
      for (size_t k = 1; k + 1 < path.size(); ++k) {
        const int prev = path[k - 1], mid = path[k], next = path[k + 1];
        const bool collider = sem.b(prev, mid) != 0.0 && sem.b(next, mid) != 0.0;
        if (collider ? !collider_open(mid) : in_s[mid]) return;
      }
      connected = true;
      return;
    }
    for (int w = 0; w < p; ++w) {
      if (on_path[w] || (sem.b(v, w) == 0.0 && sem.b(w, v) == 0.0)) continue;
      on_path[w] = true;
      path.push_back(w);
      extend(w);
      path.pop_back();
      on_path[w] = false;
    }
  };
  extend(a);
  return !connected;
}

RandomSemOptions SmallSemOptions() {
  RandomSemOptions o;
  o.p_min = 4;
  o.p_max = 6;
  return o;
}

LinearSem Chain() {
  return MakeSem(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {1, 1, 1});
}

// 0 = u, 1 = t, 2 = y with u observed.
LinearSem ConfoundedPair(double wu_t, double wu_y) {
  return MakeSem(3, {{0, 1, wu_t}, {0, 2, wu_y}, {1, 2, 1.5}}, {1, 1, 1});
}

TEST(SemCovarianceTest, NoEdgesGivesNoiseDiagonal) {
  LinearSem sem = MakeSem(4, {}, {0.5, 1, 2, 3});
  EXPECT_EQ(SemCovariance(sem), Matrix(sem.omega.asDiagonal()));
}

TEST(SemCovarianceTest, UnitChain) {
  const Matrix s = SemCovariance(Chain());
  EXPECT_NEAR(s(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(s(1, 1), 2.0, 1e-14);
  EXPECT_NEAR(s(2, 2), 3.0, 1e-14);
  EXPECT_NEAR(s(0, 2), 1.0, 1e-14);
  EXPECT_NEAR(s(1, 2), 2.0, 1e-14);
}

TEST(SemCovarianceTest, MatchesMonteCarlo) {
  const LinearSem sem = RandomSem(SmallSemOptions(), 3);
  const Matrix mc = SampleCovariance(SampleSem(sem, 200000, 17));
  EXPECT_LT((SemCovariance(sem) - mc).cwiseAbs().maxCoeff(), 0.02);
}

TEST(SemCovarianceTest, SymmetricPositiveDefiniteOnRandomSems) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Matrix s = SemCovariance(RandomSem(RandomSemOptions{}, seed));
    EXPECT_EQ(s, s.transpose());
    EXPECT_EQ(s.llt().info(), Eigen::Success) << "seed " << seed;
  }
}

TEST(SemCovarianceTest, RejectsCycles) {
  LinearSem sem = MakeSem(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {1, 1, 1});
  sem.b(2, 0) = 1.0;
  EXPECT_THROW(SemCovariance(sem), ConfigError);
  EXPECT_THROW(MakeSem(2, {}, {1.0, 0.0}), ConfigError);
}

TEST(ConditionalCovTest, EmptySetIsPlainCovariance) {
  const Matrix s = SemCovariance(Chain());
  EXPECT_EQ(ConditionalCov(s, 0, 2, {}), s(0, 2));
}

TEST(ConditionalCovTest, ChainMediatorScreensOff) {
  const int m[1] = {1};
  EXPECT_NEAR(ConditionalCov(SemCovariance(Chain()), 0, 2, m), 0.0, 1e-14);
}

TEST(ConditionalCovTest, MatchesResidualCovariance) {
  const LinearSem sem = RandomSem(SmallSemOptions(), 8);
  const Matrix v = SampleSem(sem, 200000, 5);
  const Matrix sigma = SemCovariance(sem);
  const int p = sem.p();
  const std::vector<int> s = {p - 1, p - 2};
  const int s_arr[2] = {p - 1, p - 2};
  for (int i = 0; i < p - 2; ++i) {
    for (int j = i; j < p - 2; ++j) {
      EXPECT_NEAR(ConditionalCov(sigma, i, j, s_arr),
                  ResidualCovariance(v, i, j, s), 0.02);
    }
  }
}

TEST(ConditionalCovTest, IllConditionedBlockReportsConditionNumber) {
  Matrix sigma = Matrix::Identity(4, 4);
  sigma(0, 1) = sigma(1, 0) = 1.0;
  const int s[2] = {0, 1};
  try {
    ConditionalCov(sigma, 2, 3, s);
    FAIL() << "expected a numeric error";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("condition number"), std::string::npos);
  }
  const int bad[1] = {2};
  EXPECT_THROW(ConditionalCov(sigma, 2, 3, bad), ConfigError);
}

TEST(InterveneTest, ParentlessTargetUnchanged) {
  const LinearSem sem = Chain();
  const LinearSem out = Intervene(sem, 0);
  EXPECT_EQ(out.b, sem.b);
  EXPECT_EQ(out.omega, sem.omega);
}

TEST(InterveneTest, TargetIndependentOfNonDescendants) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LinearSem sem = RandomSem(RandomSemOptions{}, seed);
    const int t = sem.roles.treatment;
    const LinearSem cut = Intervene(sem, t);
    const Matrix s = SemCovariance(cut);
    const std::vector<bool> desc = CausalGraph(cut).Descendants(t);
    for (int v = 0; v < sem.p(); ++v) {
      if (!desc[v]) EXPECT_NEAR(s(t, v), 0.0, 1e-12);
    }
    EXPECT_EQ(Intervene(cut, t).b, cut.b);
    EXPECT_EQ(cut.omega, sem.omega);
  }
}

TEST(InterveneTest, ConfoundingChangesTreatmentOutcomeCovariance) {
  const LinearSem sem = ConfoundedPair(0.7, -1.2);
  const double pre = SemCovariance(sem)(1, 2);
  const double post = SemCovariance(Intervene(sem, 1))(1, 2);
  // Hand-derived: pre = 1.5 (0.49 + 1) + 0.7 (-1.2), post = 1.5.
  EXPECT_NEAR(pre, 1.5 * 1.49 - 0.84, 1e-14);
  EXPECT_NEAR(post, 1.5, 1e-14);
  const LinearSem clean = ConfoundedPair(0.7, 0.0);
  EXPECT_NEAR(SemCovariance(clean)(1, 2) / SemCovariance(clean)(1, 1),
              SemCovariance(Intervene(clean, 1))(1, 2), 1e-14);
}

TEST(InterveneTest, SplitKeepsFactualTreatment) {
  const LinearSem sem = FourNodeConfounderSem();
  const LinearSem split = SplitIntervention(sem, sem.roles.treatment);
  ASSERT_EQ(split.p(), sem.p() + 1);
  const Matrix s = SemCovariance(sem);
  const Matrix ss = SemCovariance(split);
  EXPECT_NEAR(ss(2, 2), s(2, 2), 1e-14);
  EXPECT_NEAR(ss(4, 4), sem.omega[2], 1e-14);
  EXPECT_NEAR(ss(4, 2), 0.0, 1e-14);
  EXPECT_NEAR(ss(0, 2), s(0, 2), 1e-14);
  EXPECT_NEAR(ss(3, 4), 2.0 * ss(4, 4), 1e-14);
}

TEST(DSeparatedTest, TextbookCases) {
  CausalGraph chain(3);
  chain.AddEdge(0, 1);
  chain.AddEdge(1, 2);
  const int m[1] = {1};
  EXPECT_TRUE(DSeparated(chain, 0, 2, m));
  EXPECT_FALSE(DSeparated(chain, 0, 2, {}));
  CausalGraph collider(4);
  collider.AddEdge(0, 2);
  collider.AddEdge(1, 2);
  collider.AddEdge(2, 3);
  const int c[1] = {2};
  const int d[1] = {3};
  EXPECT_TRUE(DSeparated(collider, 0, 1, {}));
  EXPECT_FALSE(DSeparated(collider, 0, 1, c));
  EXPECT_FALSE(DSeparated(collider, 0, 1, d));
  EXPECT_THROW(DSeparated(chain, 0, 0, {}), ConfigError);
  EXPECT_THROW(DSeparated(chain, 0, 1, m), ConfigError);
}

TEST(DSeparatedTest, AgreesWithPathEnumeration) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const LinearSem sem = RandomSem(SmallSemOptions(), seed);
    const CausalGraph g(sem);
    for (int a = 0; a < sem.p(); ++a) {
      for (int b = a + 1; b < sem.p(); ++b) {
        std::vector<int> rest;
        for (int v = 0; v < sem.p(); ++v) {
          if (v != a && v != b) rest.push_back(v);
        }
        for (const auto& s : Subsets(rest)) {
          ASSERT_EQ(DSeparated(g, a, b, s), PathDSeparated(sem, a, b, s))
              << "seed " << seed << " pair " << a << "," << b;
        }
      }
    }
  }
}

TEST(DSeparatedTest, ImpliesZeroConditionalCovariance) {
  int connected = 0;
  int faithful = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const LinearSem sem = RandomSem(SmallSemOptions(), 100 + seed);
    const CausalGraph g(sem);
    const Matrix sigma = SemCovariance(sem);
    for (int a = 0; a < sem.p(); ++a) {
      for (int b = a + 1; b < sem.p(); ++b) {
        std::vector<int> rest;
        for (int v = 0; v < sem.p(); ++v) {
          if (v != a && v != b) rest.push_back(v);
        }
        for (const auto& s : Subsets(rest)) {
          const double c = std::abs(ConditionalCov(sigma, a, b, s));
          if (DSeparated(g, a, b, s)) {
            ASSERT_LT(c, 1e-10) << "seed " << seed;
          } else {
            ++connected;
            faithful += c > 1e-8 ? 1 : 0;
          }
        }
      }
    }
  }
  EXPECT_GE(faithful, 0.99 * connected);
}

TEST(IsValidBackdoorTest, TextbookCases) {
  const LinearSem sem = ConfoundedPair(1.0, 1.0);
  const CausalGraph g(sem);
  const int u[1] = {0};
  EXPECT_TRUE(IsValidBackdoor(g, 1, 2, u));
  EXPECT_FALSE(IsValidBackdoor(g, 1, 2, {}));
  // Mediator m: t -> m -> y.
  CausalGraph med(4);
  med.AddEdge(0, 1);
  med.AddEdge(0, 3);
  med.AddEdge(1, 2);
  med.AddEdge(2, 3);
  const int with_desc[2] = {0, 2};
  EXPECT_FALSE(IsValidBackdoor(med, 1, 3, with_desc));
}

TEST(IsValidBackdoorTest, AdjustmentRecoversInterventionalEffect) {
  int valid = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const LinearSem sem = RandomSem(SmallSemOptions(), 200 + seed);
    const int t = sem.roles.treatment;
    const int y = sem.roles.outcome;
    const CausalGraph g(sem);
    const Matrix sigma = SemCovariance(sem);
    const double truth = SemCovariance(Intervene(sem, t))(t, y) / sem.omega[t];
    for (const auto& z : Subsets(sem.ObservedCovariates())) {
      if (!IsValidBackdoor(g, t, y, z)) continue;
      ++valid;
      EXPECT_NEAR(RegressionAdjustedEffect(sigma, t, y, z), truth, 1e-8)
          << "seed " << seed;
    }
  }
  EXPECT_GT(valid, 50);
}

TEST(InvarianceScanTest, FourNodeConfounder) {
  const LinearSem sem = FourNodeConfounderSem();
  const auto rows = InvarianceScan(sem, 1e-3);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].z.empty());
  EXPECT_GE(std::abs(rows[0].premise_cov), 1e-3);
  EXPECT_FALSE(rows[0].premise_holds);
  EXPECT_FALSE(rows[0].conclusion_holds);
}

TEST(InvarianceScanTest, ObservedConfounderGivesExactInvariance) {
  // 0 = a, 1 = c, 2 = t, 3 = y with c confounding t and y.
  SemRoles roles;
  roles.anchor = 0;
  roles.treatment = 2;
  roles.outcome = 3;
  const LinearSem sem = MakeSem(
      4, {{0, 2, 0.97}, {1, 2, 0.6}, {1, 3, 1.1}, {2, 3, -0.8}}, {1, 1, 1, 1},
      roles);
  const auto rows = InvarianceScan(sem, 1e-6);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].premise_holds);
  EXPECT_EQ(rows[1].z, std::vector<int>{1});
  EXPECT_LT(std::abs(rows[1].premise_cov), 1e-10);
  EXPECT_LT(std::abs(rows[1].conclusion_cov), 1e-10);
}

TEST(InvarianceScanTest, DSeparatingSetsGiveZeroCovariances) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const LinearSem sem = RandomSem(RandomSemOptions{}, 300 + seed);
    const int t = sem.roles.treatment;
    const int y = sem.roles.outcome;
    const CausalGraph g(sem);
    for (const ScanRow& row : InvarianceScan(sem, 1e-3)) {
      std::vector<int> tz = {t};
      tz.insert(tz.end(), row.z.begin(), row.z.end());
      if (DSeparated(g, y, sem.roles.anchor, tz)) {
        EXPECT_LT(std::abs(row.premise_cov), 1e-10);
      }
      if (IsValidBackdoor(g, t, y, row.z)) {
        EXPECT_LT(std::abs(row.conclusion_cov), 1e-10);
      }
    }
  }
}

TEST(InvarianceScanTest, Guards) {
  LinearSem sem = RandomSem(RandomSemOptions{}, 1);
  EXPECT_THROW(InvarianceScan(sem, 1e-3, 3), ConfigError);
  EXPECT_THROW(InvarianceScan(sem, 0.0), ConfigError);
}

TEST(ValidateTheorem2Test, DeterministicAndJobIndependent) {
  TheoremTrialConfig config;
  config.trials = 12;
  config.seed = 4;
  const std::string a = TheoremReportCsv(ValidateTheorem2(config, 1));
  EXPECT_EQ(a, TheoremReportCsv(ValidateTheorem2(config, 1)));
  EXPECT_EQ(a, TheoremReportCsv(ValidateTheorem2(config, 3)));
  config.seed = 5;
  EXPECT_NE(a, TheoremReportCsv(ValidateTheorem2(config, 1)));
}

TEST(ValidateTheorem2Test, ZeroBetaHasNoViolations) {
  TheoremTrialConfig config;
  config.trials = 40;
  config.beta_max = 0.0;
  const TheoremReport r = ValidateTheorem2(config);
  EXPECT_EQ(r.violations, 0);
  EXPECT_EQ(r.violation_fraction, 0.0);
  EXPECT_GT(r.premise_pairs, 0);
}

TEST(ValidateTheorem2Test, ReportShape) {
  TheoremTrialConfig config;
  config.trials = 10;
  const TheoremReport r = ValidateTheorem2(config);
  ASSERT_EQ(r.rows.size(), 10u);
  int pairs = 0;
  for (const auto& row : r.rows) {
    EXPECT_GE(row.alpha_edge, config.alpha_min);
    EXPECT_LE(row.alpha_edge, 1.0);
    EXPECT_EQ(row.subsets, 1 << (row.p - 3 - row.num_hidden));
    pairs += row.subsets;
  }
  EXPECT_EQ(r.pairs, pairs);
  const std::string csv = TheoremReportCsv(r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
  EXPECT_NE(csv.find("\nsummary,"), std::string::npos);
}

TEST(ValidateTheorem2Test, RejectsOutOfRegimeConfig) {
  TheoremTrialConfig config;
  config.alpha_min = 0.5;
  EXPECT_THROW(ValidateTheorem2(config), ConfigError);
  config = {};
  config.beta_max = 0.3;
  EXPECT_THROW(ValidateTheorem2(config), ConfigError);
}

TEST(ValidateRolesTest, Guards) {
  const LinearSem ok = FourNodeConfounderSem();
  EXPECT_NO_THROW(ValidateRoles(ok));
  LinearSem sem = ok;
  sem.b(0, 2) = 0.0;
  EXPECT_THROW(ValidateRoles(sem), ConfigError);  // anchor edge missing
  sem = ok;
  sem.b(3, 0) = 1.0;
  EXPECT_THROW(ValidateRoles(sem), ConfigError);  // outcome has a child
  sem = ok;
  sem.b(0, 1) = 1.0;
  EXPECT_THROW(ValidateRoles(sem), ConfigError);  // hidden node has a parent
  sem = ok;
  sem.b(1, 0) = 1.0;
  EXPECT_THROW(ValidateRoles(sem), ConfigError);  // hidden node, 3 children
  sem = ok;
  sem.b(2, 0) = 1.0;
  sem.b(0, 2) = 0.0;
  EXPECT_THROW(ValidateRoles(sem), ConfigError);  // treatment has 2 children
}

TEST(SynthDatasetTest, RefusesMissingAnchorEdge) {
  LinearSem sem = FourNodeConfounderSem();
  sem.b(0, 2) = 0.0;
  EXPECT_THROW(SynthDataset(sem, 100, 1), ConfigError);
}

TEST(SynthDatasetTest, RandomizedDifferenceInMeansMatchesClosedForm) {
  const LinearSem sem = RandomSem(RandomSemOptions{}, 12);
  SynthOptions options;
  options.randomize_treatment = true;
  const SynthResult s = SynthDataset(sem, 100000, 3, options);
  const Dataset& d = s.data;
  double sum1 = 0, sum0 = 0, resid = 0;
  const int n1 = d.num_treated();
  for (int i = 0; i < d.n(); ++i) {
    (d.t[i] > 0.5 ? sum1 : sum0) += d.y[i];
    resid += d.y[i] - (d.t[i] > 0.5 ? (*d.mu1)[i] : (*d.mu0)[i]);
  }
  const double dim = sum1 / n1 - sum0 / (d.n() - n1);
  EXPECT_NEAR(dim, TotalEffect(sem, sem.roles.treatment, sem.roles.outcome),
              0.05);
  EXPECT_NEAR(resid / d.n(), 0.0, 0.05);
}

TEST(SynthDatasetTest, MedianThresholdAndHiddenColumns) {
  const LinearSem sem = FourNodeConfounderSem();
  const SynthResult s = SynthDataset(sem, 1001, 9);
  EXPECT_EQ(s.data.num_treated(), 500);
  EXPECT_EQ(s.data.d(), 1);
  EXPECT_EQ(s.data.feature_names, std::vector<std::string>{"a"});
  EXPECT_EQ(s.data.hidden_names, std::vector<std::string>{"u"});
  EXPECT_DOUBLE_EQ(s.true_ate, 2.0);
  double min_treated = 1e300, max_control = -1e300;
  for (int i = 0; i < s.data.n(); ++i) {
    if (s.data.t[i] > 0.5) {
      min_treated = std::min(min_treated, s.t_continuous[i]);
    } else {
      max_control = std::max(max_control, s.t_continuous[i]);
    }
  }
  EXPECT_GT(min_treated, max_control);
}

TEST(SynthDatasetTest, SeedsChangeDrawsNotMetadata) {
  const LinearSem sem = RandomSem(RandomSemOptions{}, 2);
  const SynthResult a = SynthDataset(sem, 50, 1);
  const SynthResult b = SynthDataset(sem, 50, 2);
  EXPECT_NE(a.data.y, b.data.y);
  EXPECT_EQ(a.data.feature_names, b.data.feature_names);
  EXPECT_EQ(a.covariate_nodes, b.covariate_nodes);
  EXPECT_EQ(a.true_ate, b.true_ate);
  EXPECT_EQ(SynthDataset(sem, 50, 1).data.x, a.data.x);
}

TEST(SemIoTest, RoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    LinearSem sem = RandomSem(RandomSemOptions{}, seed);
    if (seed % 2) sem.names.clear();
    else for (int i = 0; i < sem.p(); ++i) sem.names.push_back("n" + std::to_string(i));
    const LinearSem back = ParseSem(SerializeSem(sem));
    EXPECT_EQ(back.b, sem.b);
    EXPECT_EQ(back.omega, sem.omega);
    EXPECT_EQ(back.roles.treatment, sem.roles.treatment);
    EXPECT_EQ(back.roles.hidden, sem.roles.hidden);
    EXPECT_EQ(back.names, sem.names);
    EXPECT_EQ(SerializeSem(back), SerializeSem(sem));
  }
  const std::string path = ::testing::TempDir() + "causalmatch_sem.txt";
  SaveSem(FourNodeConfounderSem(), path);
  EXPECT_EQ(LoadSem(path).b, FourNodeConfounderSem().b);
}

TEST(SemIoTest, MalformedInput) {
  EXPECT_THROW(ParseSem(""), DataError);
  EXPECT_THROW(ParseSem("q 3\n"), DataError);
  std::string text = SerializeSem(FourNodeConfounderSem());
  EXPECT_THROW(ParseSem(text.substr(0, text.size() / 2)), DataError);
  EXPECT_THROW(LoadSem(::testing::TempDir() + "no_such_sem.txt"), DataError);
}

}  // namespace
}  // namespace causalmatch
