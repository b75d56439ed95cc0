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

#ifndef CAUSALMATCH_SEM_H_
#define CAUSALMATCH_SEM_H_

#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "causalmatch/data.h"
#include "causalmatch/linalg.h"
#include "causalmatch/random.h"

namespace causalmatch {

// Linear-Gaussian structural equation model over p nodes.
//
// Convention: B(i, j) is the weight of the edge i -> j, so node j obeys
//   V_j = sum_i B(i, j) V_i + e_j,   e ~ N(0, diag(omega)),
// i.e. V = B^T V + e and Cov(V) = (I - B^T)^{-1} diag(omega) (I - B)^{-1}.
struct SemRoles {
  int treatment = -1;
  int outcome = -1;
  int anchor = -1;
  std::vector<int> hidden;
};

struct LinearSem {
  Matrix b;
  Vector omega;
  SemRoles roles;
  std::vector<std::string> names;  // optional; empty means v0, v1, ...

  int p() const { return static_cast<int>(b.rows()); }
  std::string NodeName(int i) const;
  bool IsHidden(int i) const;
  std::vector<int> Parents(int i) const;
  std::vector<int> Children(int i) const;
  // Observed nodes other than treatment and outcome, ascending.
  std::vector<int> ObservedCovariates() const;
};

LinearSem MakeSem(int p, const std::vector<std::tuple<int, int, double>>& edges,
                  const std::vector<double>& omega, SemRoles roles = {});

// Throws ConfigError unless B is square, zero-diagonal and acyclic and every
// noise variance is positive.
void ValidateDag(const LinearSem& sem);

// Full model invariants: DAG, anchor -> treatment edge, the treatment's only
// child is the outcome, the outcome has no children, hidden nodes are roots
// with at most two children. Throws ConfigError naming the broken rule.
void ValidateRoles(const LinearSem& sem);

std::vector<int> TopologicalOrder(const LinearSem& sem);

// Directed graph view used by the separation oracles.
class CausalGraph {
 public:
  explicit CausalGraph(int n);
  explicit CausalGraph(const LinearSem& sem);

  void AddEdge(int from, int to);
  void RemoveOutgoing(int node);
  int size() const { return static_cast<int>(parents_.size()); }
  const std::vector<int>& parents(int i) const { return parents_[i]; }
  const std::vector<int>& children(int i) const { return children_[i]; }
  std::vector<bool> Descendants(int node) const;  // includes node itself
  std::vector<bool> Ancestors(std::span<const int> nodes) const;  // inclusive

 private:
  std::vector<std::vector<int>> parents_;
  std::vector<std::vector<int>> children_;
};

Matrix SemCovariance(const LinearSem& sem);

// Gaussian partial covariance Sigma_ij - Sigma_iS Sigma_SS^{-1} Sigma_Sj.
// Throws NumericError (with the condition number) when Sigma_SS is
// ill-conditioned.
double ConditionalCov(const Matrix& sigma, int i, int j,
                      std::span<const int> conditioning,
                      double max_condition = 1e12);

// Stochastic surgery: all edges into `target` are removed, its noise variance
// is kept.
LinearSem Intervene(const LinearSem& sem, int target);

// Keeps the natural `target` with its parents and appends an exogenous
// intervention node (index p, noise variance of the target) that takes over
// every outgoing edge of the target. Descendants of the target then carry
// their post-intervention distribution while the target keeps its
// observational one, so Cov(Y', T | Z) is well defined. The returned SEM's
// roles are copied; roles.treatment still names the natural node.
LinearSem SplitIntervention(const LinearSem& sem, int target);

// Sum over directed paths of edge-weight products from `from` to `to`.
double TotalEffect(const LinearSem& sem, int from, int to);

// Population OLS coefficient of `treatment` when regressing `outcome` on
// {treatment} and `adjustment`.
double RegressionAdjustedEffect(const Matrix& sigma, int treatment,
                                int outcome, std::span<const int> adjustment);

bool DSeparated(const CausalGraph& graph, int a, int b,
                std::span<const int> conditioning);

// Backdoor criterion for treatment -> outcome: no member of z descends from
// the treatment and z d-separates treatment and outcome once the treatment's
// outgoing edges are removed.
bool IsValidBackdoor(const CausalGraph& graph, int treatment, int outcome,
                     std::span<const int> z);

struct ScanRow {
  std::vector<int> z;
  double premise_cov = 0.0;       // Cov(Y, X_t | T, Z)
  double conclusion_cov = 0.0;    // Cov(Y', T | Z)
  double post_premise_cov = 0.0;  // Cov(Y', X_t | T, Z)
  bool premise_holds = false;     // |premise_cov| < epsilon
  bool conclusion_holds = false;  // |conclusion_cov| < epsilon
};

// Enumerates every Z drawn from the observed covariates without the anchor.
// Refuses SEMs with more than `max_nodes` nodes.
std::vector<ScanRow> InvarianceScan(const LinearSem& sem, double epsilon,
                                    int max_nodes = 12);

struct RandomSemOptions {
  int p_min = 4;
  int p_max = 8;
  double edge_prob = 0.4;
  double weight_lo = 0.5;  // |weight| ~ U(lo, hi) with a random sign
  double weight_hi = 1.5;
  double anchor_weight_lo = 0.5;
  double anchor_weight_hi = 1.5;
  // Magnitude of the other parents of the treatment, including hidden ones.
  double other_t_parent_lo = 0.5;
  double other_t_parent_hi = 1.5;
  double noise_lo = 0.5;
  double noise_hi = 1.5;
  double hidden_prob = 0.5;  // chance of one hidden confounder
};

// Random model satisfying ValidateRoles. Node labels are shuffled.
LinearSem RandomSem(const RandomSemOptions& options, std::uint64_t seed);

struct TheoremTrialConfig {
  int trials = 200;
  int p_min = 4;
  int p_max = 8;
  double epsilon = 0.01;
  double alpha_min = 0.95;  // anchor edge ~ U(alpha_min, 1)
  double beta_max = 0.05;   // other treatment parents |w| ~ U(0, beta_max)
  double edge_prob = 0.4;
  double hidden_prob = 0.5;
  std::uint64_t seed = 0;

  void Validate() const;
  RandomSemOptions ToSemOptions() const;
};

struct TheoremTrialRow {
  int trial = 0;
  int p = 0;
  int num_hidden = 0;
  double alpha_edge = 0.0;
  int subsets = 0;
  int premise_holds = 0;
  int violations = 0;      // premise held, |Cov(Y', T | Z)| >= epsilon
  int post_premise_breaches = 0;  // premise held, post-premise outside [0, epsilon)
  double max_conclusion_given_premise = 0.0;
};

struct TheoremReport {
  std::vector<TheoremTrialRow> rows;
  int pairs = 0;
  int premise_pairs = 0;
  int violations = 0;
  int post_premise_breaches = 0;
  double violation_fraction = 0.0;              // violations / pairs
  double violation_fraction_given_premise = 0.0;  // violations / premise_pairs
};

// Trials are independent and seeded by index; `jobs` > 1 evaluates them on
// worker threads and the merged report is identical to the serial one.
TheoremReport ValidateTheorem2(const TheoremTrialConfig& config, int jobs = 1);

std::string TheoremReportCsv(const TheoremReport& report);

struct SynthOptions {
  // Assign the binary treatment by a fair coin instead of thresholding the
  // structural treatment (a randomized experiment on the same model).
  bool randomize_treatment = false;
};

struct SynthResult {
  Dataset data;
  Vector t_continuous;
  double true_ate = 0.0;
  std::vector<int> covariate_nodes;  // SEM node of each covariate column
};

// n joint draws. The binary treatment is the structural treatment thresholded
// at its sample median and replaces it in every downstream equation. mu0/mu1
// are E[Y | do(T = t), X = x] from the mutilated model; hidden nodes are not
// emitted as covariates.
SynthResult SynthDataset(const LinearSem& sem, int n, std::uint64_t seed,
                         const SynthOptions& options = {});

// Anchor A -> T, hidden U -> T and U -> Y, T -> Y.
LinearSem FourNodeConfounderSem();

// Eight-node benchmark with one hidden confounder: anchor a and instruments
// z1, z2 drive t; hidden u drives t and y; x1, x2 affect y only; t -> y = 1.
// Adjusting for the instruments amplifies the confounding bias.
LinearSem HiddenConfounderBenchmarkSem();

// Text serialization:
//   p <count>
//   roles treatment=<i> outcome=<j> anchor=<k> hidden=<i,j,...|->
//   names <n0> <n1> ...          (optional)
//   edges <count>
//   <i> <j> <weight>             one line per nonzero B(i, j)
//   noise
//   <i> <sigma2>                 one line per node
std::string SerializeSem(const LinearSem& sem);
LinearSem ParseSem(const std::string& text);
void SaveSem(const LinearSem& sem, const std::string& path);
LinearSem LoadSem(const std::string& path);

}  // namespace causalmatch

#endif  // CAUSALMATCH_SEM_H_
