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

#include "causalmatch/sem.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <thread>

#include "causalmatch/errors.h"

namespace causalmatch {
namespace {

Matrix SubMatrix(const Matrix& m, std::span<const int> rows,
                 std::span<const int> cols) {
  Matrix out(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  }
  return out;
}

bool Contains(std::span<const int> set, int v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

double SignedUniform(Rng& rng, double lo, double hi) {
  const double mag = std::uniform_real_distribution<double>(lo, hi)(rng);
  return std::bernoulli_distribution(0.5)(rng) ? mag : -mag;
}

}  // namespace

std::string LinearSem::NodeName(int i) const {
  if (i >= 0 && i < static_cast<int>(names.size()) && !names[i].empty()) {
    return names[i];
  }
  return "v" + std::to_string(i);
}

bool LinearSem::IsHidden(int i) const { return Contains(roles.hidden, i); }

std::vector<int> LinearSem::Parents(int i) const {
  std::vector<int> out;
  for (int k = 0; k < p(); ++k) {
    if (b(k, i) != 0.0) out.push_back(k);
  }
  return out;
}

std::vector<int> LinearSem::Children(int i) const {
  std::vector<int> out;
  for (int k = 0; k < p(); ++k) {
    if (b(i, k) != 0.0) out.push_back(k);
  }
  return out;
}

std::vector<int> LinearSem::ObservedCovariates() const {
  std::vector<int> out;
  for (int k = 0; k < p(); ++k) {
    if (k != roles.treatment && k != roles.outcome && !IsHidden(k)) {
      out.push_back(k);
    }
  }
  return out;
}

LinearSem MakeSem(int p, const std::vector<std::tuple<int, int, double>>& edges,
                  const std::vector<double>& omega, SemRoles roles) {
  if (p < 1) throw ConfigError("SEM needs at least one node");
  if (static_cast<int>(omega.size()) != p) {
    throw ConfigError("SEM needs one noise variance per node");
  }
  LinearSem sem;
  sem.b = Matrix::Zero(p, p);
  for (const auto& [from, to, w] : edges) {
    if (from < 0 || from >= p || to < 0 || to >= p) {
      throw ConfigError("edge endpoint out of range");
    }
    sem.b(from, to) = w;
  }
  sem.omega = Eigen::Map<const Vector>(omega.data(), p);
  sem.roles = std::move(roles);
  ValidateDag(sem);
  return sem;
}

std::vector<int> TopologicalOrder(const LinearSem& sem) {
  const int p = sem.p();
  std::vector<int> indegree(p, 0);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) indegree[j] += sem.b(i, j) != 0.0 ? 1 : 0;
  }
  std::deque<int> ready;
  for (int j = 0; j < p; ++j) {
    if (indegree[j] == 0) ready.push_back(j);
  }
  std::vector<int> order;
  while (!ready.empty()) {
    const int i = ready.front();
    ready.pop_front();
    order.push_back(i);
    for (int j = 0; j < p; ++j) {
      if (sem.b(i, j) != 0.0 && --indegree[j] == 0) ready.push_back(j);
    }
  }
  if (static_cast<int>(order.size()) != p) {
    throw ConfigError("SEM edge matrix contains a directed cycle");
  }
  return order;
}

void ValidateDag(const LinearSem& sem) {
  const int p = sem.p();
  if (sem.b.cols() != p) throw ConfigError("SEM edge matrix is not square");
  if (sem.omega.size() != p) {
    throw ConfigError("SEM noise vector length differs from node count");
  }
  if (!sem.b.allFinite()) throw ConfigError("SEM edge weights must be finite");
  for (int i = 0; i < p; ++i) {
    if (sem.b(i, i) != 0.0) {
      throw ConfigError("SEM self-loop at node " + sem.NodeName(i));
    }
    if (!(sem.omega[i] > 0.0) || !std::isfinite(sem.omega[i])) {
      throw ConfigError("noise variance of " + sem.NodeName(i) +
                        " must be positive");
    }
  }
  TopologicalOrder(sem);
}

void ValidateRoles(const LinearSem& sem) {
  ValidateDag(sem);
  const int p = sem.p();
  const auto& r = sem.roles;
  const auto in_range = [p](int i) { return i >= 0 && i < p; };
  if (!in_range(r.treatment) || !in_range(r.outcome) || !in_range(r.anchor)) {
    throw ConfigError("SEM roles must name treatment, outcome and anchor");
  }
  if (r.treatment == r.outcome || r.treatment == r.anchor ||
      r.outcome == r.anchor) {
    throw ConfigError("treatment, outcome and anchor must be distinct nodes");
  }
  for (int h : r.hidden) {
    if (!in_range(h)) throw ConfigError("hidden node index out of range");
    if (h == r.treatment || h == r.outcome || h == r.anchor) {
      throw ConfigError("treatment, outcome and anchor must be observed");
    }
    if (!sem.Parents(h).empty()) {
      throw ConfigError("hidden node " + sem.NodeName(h) + " has parents");
    }
    if (sem.Children(h).size() > 2) {
      throw ConfigError("hidden node " + sem.NodeName(h) +
                        " has more than two children");
    }
  }
  if (sem.b(r.anchor, r.treatment) == 0.0) {
    throw ConfigError("anchor " + sem.NodeName(r.anchor) +
                      " has no direct edge to the treatment");
  }
  const std::vector<int> t_children = sem.Children(r.treatment);
  if (t_children.size() != 1 || t_children[0] != r.outcome) {
    throw ConfigError("the treatment's only child must be the outcome");
  }
  if (!sem.Children(r.outcome).empty()) {
    throw ConfigError("the outcome must not have children");
  }
}

CausalGraph::CausalGraph(int n) : parents_(n), children_(n) {}

CausalGraph::CausalGraph(const LinearSem& sem) : CausalGraph(sem.p()) {
  for (int i = 0; i < sem.p(); ++i) {
    for (int j = 0; j < sem.p(); ++j) {
      if (sem.b(i, j) != 0.0) AddEdge(i, j);
    }
  }
}

void CausalGraph::AddEdge(int from, int to) {
  if (from < 0 || from >= size() || to < 0 || to >= size() || from == to) {
    throw ConfigError("invalid graph edge");
  }
  if (!Contains(children_[from], to)) {
    children_[from].push_back(to);
    parents_[to].push_back(from);
  }
}

void CausalGraph::RemoveOutgoing(int node) {
  for (int c : children_[node]) {
    auto& ps = parents_[c];
    ps.erase(std::remove(ps.begin(), ps.end(), node), ps.end());
  }
  children_[node].clear();
}

std::vector<bool> CausalGraph::Descendants(int node) const {
  std::vector<bool> seen(size(), false);
  std::vector<int> stack = {node};
  seen[node] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int c : children_[v]) {
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
    }
  }
  return seen;
}

std::vector<bool> CausalGraph::Ancestors(std::span<const int> nodes) const {
  std::vector<bool> seen(size(), false);
  std::vector<int> stack(nodes.begin(), nodes.end());
  for (int v : nodes) seen[v] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int q : parents_[v]) {
      if (!seen[q]) {
        seen[q] = true;
        stack.push_back(q);
      }
    }
  }
  return seen;
}

Matrix SemCovariance(const LinearSem& sem) {
  ValidateDag(sem);
  const int p = sem.p();
  const Matrix k = Matrix::Identity(p, p) - sem.b.transpose();
  // (I - B^T) is unit-triangular up to a permutation, hence invertible.
  const Matrix a = k.fullPivLu().inverse();
  Matrix sigma = a * sem.omega.asDiagonal() * a.transpose();
  sigma = 0.5 * (sigma + sigma.transpose()).eval();
  return sigma;
}

double ConditionalCov(const Matrix& sigma, int i, int j,
                      std::span<const int> conditioning,
                      double max_condition) {
  if (Contains(conditioning, i) || Contains(conditioning, j)) {
    throw ConfigError("conditional_cov: conditioning set contains i or j");
  }
  if (conditioning.empty()) return sigma(i, j);
  const Matrix s_ss = SubMatrix(sigma, conditioning, conditioning);
  const double cond = ConditionNumber(s_ss);
  if (!(cond <= max_condition)) {
    std::ostringstream os;
    os << "conditional_cov: conditioning block is ill-conditioned (condition "
          "number "
       << cond << ")";
    throw NumericError(os.str());
  }
  const int ij[2] = {i, j};
  const Matrix s_qs = SubMatrix(sigma, ij, conditioning);
  const Eigen::VectorXd x = s_ss.ldlt().solve(s_qs.row(1).transpose());
  return sigma(i, j) - s_qs.row(0).dot(x);
}

LinearSem Intervene(const LinearSem& sem, int target) {
  if (target < 0 || target >= sem.p()) {
    throw ConfigError("intervention target out of range");
  }
  LinearSem out = sem;
  out.b.col(target).setZero();
  return out;
}

LinearSem SplitIntervention(const LinearSem& sem, int target) {
  const int p = sem.p();
  if (target < 0 || target >= p) {
    throw ConfigError("intervention target out of range");
  }
  LinearSem out;
  out.b = Matrix::Zero(p + 1, p + 1);
  out.b.topLeftCorner(p, p) = sem.b;
  out.b.row(p).head(p) = sem.b.row(target);
  out.b.row(target).setZero();
  out.omega.resize(p + 1);
  out.omega.head(p) = sem.omega;
  out.omega[p] = sem.omega[target];
  out.roles = sem.roles;
  out.names = sem.names;
  if (!out.names.empty()) {
    out.names.resize(p);
    out.names.push_back("do(" + sem.NodeName(target) + ")");
  }
  return out;
}

double TotalEffect(const LinearSem& sem, int from, int to) {
  const int p = sem.p();
  const Matrix k = Matrix::Identity(p, p) - sem.b.transpose();
  const Matrix a = k.fullPivLu().inverse();
  return a(to, from);
}

double RegressionAdjustedEffect(const Matrix& sigma, int treatment,
                                int outcome, std::span<const int> adjustment) {
  std::vector<int> regressors = {treatment};
  regressors.insert(regressors.end(), adjustment.begin(), adjustment.end());
  const Matrix s_rr = SubMatrix(sigma, regressors, regressors);
  const int y[1] = {outcome};
  const Matrix s_ry = SubMatrix(sigma, regressors, y);
  const Eigen::VectorXd coef = s_rr.ldlt().solve(s_ry.col(0));
  return coef[0];
}

bool DSeparated(const CausalGraph& graph, int a, int b,
                std::span<const int> conditioning) {
  if (a == b) throw ConfigError("d_separated: a and b must differ");
  if (Contains(conditioning, a) || Contains(conditioning, b)) {
    throw ConfigError("d_separated: a or b inside the conditioning set");
  }
  const int n = graph.size();
  std::vector<bool> observed(n, false);
  for (int v : conditioning) observed[v] = true;
  const std::vector<bool> anc = graph.Ancestors(conditioning);

  // Reachability over (node, arrived-from-child) states: a trail through a
  // non-collider passes when the node is unobserved, through a collider when
  // the node has an observed descendant (i.e. is an ancestor of the set).
  std::vector<std::array<bool, 2>> visited(n, {false, false});
  std::vector<std::pair<int, bool>> stack = {{a, true}};
  while (!stack.empty()) {
    auto [v, from_child] = stack.back();
    stack.pop_back();
    if (visited[v][from_child ? 1 : 0]) continue;
    visited[v][from_child ? 1 : 0] = true;
    if (v == b) return false;
    if (from_child) {
      if (observed[v]) continue;
      for (int q : graph.parents(v)) stack.emplace_back(q, true);
      for (int c : graph.children(v)) stack.emplace_back(c, false);
    } else {
      if (!observed[v]) {
        for (int c : graph.children(v)) stack.emplace_back(c, false);
      }
      if (anc[v]) {
        for (int q : graph.parents(v)) stack.emplace_back(q, true);
      }
    }
  }
  return true;
}

bool IsValidBackdoor(const CausalGraph& graph, int treatment, int outcome,
                     std::span<const int> z) {
  if (Contains(z, treatment) || Contains(z, outcome)) return false;
  const std::vector<bool> desc = graph.Descendants(treatment);
  for (int v : z) {
    if (desc[v]) return false;
  }
  CausalGraph cut = graph;
  cut.RemoveOutgoing(treatment);
  return DSeparated(cut, treatment, outcome, z);
}

std::vector<ScanRow> InvarianceScan(const LinearSem& sem, double epsilon,
                                    int max_nodes) {
  if (sem.p() > max_nodes) {
    throw ConfigError("invariance_scan: " + std::to_string(sem.p()) +
                      " nodes exceed the enumeration guard of " +
                      std::to_string(max_nodes));
  }
  if (!(epsilon > 0.0)) throw ConfigError("invariance_scan: epsilon <= 0");
  ValidateRoles(sem);
  const int t = sem.roles.treatment;
  const int y = sem.roles.outcome;
  const int anchor = sem.roles.anchor;
  const Matrix sigma = SemCovariance(sem);
  const Matrix sigma_post = SemCovariance(SplitIntervention(sem, t));

  std::vector<int> candidates;
  for (int v : sem.ObservedCovariates()) {
    if (v != anchor) candidates.push_back(v);
  }
  const int k = static_cast<int>(candidates.size());
  std::vector<ScanRow> rows;
  rows.reserve(size_t{1} << k);
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    ScanRow row;
    for (int bit = 0; bit < k; ++bit) {
      if (mask & (1u << bit)) row.z.push_back(candidates[bit]);
    }
    std::vector<int> t_and_z = {t};
    t_and_z.insert(t_and_z.end(), row.z.begin(), row.z.end());
    row.premise_cov = ConditionalCov(sigma, y, anchor, t_and_z);
    row.conclusion_cov = ConditionalCov(sigma_post, y, t, row.z);
    row.post_premise_cov = ConditionalCov(sigma_post, y, anchor, t_and_z);
    row.premise_holds = std::abs(row.premise_cov) < epsilon;
    row.conclusion_holds = std::abs(row.conclusion_cov) < epsilon;
    rows.push_back(std::move(row));
  }
  return rows;
}

LinearSem RandomSem(const RandomSemOptions& o, std::uint64_t seed) {
  if (o.p_min < 4 || o.p_max < o.p_min) {
    throw ConfigError("random SEM needs 4 <= p_min <= p_max");
  }
  Rng rng = MakeRng(seed, {0x5e3});
  const int p = std::uniform_int_distribution<int>(o.p_min, o.p_max)(rng);
  const bool hidden = std::bernoulli_distribution(o.hidden_prob)(rng);
  const int num_hidden = hidden ? 1 : 0;
  const int num_cov = p - 2 - num_hidden;
  // Canonical layout: [hidden][covariates...][T][Y]; covariate 0 is the
  // anchor.
  const int first_cov = num_hidden;
  const int t = p - 2;
  const int y = p - 1;
  Matrix b = Matrix::Zero(p, p);
  std::bernoulli_distribution edge(o.edge_prob);
  const auto weight = [&] { return SignedUniform(rng, o.weight_lo, o.weight_hi); };
  const auto t_parent_weight = [&] {
    return SignedUniform(rng, o.other_t_parent_lo, o.other_t_parent_hi);
  };
  for (int i = first_cov; i < first_cov + num_cov; ++i) {
    for (int j = i + 1; j < first_cov + num_cov; ++j) {
      if (edge(rng)) b(i, j) = weight();
    }
  }
  b(first_cov, t) =
      std::uniform_real_distribution<double>(o.anchor_weight_lo,
                                             o.anchor_weight_hi)(rng);
  for (int i = first_cov + 1; i < first_cov + num_cov; ++i) {
    if (edge(rng)) b(i, t) = t_parent_weight();
  }
  for (int i = first_cov; i < first_cov + num_cov; ++i) {
    if (edge(rng)) b(i, y) = weight();
  }
  b(t, y) = weight();
  if (hidden) {
    std::vector<int> pool;
    for (int v = first_cov; v < p; ++v) pool.push_back(v);
    std::shuffle(pool.begin(), pool.end(), rng);
    for (int c = 0; c < 2; ++c) {
      b(0, pool[c]) = pool[c] == t ? t_parent_weight() : weight();
    }
  }

  Vector omega(p);
  std::uniform_real_distribution<double> noise(o.noise_lo, o.noise_hi);
  for (int i = 0; i < p; ++i) omega[i] = noise(rng);

  std::vector<int> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  LinearSem sem;
  sem.b = Matrix::Zero(p, p);
  sem.omega.resize(p);
  for (int i = 0; i < p; ++i) {
    sem.omega[perm[i]] = omega[i];
    for (int j = 0; j < p; ++j) sem.b(perm[i], perm[j]) = b(i, j);
  }
  // Zero-magnitude draws (e.g. a zero cap) must not count as edges.
  sem.b = sem.b.unaryExpr([](double w) { return w == 0.0 ? 0.0 : w; });
  sem.roles.treatment = perm[t];
  sem.roles.outcome = perm[y];
  sem.roles.anchor = perm[first_cov];
  if (hidden) sem.roles.hidden.push_back(perm[0]);
  ValidateRoles(sem);
  return sem;
}

void TheoremTrialConfig::Validate() const {
  if (trials < 1) throw ConfigError("trials must be positive");
  if (p_min < 4 || p_max < p_min || p_max > 12) {
    throw ConfigError("need 4 <= p_min <= p_max <= 12");
  }
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(alpha_min >= 0.9 && alpha_min <= 1.0)) {
    throw ConfigError("alpha_min must lie in [0.9, 1]");
  }
  if (!(beta_max >= 0.0 && beta_max <= 0.1)) {
    throw ConfigError("beta_max must lie in [0, 0.1]");
  }
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0) ||
      !(hidden_prob >= 0.0 && hidden_prob <= 1.0)) {
    throw ConfigError("probabilities must lie in [0, 1]");
  }
}

RandomSemOptions TheoremTrialConfig::ToSemOptions() const {
  RandomSemOptions o;
  o.p_min = p_min;
  o.p_max = p_max;
  o.edge_prob = edge_prob;
  o.hidden_prob = hidden_prob;
  o.anchor_weight_lo = alpha_min;
  o.anchor_weight_hi = 1.0;
  o.other_t_parent_lo = 0.0;
  o.other_t_parent_hi = beta_max;
  return o;
}

namespace {

TheoremTrialRow RunTheoremTrial(const TheoremTrialConfig& config, int trial) {
  const LinearSem sem =
      RandomSem(config.ToSemOptions(),
                MixSeed(config.seed, {0x7a1, static_cast<std::uint64_t>(trial)}));
  TheoremTrialRow row;
  row.trial = trial;
  row.p = sem.p();
  row.num_hidden = static_cast<int>(sem.roles.hidden.size());
  row.alpha_edge = sem.b(sem.roles.anchor, sem.roles.treatment);
  for (const ScanRow& s : InvarianceScan(sem, config.epsilon)) {
    ++row.subsets;
    if (!s.premise_holds) continue;
    ++row.premise_holds;
    row.max_conclusion_given_premise =
        std::max(row.max_conclusion_given_premise, std::abs(s.conclusion_cov));
    if (!s.conclusion_holds) ++row.violations;
    const bool flipped = std::abs(s.post_premise_cov) > 1e-12 &&
                         std::abs(s.premise_cov) > 1e-12 &&
                         (s.post_premise_cov > 0) != (s.premise_cov > 0);
    if (std::abs(s.post_premise_cov) >= config.epsilon || flipped) {
      ++row.post_premise_breaches;
    }
  }
  return row;
}

}  // namespace

TheoremReport ValidateTheorem2(const TheoremTrialConfig& config, int jobs) {
  config.Validate();
  TheoremReport report;
  report.rows.resize(config.trials);
  const int workers = std::clamp(jobs, 1, config.trials);
  if (workers == 1) {
    for (int i = 0; i < config.trials; ++i) {
      report.rows[i] = RunTheoremTrial(config, i);
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < config.trials; i = next++) {
          report.rows[i] = RunTheoremTrial(config, i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& r : report.rows) {
    report.pairs += r.subsets;
    report.premise_pairs += r.premise_holds;
    report.violations += r.violations;
    report.post_premise_breaches += r.post_premise_breaches;
  }
  report.violation_fraction =
      report.pairs > 0 ? static_cast<double>(report.violations) / report.pairs
                       : 0.0;
  report.violation_fraction_given_premise =
      report.premise_pairs > 0
          ? static_cast<double>(report.violations) / report.premise_pairs
          : 0.0;
  return report;
}

std::string TheoremReportCsv(const TheoremReport& report) {
  std::ostringstream os;
  os << "row_type,trial,p,num_hidden,alpha_edge,subsets,premise_holds,"
        "violations,post_premise_breaches,max_conclusion_given_premise,"
        "violation_fraction,violation_fraction_given_premise\n";
  for (const auto& r : report.rows) {
    os << "trial," << r.trial << ',' << r.p << ',' << r.num_hidden << ','
       << FormatDouble(r.alpha_edge) << ',' << r.subsets << ','
       << r.premise_holds << ',' << r.violations << ',' << r.post_premise_breaches
       << ',' << FormatDouble(r.max_conclusion_given_premise) << ",,\n";
  }
  os << "summary,,,,," << report.pairs << ',' << report.premise_pairs << ','
     << report.violations << ',' << report.post_premise_breaches << ",,"
     << FormatDouble(report.violation_fraction) << ','
     << FormatDouble(report.violation_fraction_given_premise) << '\n';
  return os.str();
}

SynthResult SynthDataset(const LinearSem& sem, int n, std::uint64_t seed,
                         const SynthOptions& options) {
  ValidateRoles(sem);
  if (n < 2) throw ConfigError("synth_dataset needs n >= 2");
  const int p = sem.p();
  const int t_node = sem.roles.treatment;
  const int y_node = sem.roles.outcome;
  const std::vector<int> order = TopologicalOrder(sem);
  const std::vector<bool> downstream = CausalGraph(sem).Descendants(t_node);

  Rng rng = MakeRng(seed, {0x5d47});
  Matrix noise(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) {
      noise(i, j) =
          std::normal_distribution<double>(0.0, std::sqrt(sem.omega[j]))(rng);
    }
  }
  Matrix v = Matrix::Zero(n, p);
  const auto evaluate = [&](int node) {
    v.col(node) = noise.col(node);
    for (int q = 0; q < p; ++q) {
      if (sem.b(q, node) != 0.0) v.col(node) += sem.b(q, node) * v.col(q);
    }
  };
  for (int node : order) {
    if (!downstream[node] || node == t_node) evaluate(node);
  }

  SynthResult out;
  out.t_continuous = v.col(t_node);
  Vector t(n);
  if (options.randomize_treatment) {
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < n; ++i) t[i] = coin(rng) ? 1.0 : 0.0;
  } else {
    std::vector<double> sorted(out.t_continuous.data(),
                               out.t_continuous.data() + n);
    std::sort(sorted.begin(), sorted.end());
    const double median =
        n % 2 == 1 ? sorted[n / 2]
                   : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    for (int i = 0; i < n; ++i) t[i] = out.t_continuous[i] > median ? 1.0 : 0.0;
  }
  v.col(t_node) = t;
  for (int node : order) {
    if (downstream[node] && node != t_node) evaluate(node);
  }

  out.covariate_nodes = sem.ObservedCovariates();
  out.true_ate = TotalEffect(sem, t_node, y_node);
  Dataset& d = out.data;
  d.x.resize(n, static_cast<Eigen::Index>(out.covariate_nodes.size()));
  for (size_t k = 0; k < out.covariate_nodes.size(); ++k) {
    const int node = out.covariate_nodes[k];
    d.x.col(k) = v.col(node);
    d.feature_names.push_back(sem.NodeName(node));
    if (node == sem.roles.anchor) d.anchor_index = static_cast<int>(k);
  }
  d.t = t;
  d.y = v.col(y_node);
  for (int h : sem.roles.hidden) d.hidden_names.push_back(sem.NodeName(h));

  // E[Y | do(T = 0), X = x] is linear in x under the mutilated model, where T
  // is independent of the covariates.
  const Matrix sigma_mut = SemCovariance(Intervene(sem, t_node));
  const int y_idx[1] = {y_node};
  const Matrix s_xx =
      SubMatrix(sigma_mut, out.covariate_nodes, out.covariate_nodes);
  const Matrix s_xy = SubMatrix(sigma_mut, out.covariate_nodes, y_idx);
  const Eigen::VectorXd coef = s_xx.ldlt().solve(s_xy.col(0));
  d.mu0 = d.x * coef;
  d.mu1 = *d.mu0 + Vector::Constant(n, out.true_ate);
  d.y_cfactual = d.y + out.true_ate * (Vector::Ones(n) - 2.0 * t);
  return out;
}

LinearSem FourNodeConfounderSem() {
  // 0 = a (anchor), 1 = u (hidden), 2 = t, 3 = y
  SemRoles roles;
  roles.anchor = 0;
  roles.hidden = {1};
  roles.treatment = 2;
  roles.outcome = 3;
  LinearSem sem = MakeSem(
      4, {{0, 2, 0.95}, {1, 2, 0.8}, {1, 3, 1.0}, {2, 3, 2.0}},
      {1.0, 1.0, 1.0, 1.0}, roles);
  sem.names = {"a", "u", "t", "y"};
  ValidateRoles(sem);
  return sem;
}

LinearSem HiddenConfounderBenchmarkSem() {
  // 0 = a, 1 = u (hidden), 2 = z1, 3 = z2, 4 = x1, 5 = x2, 6 = t, 7 = y
  SemRoles roles;
  roles.anchor = 0;
  roles.hidden = {1};
  roles.treatment = 6;
  roles.outcome = 7;
  LinearSem sem = MakeSem(8,
                          {{0, 6, 1.0},
                           {1, 6, 1.0},
                           {1, 7, 1.0},
                           {2, 6, 1.0},
                           {3, 6, 1.0},
                           {4, 7, 1.0},
                           {5, 7, 0.5},
                           {6, 7, 1.0}},
                          std::vector<double>(8, 1.0), roles);
  sem.names = {"a", "u", "z1", "z2", "x1", "x2", "t", "y"};
  ValidateRoles(sem);
  return sem;
}

}  // namespace causalmatch
