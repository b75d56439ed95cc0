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

#include "causalmatch/domains.h"

#include <cmath>

#include "causalmatch/errors.h"
#include "causalmatch/random.h"

namespace causalmatch {

int DomainPartition::NumNonEmpty() const {
  int k = 0;
  for (const auto& m : members) k += m.empty() ? 0 : 1;
  return k;
}

std::vector<double> ResolveTheta(const DomainConfig& config) {
  const int m = config.num_domains;
  if (m < 2) throw ConfigError("num_domains must be at least 2");
  if (config.theta) {
    if (static_cast<int>(config.theta->size()) != m) {
      throw ConfigError("theta has " + std::to_string(config.theta->size()) +
                        " entries, expected " + std::to_string(m));
    }
    for (double v : *config.theta) {
      if (!std::isfinite(v)) throw ConfigError("theta must be finite");
    }
    return *config.theta;
  }
  Rng rng = MakeRng(config.seed, {0x7e7a});
  std::uniform_real_distribution<double> unif(1.0, 2.0);
  std::vector<double> theta(m);
  for (double& v : theta) v = unif(rng);
  theta[(m + 1) / 2 - 1] = 0.0;
  return theta;
}

Matrix DomainProbabilities(const Vector& anchor_values,
                           const std::vector<double>& theta) {
  if (anchor_values.size() == 0) {
    throw ConfigError("domain generation needs at least one anchor value");
  }
  const double mean = anchor_values.mean();
  const int m = static_cast<int>(theta.size());
  Matrix p(anchor_values.size(), m);
  for (Eigen::Index i = 0; i < anchor_values.size(); ++i) {
    const double centered = anchor_values[i] - mean;
    double max_logit = -INFINITY;
    for (int k = 0; k < m; ++k) {
      max_logit = std::max(max_logit, theta[k] * centered);
    }
    double total = 0.0;
    for (int k = 0; k < m; ++k) {
      p(i, k) = std::exp(theta[k] * centered - max_logit);
      total += p(i, k);
    }
    p.row(i) /= total;
  }
  return p;
}

DomainPartition GenerateDomains(const Vector& anchor_values,
                                const DomainConfig& config) {
  const std::vector<double> theta = ResolveTheta(config);
  const Matrix probs = DomainProbabilities(anchor_values, theta);
  const int m = config.num_domains;
  std::vector<int> labels(anchor_values.size());
  for (Eigen::Index i = 0; i < anchor_values.size(); ++i) {
    Rng rng = MakeRng(config.seed, {0xd0a1, static_cast<std::uint64_t>(i)});
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double cumulative = 0.0;
    int label = m - 1;
    for (int k = 0; k < m; ++k) {
      cumulative += probs(i, k);
      if (u < cumulative) {
        label = k;
        break;
      }
    }
    labels[i] = label;
  }
  return PartitionFromLabels(labels, m);
}

DomainPartition PartitionFromLabels(const std::vector<int>& labels,
                                    int num_domains) {
  if (num_domains < 1) throw ConfigError("num_domains must be positive");
  DomainPartition p;
  p.num_domains = num_domains;
  p.labels = labels;
  p.members.resize(num_domains);
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    if (labels[i] < 0 || labels[i] >= num_domains) {
      throw ConfigError("domain label " + std::to_string(labels[i]) +
                        " out of range at row " + std::to_string(i));
    }
    p.members[labels[i]].push_back(i);
  }
  return p;
}

GeneralPositionReport CheckGeneralPosition(const Dataset& data,
                                           const DomainPartition& partition) {
  if (static_cast<int>(partition.labels.size()) != data.n()) {
    throw ShapeError("partition covers " +
                     std::to_string(partition.labels.size()) +
                     " rows, dataset has " + std::to_string(data.n()));
  }
  GeneralPositionReport r;
  std::vector<int> non_empty;
  for (int k = 0; k < partition.num_domains; ++k) {
    if (partition.members[k].empty()) {
      r.empty_domains.push_back(k);
    } else {
      non_empty.push_back(k);
    }
  }
  r.domain_means.resize(static_cast<Eigen::Index>(non_empty.size()), data.d());
  for (size_t row = 0; row < non_empty.size(); ++row) {
    const auto& members = partition.members[non_empty[row]];
    r.domain_means.row(row) = SelectRows(data.x, members).colwise().mean();
  }
  r.rank = NumericalRank(r.domain_means);
  r.full_row_rank =
      r.empty_domains.empty() && r.rank == partition.num_domains;
  return r;
}

}  // namespace causalmatch
