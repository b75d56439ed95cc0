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

#ifndef CAUSALMATCH_DOMAINS_H_
#define CAUSALMATCH_DOMAINS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "causalmatch/data.h"
#include "causalmatch/linalg.h"

namespace causalmatch {

// Synthetic environments derived from the anchor covariate. Row i is assigned
// to a domain drawn from softmax(theta * (a_i - mean(a))).
struct DomainConfig {
  int num_domains = 3;
  std::uint64_t seed = 0;
  // Length num_domains when set. When absent, entries are drawn from
  // Uniform(1, 2) and the middle entry (index ceil(m/2) - 1) is zero, which
  // for m = 3 gives (U(1,2), 0, U(1,2)).
  std::optional<std::vector<double>> theta;
};

struct DomainPartition {
  int num_domains = 0;
  std::vector<int> labels;                // per row, in [0, num_domains)
  std::vector<std::vector<int>> members;  // per domain, ascending row ids

  int NumNonEmpty() const;
};

std::vector<double> ResolveTheta(const DomainConfig& config);

// n x m matrix of per-row domain probabilities.
Matrix DomainProbabilities(const Vector& anchor_values,
                           const std::vector<double>& theta);

DomainPartition GenerateDomains(const Vector& anchor_values,
                                const DomainConfig& config);

// Builds a partition from explicit labels (e.g. for tests or user-supplied
// environments).
DomainPartition PartitionFromLabels(const std::vector<int>& labels,
                                    int num_domains);

struct GeneralPositionReport {
  int rank = 0;
  // True when the per-domain covariate means have full row rank and no
  // domain is empty.
  bool full_row_rank = false;
  std::vector<int> empty_domains;
  Matrix domain_means;  // one row per non-empty domain
};

// Advisory check only; never blocks training.
GeneralPositionReport CheckGeneralPosition(const Dataset& data,
                                           const DomainPartition& partition);

}  // namespace causalmatch

#endif  // CAUSALMATCH_DOMAINS_H_
