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

#ifndef CAUSALMATCH_DATA_H_
#define CAUSALMATCH_DATA_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "causalmatch/linalg.h"

namespace causalmatch {

// Observational dataset with optional semi-synthetic ground truth.
//
// CSV schema (header driven, column order free):
//   t, y_factual            required
//   y_cfactual, mu0, mu1    optional; mu0/mu1 must appear together
//   x_<name> ...            covariates, at least one
//   domain                  optional; written by the domain generator, ignored
//                           on load
struct Dataset {
  Matrix x;
  Vector t;  // 0.0 / 1.0
  Vector y;
  std::optional<Vector> y_cfactual;
  std::optional<Vector> mu0;
  std::optional<Vector> mu1;
  int anchor_index = 0;
  std::vector<std::string> feature_names;  // without the x_ prefix
  // Covariates removed by InduceConfounding; they act as hidden confounders.
  std::vector<std::string> hidden_names;

  int n() const { return static_cast<int>(x.rows()); }
  int d() const { return static_cast<int>(x.cols()); }
  bool has_ground_truth() const { return mu0.has_value() && mu1.has_value(); }
  int num_treated() const;

  // mu1 - mu0; throws UnavailableError without ground truth.
  Vector TrueIte() const;
  // Covariates without the anchor column.
  Matrix CovariatesWithoutAnchor() const;
  Dataset Subset(std::span<const int> rows) const;
  int FeatureIndex(const std::string& name) const;  // -1 when absent

  // Throws DataError describing the first violated invariant.
  void Validate() const;
};

Dataset LoadCsv(const std::string& path, const std::string& anchor_name);

// Values are written in shortest round-trip form, so LoadCsv(SaveCsv(d))
// reproduces every double bit for bit. `domains`, when given, is appended as
// an integer `domain` column.
void SaveCsv(const Dataset& data, const std::string& path,
             const std::vector<int>* domains = nullptr);

Dataset InduceConfounding(const Dataset& data,
                          const std::vector<std::string>& drop_names);

struct SplitResult {
  Dataset train;
  Dataset test;
  std::vector<int> train_rows;
  std::vector<int> test_rows;
};

// Row-level random partition; round(ratio * n) rows go to train. Reshuffles
// until the training part holds both treatment arms, up to `max_retries`.
SplitResult Split(const Dataset& data, double ratio, std::uint64_t seed,
                  int max_retries = 100);

// Shortest round-trip decimal text for a double.
std::string FormatDouble(double v);

}  // namespace causalmatch

#endif  // CAUSALMATCH_DATA_H_
