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

#ifndef CAUSALMATCH_METRICS_H_
#define CAUSALMATCH_METRICS_H_

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "causalmatch/linalg.h"

namespace causalmatch {

// |mean(tau_hat) - true_ate|
double AteError(const Vector& tau_hat, double true_ate);

// sqrt(mean((tau_hat - tau_true)^2)); throws UnavailableError when tau_true is
// absent.
double SqrtPehe(const Vector& tau_hat, const std::optional<Vector>& tau_true);
double SqrtPehe(const Vector& tau_hat, const Vector& tau_true);

// |mean over treated rows of tau_hat - true_att|, optionally divided by
// |true_att|.
double AttError(const Vector& tau_hat, const Vector& t, double true_att,
                bool normalize);

struct AtcTerms {
  double true_atc = 0.0;  // mean_C(y) - mean_{T and E}(y)
  double threshold = 0.0; // mean_C(f(x,1) - f(x,0))
  double error = 0.0;     // |threshold - true_atc|
};

// C is the control set; T and E the treated rows flagged as randomized.
AtcTerms AtcError(const Vector& f0, const Vector& f1, const Vector& y,
                  const Vector& t, const std::vector<bool>& randomized);

// sqrt(mean((y_hat_factual - y)^2)).
double FactualRmse(const Vector& y_hat_factual, const Vector& y);

enum class SampleSplit { kWithin, kOut };
std::string_view ToString(SampleSplit s);

// Unavailable quantities stay empty and serialize as empty CSV cells.
struct MetricsReport {
  std::string run;
  std::string model;
  SampleSplit split = SampleSplit::kWithin;
  int n = 0;
  double ate_hat = 0.0;
  std::optional<double> ate_error;
  std::optional<double> sqrt_pehe;
  std::optional<double> att_error;
  std::optional<double> atc_error;
  double factual_rmse = 0.0;
};

std::string MetricsCsvHeader();
std::string ToCsvRow(const MetricsReport& report);

}  // namespace causalmatch

#endif  // CAUSALMATCH_METRICS_H_
