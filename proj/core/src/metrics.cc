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

#include "causalmatch/metrics.h"

#include <cmath>
#include <sstream>

#include "causalmatch/data.h"
#include "causalmatch/errors.h"

namespace causalmatch {
namespace {

std::string Cell(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

}  // namespace

double AteError(const Vector& tau_hat, double true_ate) {
  if (tau_hat.size() == 0) throw DegenerateError("ate_error: empty input");
  return std::abs(tau_hat.mean() - true_ate);
}

double SqrtPehe(const Vector& tau_hat, const std::optional<Vector>& tau_true) {
  if (!tau_true) {
    throw UnavailableError("sqrt_pehe needs ground-truth treatment effects");
  }
  return SqrtPehe(tau_hat, *tau_true);
}

double SqrtPehe(const Vector& tau_hat, const Vector& tau_true) {
  if (tau_hat.size() != tau_true.size()) {
    throw ShapeError("sqrt_pehe: length mismatch");
  }
  if (tau_hat.size() == 0) throw DegenerateError("sqrt_pehe: empty input");
  return std::sqrt((tau_hat - tau_true).squaredNorm() /
                   static_cast<double>(tau_hat.size()));
}

double AttError(const Vector& tau_hat, const Vector& t, double true_att,
                bool normalize) {
  if (tau_hat.size() != t.size()) throw ShapeError("att_error: length mismatch");
  double sum = 0.0;
  int count = 0;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    if (t[i] == 1.0) {
      sum += tau_hat[i];
      ++count;
    }
  }
  if (count == 0) throw DegenerateError("att_error: no treated rows");
  const double raw = std::abs(sum / count - true_att);
  if (!normalize) return raw;
  if (true_att == 0.0) {
    throw DegenerateError("att_error: cannot normalize by a zero true ATT");
  }
  return raw / std::abs(true_att);
}

AtcTerms AtcError(const Vector& f0, const Vector& f1, const Vector& y,
                  const Vector& t, const std::vector<bool>& randomized) {
  const Eigen::Index n = y.size();
  if (f0.size() != n || f1.size() != n || t.size() != n ||
      static_cast<Eigen::Index>(randomized.size()) != n) {
    throw ShapeError("atc_error: length mismatch");
  }
  double y_c = 0.0, y_te = 0.0, effect_c = 0.0;
  int n_c = 0, n_te = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (t[i] == 0.0) {
      y_c += y[i];
      effect_c += f1[i] - f0[i];
      ++n_c;
    } else if (randomized[i]) {
      y_te += y[i];
      ++n_te;
    }
  }
  if (n_c == 0) throw DegenerateError("atc_error: empty control set");
  if (n_te == 0) {
    throw DegenerateError("atc_error: no randomized treated rows");
  }
  AtcTerms r;
  r.true_atc = y_c / n_c - y_te / n_te;
  r.threshold = effect_c / n_c;
  r.error = std::abs(r.threshold - r.true_atc);
  return r;
}

double FactualRmse(const Vector& y_hat_factual, const Vector& y) {
  if (y_hat_factual.size() != y.size()) {
    throw ShapeError("factual_rmse: length mismatch");
  }
  if (y.size() == 0) throw DegenerateError("factual_rmse: empty input");
  return std::sqrt((y_hat_factual - y).squaredNorm() /
                   static_cast<double>(y.size()));
}

std::string_view ToString(SampleSplit s) {
  return s == SampleSplit::kWithin ? "within" : "out";
}

std::string MetricsCsvHeader() {
  return "run,model,split,n,ate_hat,ate_error,sqrt_pehe,att_error,atc_error,"
         "factual_rmse";
}

std::string ToCsvRow(const MetricsReport& r) {
  std::ostringstream os;
  os << r.run << ',' << r.model << ',' << ToString(r.split) << ',' << r.n << ','
     << FormatDouble(r.ate_hat) << ',' << Cell(r.ate_error) << ','
     << Cell(r.sqrt_pehe) << ',' << Cell(r.att_error) << ','
     << Cell(r.atc_error) << ',' << FormatDouble(r.factual_rmse);
  return os.str();
}

}  // namespace causalmatch
