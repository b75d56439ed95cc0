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

#ifndef CAUSALMATCH_IPM_H_
#define CAUSALMATCH_IPM_H_

#include <string_view>

#include "causalmatch/linalg.h"

namespace causalmatch {

// Integral probability metrics between two point sets (rows are samples),
// returned together with the gradient of the value with respect to every
// point of both sets.

enum class IpmKind { kLinearMmd, kRbfMmd, kSinkhorn };

std::string_view ToString(IpmKind kind);
IpmKind ParseIpmKind(std::string_view name);

struct IpmResult {
  double value = 0.0;
  Matrix grad_a;
  Matrix grad_b;
  bool converged = true;  // only meaningful for Sinkhorn
  int iterations = 0;
};

struct SinkhornOptions {
  double reg = 0.1;
  int max_iters = 500;
  double tol = 1e-6;
};

struct IpmOptions {
  IpmKind kind = IpmKind::kLinearMmd;
  double sigma = 0.1;  // RBF bandwidth
  SinkhornOptions sinkhorn;
};

// ||mean(a) - mean(b)||^2.
IpmResult LinearMmd(const Matrix& a, const Matrix& b);

// Biased V-statistic with k(x, y) = exp(-||x - y||^2 / (2 sigma^2)).
IpmResult RbfMmd(const Matrix& a, const Matrix& b, double sigma);

// Entropic optimal transport with squared Euclidean ground cost and uniform
// marginals, solved by log-domain Sinkhorn scaling. The value is
// <P, C> + reg * KL(P || r c^T) at the returned plan P, which is zero only when
// the sets coincide as singletons and is bounded by reg * log|a| for a == b.
// Gradients treat P as fixed (envelope theorem).
IpmResult SinkhornWasserstein(const Matrix& a, const Matrix& b,
                              const SinkhornOptions& options);

IpmResult ComputeIpm(const Matrix& a, const Matrix& b, const IpmOptions& options);

}  // namespace causalmatch

#endif  // CAUSALMATCH_IPM_H_
