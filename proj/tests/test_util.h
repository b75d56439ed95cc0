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

#ifndef CAUSALMATCH_TESTS_TEST_UTIL_H_
#define CAUSALMATCH_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "causalmatch/linalg.h"
#include "causalmatch/random.h"

namespace causalmatch::testing {

inline Matrix RandomMatrix(int rows, int cols, Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  return m;
}

inline Vector RandomBinary(int n, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  Vector t(n);
  for (int i = 0; i < n; ++i) t[i] = coin(rng) ? 1.0 : 0.0;
  if (n >= 2) {
    t[0] = 1.0;
    t[1] = 0.0;
  }
  return t;
}

// Central differences of f at x, one coordinate at a time.
inline std::vector<double> NumericGradient(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h = 1e-5) {
  std::vector<double> g(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const double x0 = x[i];
    x[i] = x0 + h;
    const double up = f(x);
    x[i] = x0 - h;
    const double down = f(x);
    x[i] = x0;
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

// Largest entrywise |a - b| / max(|a|, |b|, floor).
inline double MaxRelativeError(const std::vector<double>& a,
                               const std::vector<double>& b,
                               double floor = 1e-6) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({std::abs(a[i]), std::abs(b[i]), floor});
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

inline std::vector<double> ToStd(const Matrix& m) {
  return std::vector<double>(m.data(), m.data() + m.size());
}

inline Matrix FromStd(const std::vector<double>& v, int rows, int cols) {
  Matrix m(rows, cols);
  std::copy(v.begin(), v.end(), m.data());
  return m;
}

}  // namespace causalmatch::testing

#endif  // CAUSALMATCH_TESTS_TEST_UTIL_H_
