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

#include "causalmatch/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "causalmatch/errors.h"

namespace causalmatch {

Matrix SelectRows(const Matrix& m, std::span<const int> rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (size_t i = 0; i < rows.size(); ++i) out.row(i) = m.row(rows[i]);
  return out;
}

Vector SelectRows(const Vector& v, std::span<const int> rows) {
  Vector out(static_cast<Eigen::Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) out[i] = v[rows[i]];
  return out;
}

Matrix DropColumn(const Matrix& m, int col) {
  const int c = col;
  return DropColumns(m, std::span<const int>(&c, 1));
}

Matrix DropColumns(const Matrix& m, std::span<const int> cols) {
  std::vector<int> keep;
  for (int j = 0; j < m.cols(); ++j) {
    if (std::find(cols.begin(), cols.end(), j) == cols.end()) keep.push_back(j);
  }
  Matrix out(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (size_t k = 0; k < keep.size(); ++k) out.col(k) = m.col(keep[k]);
  return out;
}

bool AllFinite(const Matrix& m) { return m.allFinite(); }
bool AllFinite(const Vector& v) { return v.allFinite(); }

void CheckSameShape(const Matrix& a, const Matrix& b,
                    const std::string& context) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(context + ": shape " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " vs " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

int NumericalRank(const Matrix& m, double relative_threshold) {
  if (m.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(relative_threshold);
  return static_cast<int>(qr.rank());
}

double ConditionNumber(const Matrix& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double smallest = s[s.size() - 1];
  if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
  return s[0] / smallest;
}

std::vector<int> IndicesWhere(const Vector& v, bool nonzero) {
  std::vector<int> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if ((v[i] != 0.0) == nonzero) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace causalmatch
