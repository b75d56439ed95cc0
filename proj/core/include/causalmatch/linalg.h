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

#ifndef CAUSALMATCH_LINALG_H_
#define CAUSALMATCH_LINALG_H_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace causalmatch {

// Dense storage is row-major so a sample is a contiguous row.
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

Matrix SelectRows(const Matrix& m, std::span<const int> rows);
Vector SelectRows(const Vector& v, std::span<const int> rows);
Matrix DropColumn(const Matrix& m, int col);
Matrix DropColumns(const Matrix& m, std::span<const int> cols);

bool AllFinite(const Matrix& m);
bool AllFinite(const Vector& v);

// Throws ShapeError with `context` when the shapes differ.
void CheckSameShape(const Matrix& a, const Matrix& b, const std::string& context);

// Numerical rank via column-pivoting QR with a relative threshold.
int NumericalRank(const Matrix& m, double relative_threshold = 1e-10);

// 2-norm condition number from the singular values (inf when singular).
double ConditionNumber(const Matrix& m);

// Indices i with v[i] != 0 (or == 0 when `nonzero` is false).
std::vector<int> IndicesWhere(const Vector& v, bool nonzero);

}  // namespace causalmatch

#endif  // CAUSALMATCH_LINALG_H_
