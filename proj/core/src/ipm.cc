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

#include "causalmatch/ipm.h"

#include <cmath>
#include <string>

#include "causalmatch/errors.h"

namespace causalmatch {
namespace {

void CheckSets(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() == 0 || b.rows() == 0) {
    throw DegenerateError(std::string(what) + ": empty point set");
  }
  if (a.cols() != b.cols()) {
    throw ShapeError(std::string(what) + ": dimension " +
                     std::to_string(a.cols()) + " vs " +
                     std::to_string(b.cols()));
  }
}

Matrix SquaredDistances(const Matrix& a, const Matrix& b) {
  const Vector an = a.rowwise().squaredNorm();
  const Vector bn = b.rowwise().squaredNorm();
  Matrix d = -2.0 * (a * b.transpose());
  d.colwise() += an;
  d.rowwise() += bn.transpose();
  return d.cwiseMax(0.0);
}

// Sum over kernel block of k(x_i, y_j) and the gradient of that sum with
// respect to each x_i.
void KernelBlock(const Matrix& x, const Matrix& y, double sigma, double* sum,
                 Matrix* grad_x) {
  const double inv_two_s2 = 1.0 / (2.0 * sigma * sigma);
  const Matrix k = (-inv_two_s2 * SquaredDistances(x, y)).array().exp().matrix();
  *sum = k.sum();
  // d/dx_i sum_j k_ij = sum_j k_ij * (-(x_i - y_j) / sigma^2)
  const double inv_s2 = 1.0 / (sigma * sigma);
  Matrix g = k * y;
  g -= k.rowwise().sum().asDiagonal() * x;
  *grad_x = inv_s2 * g;
}

double LogSumExp(const Eigen::Ref<const Vector>& v) {
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

}  // namespace

std::string_view ToString(IpmKind kind) {
  switch (kind) {
    case IpmKind::kLinearMmd:
      return "linear_mmd";
    case IpmKind::kRbfMmd:
      return "rbf_mmd";
    case IpmKind::kSinkhorn:
      return "sinkhorn";
  }
  return "linear_mmd";
}

IpmKind ParseIpmKind(std::string_view name) {
  if (name == "linear_mmd") return IpmKind::kLinearMmd;
  if (name == "rbf_mmd") return IpmKind::kRbfMmd;
  if (name == "sinkhorn") return IpmKind::kSinkhorn;
  throw ConfigError("unknown IPM '" + std::string(name) +
                    "' (expected linear_mmd, rbf_mmd or sinkhorn)");
}

IpmResult LinearMmd(const Matrix& a, const Matrix& b) {
  CheckSets(a, b, "linear_mmd");
  const Eigen::RowVectorXd diff = a.colwise().mean() - b.colwise().mean();
  IpmResult r;
  r.value = diff.squaredNorm();
  r.grad_a = Matrix(a.rows(), a.cols());
  r.grad_b = Matrix(b.rows(), b.cols());
  r.grad_a.rowwise() = (2.0 / static_cast<double>(a.rows())) * diff;
  r.grad_b.rowwise() = (-2.0 / static_cast<double>(b.rows())) * diff;
  return r;
}

IpmResult RbfMmd(const Matrix& a, const Matrix& b, double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("rbf_mmd: sigma must be positive");
  CheckSets(a, b, "rbf_mmd");
  const double na = static_cast<double>(a.rows());
  const double nb = static_cast<double>(b.rows());
  double s_aa = 0.0, s_bb = 0.0, s_ab = 0.0, s_ba = 0.0;
  Matrix g_aa, g_bb, g_ab, g_ba;
  KernelBlock(a, a, sigma, &s_aa, &g_aa);
  KernelBlock(b, b, sigma, &s_bb, &g_bb);
  KernelBlock(a, b, sigma, &s_ab, &g_ab);
  KernelBlock(b, a, sigma, &s_ba, &g_ba);
  IpmResult r;
  r.value = s_aa / (na * na) + s_bb / (nb * nb) - 2.0 * s_ab / (na * nb);
  // Each self-kernel term depends on x_i through both arguments.
  r.grad_a = (2.0 / (na * na)) * g_aa - (2.0 / (na * nb)) * g_ab;
  r.grad_b = (2.0 / (nb * nb)) * g_bb - (2.0 / (na * nb)) * g_ba;
  return r;
}

IpmResult SinkhornWasserstein(const Matrix& a, const Matrix& b,
                              const SinkhornOptions& options) {
  if (!(options.reg > 0.0)) throw ConfigError("sinkhorn: reg must be positive");
  if (options.max_iters < 1) throw ConfigError("sinkhorn: max_iters < 1");
  if (!(options.tol > 0.0)) throw ConfigError("sinkhorn: tol must be positive");
  CheckSets(a, b, "sinkhorn");
  const Eigen::Index na = a.rows();
  const Eigen::Index nb = b.rows();
  const double reg = options.reg;
  const double log_r = -std::log(static_cast<double>(na));
  const double log_c = -std::log(static_cast<double>(nb));
  const Matrix cost = SquaredDistances(a, b);

  // Plan P_ij = r_i c_j exp((f_i + g_j - C_ij) / eps). The potentials are
  // warm-started through a geometric schedule eps = max(C), max(C)/2, ...,
  // reg, which keeps the iteration count manageable for small reg.
  Vector f = Vector::Zero(na);
  Vector g = Vector::Zero(nb);
  IpmResult r;
  r.converged = false;
  Vector scratch_b(nb), scratch_a(na);
  auto iterate = [&](double eps, double tol, int budget) {
    for (int it = 1; it <= budget; ++it) {
      for (Eigen::Index i = 0; i < na; ++i) {
        scratch_b = (g.transpose() - cost.row(i)) / eps;
        f[i] = -eps * (log_c + LogSumExp(scratch_b));
      }
      for (Eigen::Index j = 0; j < nb; ++j) {
        scratch_a = (f - cost.col(j)) / eps;
        g[j] = -eps * (log_r + LogSumExp(scratch_a));
      }
      ++r.iterations;
      // Columns are exact after the g update; measure the row marginals.
      double violation = 0.0;
      for (Eigen::Index i = 0; i < na; ++i) {
        scratch_b = (g.transpose() - cost.row(i)) / eps;
        const double row_mass =
            std::exp(log_r + log_c + f[i] / eps + LogSumExp(scratch_b));
        violation += std::abs(row_mass - std::exp(log_r));
      }
      if (violation < tol) return true;
    }
    return false;
  };
  int remaining = options.max_iters;
  for (double eps = cost.maxCoeff(); eps > 2.0 * reg && remaining > 1; eps *= 0.5) {
    iterate(eps, std::max(options.tol, 1e-3), std::min(remaining - 1, 100));
    remaining = options.max_iters - r.iterations;
  }
  r.converged = iterate(reg, options.tol, std::max(remaining, 1));

  Matrix plan(na, nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < nb; ++j) {
      plan(i, j) = std::exp(log_r + log_c + (f[i] + g[j] - cost(i, j)) / reg);
    }
  }
  // Generalized KL keeps the value nonnegative for a slightly unbalanced plan.
  const double q = std::exp(log_r + log_c);
  double kl = 0.0;
  for (Eigen::Index k = 0; k < plan.size(); ++k) {
    const double p = plan.data()[k];
    kl += (p > 0.0 ? p * std::log(p / q) : 0.0) - p + q;
  }
  r.value = plan.cwiseProduct(cost).sum() + reg * std::max(kl, 0.0);

  // d/da_i sum_j P_ij ||a_i - b_j||^2 = 2 (rowmass_i a_i - sum_j P_ij b_j).
  r.grad_a = 2.0 * (plan.rowwise().sum().asDiagonal() * a - plan * b);
  r.grad_b = 2.0 * (plan.colwise().sum().transpose().asDiagonal() * b -
                    plan.transpose() * a);
  return r;
}

IpmResult ComputeIpm(const Matrix& a, const Matrix& b,
                     const IpmOptions& options) {
  switch (options.kind) {
    case IpmKind::kLinearMmd:
      return LinearMmd(a, b);
    case IpmKind::kRbfMmd:
      return RbfMmd(a, b, options.sigma);
    case IpmKind::kSinkhorn:
      return SinkhornWasserstein(a, b, options.sinkhorn);
  }
  return LinearMmd(a, b);
}

}  // namespace causalmatch
