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

#ifndef CAUSALMATCH_TRAINER_H_
#define CAUSALMATCH_TRAINER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causalmatch/data.h"
#include "causalmatch/domains.h"
#include "causalmatch/ipm.h"
#include "causalmatch/linalg.h"
#include "causalmatch/mlp.h"
#include "causalmatch/random.h"

namespace causalmatch {

// Two-phase treatment-effect learner.
//
// Phase 1 (gradient matching) trains the representation phi on synthetic
// domains with first-order inter-domain gradient matching: per outer
// iteration the weights are cloned, the clone takes one SGD step on a batch
// from each domain in random order, and the original moves a fraction
// `fish_step` towards the adapted clone. A small stub head that sees
// [phi(x), t] supplies the outcome loss and is adapted jointly.
//
// Phase 2 (covariate matching) freezes phi and trains gamma_net plus the two
// outcome heads on the factual loss, penalising an IPM between the treated
// and control representations gamma(phi(x)).

enum class TrainMode { kSequential, kAlternating };
enum class FishSign {
  kTowardAdapted,  // W <- W + eps (W_adapted - W)
  kPaperLiteral,   // W <- W + eps (W - W_adapted)
};

std::string_view ToString(TrainMode m);
TrainMode ParseTrainMode(std::string_view s);
std::string_view ToString(FishSign s);
FishSign ParseFishSign(std::string_view s);

struct NetworkConfig {
  int hidden_width = 48;
  int rep_layers = 3;   // layers in phi and in gamma_net
  int head_layers = 3;  // layers in each outcome head
  double dropout = 0.145;
  Activation activation = Activation::kElu;
};

struct TrainConfig {
  int fish_iters = 1000;       // outer gradient-matching iterations
  double fish_inner_lr = 1e-3; // per-domain SGD rate on the clone
  double fish_step = 0.5;      // interpolation towards the clone, in (0, 1]
  double cfr_lr = 1e-4;
  double ipm_weight = 10.0;    // 0 gives the TARNet objective
  double weight_decay = 0.5;   // L2 on head weights: V -= lr * 2 * lambda * V
  int batch_size = 100;
  IpmOptions ipm;
  double lr_decay = 0.97;      // per-epoch multiplier of cfr_lr
  int epochs = 1000;
  TrainMode mode = TrainMode::kSequential;
  FishSign fish_sign = FishSign::kTowardAdapted;
  NetworkConfig net;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct ModelBundle {
  MlpParams phi;        // representation trained by gradient matching
  MlpParams gamma_net;  // covariate-matching representation
  MlpParams head0;      // outcome head for t = 0
  MlpParams head1;      // outcome head for t = 1

  void Validate() const;
};

ModelBundle MakeBundle(int input_dim, const NetworkConfig& net,
                       std::uint64_t seed);
// Head used only while matching gradients; input is [phi(x), t].
MlpParams MakeFishStub(int rep_dim, const NetworkConfig& net,
                       std::uint64_t seed);

// Initial networks of a training run, derived from config.seed.
ModelBundle InitialBundle(int input_dim, const TrainConfig& config);
MlpParams InitialStub(const TrainConfig& config);

struct SampleWeights {
  double u = 0.0;
  Vector w;
};

// u = mean(t); w_i = t_i / (2u) + (1 - t_i) / (2(1 - u)).
SampleWeights ComputeSampleWeights(const Vector& t);

// z-scores non-binary covariates and standardizes the outcome.
struct Preprocessor {
  Vector x_mean;
  Vector x_scale;
  double y_mean = 0.0;
  double y_scale = 1.0;

  static Preprocessor Identity(int d);
  static Preprocessor Fit(const Matrix& x, const Vector& y);
  Matrix TransformX(const Matrix& x) const;
  Vector TransformY(const Vector& y) const;
};

// Network-ready arrays: covariates without the anchor, preprocessed outcome
// and balancing weights.
struct PreparedData {
  Matrix x;
  Vector t;
  Vector y;
  Vector w;
  int n() const { return static_cast<int>(x.rows()); }
};

PreparedData PrepareData(const Dataset& data, const Preprocessor& prep);

struct LogRow {
  int epoch = 0;
  std::string phase;  // "fish" or "cfr"
  double loss = 0.0;
  std::optional<double> ipm_value;
  double lr = 0.0;
};

std::string TrainingLogCsv(const std::vector<LogRow>& log);

// Rows of `members` used for one domain batch: all of them (in order) when
// batch_size covers the domain, otherwise a uniform sample without
// replacement.
std::vector<int> SampleBatch(std::span<const int> members, int batch_size,
                             Rng& rng);

struct FishState {
  MlpParams phi;
  MlpParams stub;
};

// Clone of `state` after one SGD step at rate fish_inner_lr on a batch from
// each non-empty domain, visited in a random order. `mean_loss` receives the
// mean inner-step loss.
FishState AdaptClone(const DomainPartition& partition, const PreparedData& data,
                     const FishState& state, const TrainConfig& config,
                     int iteration, double* mean_loss = nullptr);

// Moves `state` by fish_step along the configured fish_sign direction.
void Interpolate(FishState& state, FishState adapted, const TrainConfig& config);

// AdaptClone followed by Interpolate; returns the mean inner-step loss.
double FishIteration(const DomainPartition& partition, const PreparedData& data,
                     FishState& state, const TrainConfig& config,
                     int iteration);

struct FishResult {
  FishState state;
  std::vector<LogRow> log;
  std::vector<std::string> warnings;
};

FishResult FishPhase(const DomainPartition& partition, const PreparedData& data,
                     FishState state, const TrainConfig& config);

struct IdgmOracleResult {
  double loss = 0.0;
  double erm_loss = 0.0;
  // sum over ordered pairs i != j of G_i . G_j
  double pair_sum = 0.0;
  std::vector<std::vector<double>> domain_gradients;
  // Central differences of `loss` over the flattened [phi, stub] parameters.
  std::vector<double> gradient;
};

// Exact evaluation of the inter-domain gradient matching objective
//   L_erm(all rows) - gamma * 2 / (S (S - 1)) * sum_{i != j} G_i . G_j,
// with G_k the full-domain gradient of the weighted loss. Evaluated without
// dropout. Oracle-scale only: refuses more than `max_params` parameters.
IdgmOracleResult IdgmLossOracle(const DomainPartition& partition,
                                const PreparedData& data, const FishState& state,
                                double gamma_weight, bool with_gradient = true,
                                double fd_step = 1e-5, size_t max_params = 500);

struct CfrStepStats {
  double loss = 0.0;
  std::optional<double> ipm_value;  // empty when a treatment arm is missing
};

// One covariate-matching update on the given batch rows with rate `lr`.
// Dropout in gamma_net, head0 and head1 uses MixSeed(dropout_seed, {0}),
// {1} and {2} respectively; phi runs in eval mode.
CfrStepStats CfrStep(ModelBundle& bundle, const PreparedData& data,
                     std::span<const int> rows, const TrainConfig& config,
                     double lr, std::uint64_t dropout_seed);

// One shuffled pass over the data at rate cfr_lr * lr_decay^epoch.
LogRow CfrEpoch(ModelBundle& bundle, const PreparedData& data,
                const TrainConfig& config, int epoch);

struct CfrResult {
  ModelBundle bundle;
  std::vector<LogRow> log;
};

CfrResult CfrPhase(const PreparedData& data, ModelBundle bundle,
                   const TrainConfig& config);

// Eval-mode effect head1(gamma(phi(x))) - head0(gamma(phi(x))) on network
// inputs (preprocessed, anchor removed).
Vector PredictIte(const ModelBundle& bundle, const Matrix& x);

struct PotentialOutcomes {
  Vector f0;
  Vector f1;
};

struct TrainedModel {
  ModelBundle bundle;
  Preprocessor prep;

  // Predictions on the original outcome scale from raw covariates.
  PotentialOutcomes PredictOutcomes(const Dataset& data) const;
  Vector PredictIte(const Dataset& data) const;
};

struct TrainResult {
  TrainedModel model;
  std::vector<LogRow> log;
  DomainPartition partition;
  GeneralPositionReport general_position;
  std::vector<std::string> warnings;
};

// Full pipeline on a training set: preprocessing, sample weights, domain
// generation from the anchor, then both phases per config.mode.
TrainResult Train(const Dataset& data, const TrainConfig& config,
                  const DomainConfig& domain_config);

// Model label following the usual naming: Seq-M-/Alt-M- prefix when gradient
// matching runs, CFR when the IPM weight is nonzero, TAR otherwise.
std::string ModelLabel(const TrainConfig& config);

std::string SerializeModel(const TrainedModel& model);
TrainedModel ParseModel(const std::string& text);

}  // namespace causalmatch

#endif  // CAUSALMATCH_TRAINER_H_
