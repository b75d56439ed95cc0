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

#ifndef CAUSALMATCH_MLP_H_
#define CAUSALMATCH_MLP_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causalmatch/linalg.h"

namespace causalmatch {

enum class Activation { kElu, kRelu, kLinear };

std::string_view ToString(Activation a);
Activation ParseActivation(std::string_view name);

// One affine layer. `weight` is fan_in x fan_out so a batch maps as
// X * W + 1 b^T.
struct DenseLayer {
  Matrix weight;
  Vector bias;
};

// Parameters of a fully connected network. Hidden layers use `activation`
// followed by inverted dropout; the last layer uses `output_activation` and
// never drops.
struct MlpParams {
  std::vector<int> layer_dims;
  Activation activation = Activation::kElu;
  Activation output_activation = Activation::kLinear;
  double dropout_rate = 0.0;
  std::vector<DenseLayer> layers;

  int input_dim() const { return layer_dims.front(); }
  int output_dim() const { return layer_dims.back(); }
  int num_layers() const { return static_cast<int>(layers.size()); }
  size_t NumParameters() const;
};

// Same layout as MlpParams::layers.
using MlpGradients = std::vector<DenseLayer>;

struct ForwardTrace {
  Matrix input;
  std::vector<Matrix> pre_activations;
  // Layer outputs as fed to the next layer, i.e. after dropout.
  std::vector<Matrix> post_activations;
  // Empty matrices for layers without dropout; otherwise the scaled keep
  // mask (0 or 1/(1-rate)).
  std::vector<Matrix> dropout_masks;
};

struct ForwardResult {
  Matrix output;
  ForwardTrace trace;
};

struct BackwardResult {
  MlpGradients param_gradients;
  Matrix input_gradient;
};

struct LossResult {
  double loss = 0.0;
  Matrix gradient;
};

// Glorot-normal weights (variance 2 / (fan_in + fan_out)) and zero biases.
MlpParams InitParams(std::span<const int> layer_dims, Activation activation,
                     double dropout_rate, std::uint64_t seed,
                     Activation output_activation = Activation::kLinear);

// Train mode applies inverted dropout after every hidden activation with
// masks drawn from `seed`; eval mode is deterministic and seed-free.
ForwardResult Forward(const MlpParams& params, const Matrix& input,
                      bool train_mode, std::uint64_t seed);

// Eval-mode forward without keeping the trace.
Matrix Predict(const MlpParams& params, const Matrix& input);

// Exact reverse-mode gradients of the traced computation.
BackwardResult Backward(const MlpParams& params, const ForwardTrace& trace,
                        const Matrix& output_gradient);

// loss = (1/n) sum_i w_i ||pred_i - target_i||^2 over rows.
LossResult WeightedMse(const Matrix& pred, const Matrix& target,
                       const Vector& weights);

MlpGradients ZeroGradients(const MlpParams& params);
// params += scale * direction, layer by layer.
void AddScaled(MlpParams& params, const MlpGradients& direction, double scale);
void AddScaled(MlpGradients& acc, const MlpGradients& direction, double scale);
// a - b as a gradient-shaped difference.
MlpGradients Difference(const MlpParams& a, const MlpParams& b);

std::vector<double> Flatten(const MlpParams& params);
std::vector<double> Flatten(const MlpGradients& grads);
// Writes `values` into the parameter slots; returns the number consumed.
size_t Unflatten(std::span<const double> values, MlpParams& params);

// Throws ShapeError unless the layer shapes agree with layer_dims.
void ValidateParams(const MlpParams& params);

}  // namespace causalmatch

#endif  // CAUSALMATCH_MLP_H_
