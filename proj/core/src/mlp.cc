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

#include "causalmatch/mlp.h"

#include <cmath>

#include "causalmatch/errors.h"
#include "causalmatch/random.h"

namespace causalmatch {
namespace {

Matrix Activate(Activation a, const Matrix& pre) {
  switch (a) {
    case Activation::kElu:
      return pre.unaryExpr(
          [](double v) { return v > 0.0 ? v : std::expm1(v); });
    case Activation::kRelu:
      return pre.cwiseMax(0.0);
    case Activation::kLinear:
      return pre;
  }
  return pre;
}

Matrix ActivationDerivative(Activation a, const Matrix& pre) {
  switch (a) {
    case Activation::kElu:
      return pre.unaryExpr([](double v) { return v > 0.0 ? 1.0 : std::exp(v); });
    case Activation::kRelu:
      return pre.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
    case Activation::kLinear:
      return Matrix::Ones(pre.rows(), pre.cols());
  }
  return Matrix::Ones(pre.rows(), pre.cols());
}

bool IsHidden(const MlpParams& p, int layer) {
  return layer + 1 < p.num_layers();
}

}  // namespace

std::string_view ToString(Activation a) {
  switch (a) {
    case Activation::kElu:
      return "elu";
    case Activation::kRelu:
      return "relu";
    case Activation::kLinear:
      return "linear";
  }
  return "linear";
}

Activation ParseActivation(std::string_view name) {
  if (name == "elu") return Activation::kElu;
  if (name == "relu") return Activation::kRelu;
  if (name == "linear") return Activation::kLinear;
  throw ConfigError("unknown activation '" + std::string(name) + "'");
}

size_t MlpParams::NumParameters() const {
  size_t n = 0;
  for (const auto& l : layers) n += l.weight.size() + l.bias.size();
  return n;
}

void ValidateParams(const MlpParams& p) {
  if (p.layer_dims.size() < 2) throw ShapeError("MLP needs at least 2 dims");
  if (p.layers.size() + 1 != p.layer_dims.size()) {
    throw ShapeError("MLP layer count does not match layer_dims");
  }
  for (int k = 0; k < p.num_layers(); ++k) {
    const auto& l = p.layers[k];
    if (l.weight.rows() != p.layer_dims[k] ||
        l.weight.cols() != p.layer_dims[k + 1] ||
        l.bias.size() != p.layer_dims[k + 1]) {
      throw ShapeError("MLP layer " + std::to_string(k) +
                       " shape disagrees with layer_dims");
    }
  }
}

MlpParams InitParams(std::span<const int> layer_dims, Activation activation,
                     double dropout_rate, std::uint64_t seed,
                     Activation output_activation) {
  if (layer_dims.size() < 2) {
    throw ConfigError("layer_dims needs at least two entries");
  }
  for (int d : layer_dims) {
    if (d <= 0) throw ConfigError("layer widths must be positive");
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw ConfigError("dropout_rate must lie in [0, 1)");
  }
  MlpParams p;
  p.layer_dims.assign(layer_dims.begin(), layer_dims.end());
  p.activation = activation;
  p.output_activation = output_activation;
  p.dropout_rate = dropout_rate;
  Rng rng = MakeRng(seed, {0x1417});
  for (size_t k = 0; k + 1 < layer_dims.size(); ++k) {
    const int fan_in = layer_dims[k];
    const int fan_out = layer_dims[k + 1];
    std::normal_distribution<double> normal(
        0.0, std::sqrt(2.0 / static_cast<double>(fan_in + fan_out)));
    DenseLayer l;
    l.weight.resize(fan_in, fan_out);
    for (Eigen::Index i = 0; i < l.weight.size(); ++i) {
      l.weight.data()[i] = normal(rng);
    }
    l.bias = Vector::Zero(fan_out);
    p.layers.push_back(std::move(l));
  }
  return p;
}

ForwardResult Forward(const MlpParams& params, const Matrix& input,
                      bool train_mode, std::uint64_t seed) {
  if (input.cols() != params.input_dim()) {
    throw ShapeError("forward: input has " + std::to_string(input.cols()) +
                     " columns, network expects " +
                     std::to_string(params.input_dim()));
  }
  ForwardResult r;
  r.trace.input = input;
  const double keep = 1.0 - params.dropout_rate;
  const Matrix* current = &r.trace.input;
  for (int k = 0; k < params.num_layers(); ++k) {
    const auto& l = params.layers[k];
    Matrix pre = (*current) * l.weight;
    pre.rowwise() += l.bias.transpose();
    const bool hidden = IsHidden(params, k);
    Matrix post = Activate(hidden ? params.activation : params.output_activation,
                           pre);
    Matrix mask;
    if (hidden && train_mode && params.dropout_rate > 0.0) {
      Rng rng = MakeRng(seed, {0xd70f, static_cast<std::uint64_t>(k)});
      std::bernoulli_distribution keep_draw(keep);
      mask.resize(post.rows(), post.cols());
      for (Eigen::Index i = 0; i < mask.size(); ++i) {
        mask.data()[i] = keep_draw(rng) ? 1.0 / keep : 0.0;
      }
      post = post.cwiseProduct(mask);
    }
    r.trace.pre_activations.push_back(std::move(pre));
    r.trace.post_activations.push_back(std::move(post));
    r.trace.dropout_masks.push_back(std::move(mask));
    current = &r.trace.post_activations.back();
  }
  r.output = r.trace.post_activations.back();
  return r;
}

Matrix Predict(const MlpParams& params, const Matrix& input) {
  if (input.cols() != params.input_dim()) {
    throw ShapeError("predict: input has " + std::to_string(input.cols()) +
                     " columns, network expects " +
                     std::to_string(params.input_dim()));
  }
  Matrix current = input;
  for (int k = 0; k < params.num_layers(); ++k) {
    const auto& l = params.layers[k];
    Matrix pre = current * l.weight;
    pre.rowwise() += l.bias.transpose();
    current = Activate(
        IsHidden(params, k) ? params.activation : params.output_activation, pre);
  }
  return current;
}

BackwardResult Backward(const MlpParams& params, const ForwardTrace& trace,
                        const Matrix& output_gradient) {
  const int n_layers = params.num_layers();
  if (static_cast<int>(trace.pre_activations.size()) != n_layers ||
      static_cast<int>(trace.post_activations.size()) != n_layers) {
    throw ShapeError("backward: trace layer count does not match params");
  }
  CheckSameShape(trace.post_activations.back(), output_gradient,
                 "backward: output gradient");
  BackwardResult r;
  r.param_gradients.resize(n_layers);
  Matrix grad = output_gradient;
  for (int k = n_layers - 1; k >= 0; --k) {
    const auto& l = params.layers[k];
    const Matrix& pre = trace.pre_activations[k];
    if (pre.cols() != l.weight.cols()) {
      throw ShapeError("backward: trace does not match layer " +
                       std::to_string(k));
    }
    if (trace.dropout_masks[k].size() > 0) {
      grad = grad.cwiseProduct(trace.dropout_masks[k]);
    }
    const Activation act =
        IsHidden(params, k) ? params.activation : params.output_activation;
    if (act != Activation::kLinear) {
      grad = grad.cwiseProduct(ActivationDerivative(act, pre));
    }
    const Matrix& layer_input =
        k == 0 ? trace.input : trace.post_activations[k - 1];
    r.param_gradients[k].weight = layer_input.transpose() * grad;
    r.param_gradients[k].bias = grad.colwise().sum().transpose();
    grad = grad * l.weight.transpose();
  }
  r.input_gradient = std::move(grad);
  return r;
}

LossResult WeightedMse(const Matrix& pred, const Matrix& target,
                       const Vector& weights) {
  CheckSameShape(pred, target, "weighted_mse");
  if (weights.size() != pred.rows()) {
    throw ShapeError("weighted_mse: " + std::to_string(weights.size()) +
                     " weights for " + std::to_string(pred.rows()) + " rows");
  }
  LossResult r;
  const Eigen::Index n = pred.rows();
  if (n == 0) {
    r.gradient = Matrix::Zero(0, pred.cols());
    return r;
  }
  const Matrix diff = pred - target;
  const double inv_n = 1.0 / static_cast<double>(n);
  r.loss = (diff.array().square().rowwise().sum().matrix().array() *
            weights.array())
               .sum() *
           inv_n;
  r.gradient = (2.0 * inv_n) * (weights.asDiagonal() * diff);
  return r;
}

MlpGradients ZeroGradients(const MlpParams& params) {
  MlpGradients g(params.layers.size());
  for (size_t k = 0; k < g.size(); ++k) {
    g[k].weight = Matrix::Zero(params.layers[k].weight.rows(),
                               params.layers[k].weight.cols());
    g[k].bias = Vector::Zero(params.layers[k].bias.size());
  }
  return g;
}

void AddScaled(MlpParams& params, const MlpGradients& direction, double scale) {
  AddScaled(params.layers, direction, scale);
}

void AddScaled(MlpGradients& acc, const MlpGradients& direction, double scale) {
  if (acc.size() != direction.size()) {
    throw ShapeError("parameter update: layer count mismatch");
  }
  for (size_t k = 0; k < acc.size(); ++k) {
    CheckSameShape(acc[k].weight, direction[k].weight, "parameter update");
    acc[k].weight += scale * direction[k].weight;
    acc[k].bias += scale * direction[k].bias;
  }
}

MlpGradients Difference(const MlpParams& a, const MlpParams& b) {
  if (a.layers.size() != b.layers.size()) {
    throw ShapeError("parameter difference: layer count mismatch");
  }
  MlpGradients d(a.layers.size());
  for (size_t k = 0; k < d.size(); ++k) {
    CheckSameShape(a.layers[k].weight, b.layers[k].weight,
                   "parameter difference");
    d[k].weight = a.layers[k].weight - b.layers[k].weight;
    d[k].bias = a.layers[k].bias - b.layers[k].bias;
  }
  return d;
}

std::vector<double> Flatten(const MlpGradients& grads) {
  std::vector<double> out;
  for (const auto& l : grads) {
    out.insert(out.end(), l.weight.data(), l.weight.data() + l.weight.size());
    out.insert(out.end(), l.bias.data(), l.bias.data() + l.bias.size());
  }
  return out;
}

std::vector<double> Flatten(const MlpParams& params) {
  return Flatten(params.layers);
}

size_t Unflatten(std::span<const double> values, MlpParams& params) {
  size_t pos = 0;
  for (auto& l : params.layers) {
    const size_t need = static_cast<size_t>(l.weight.size() + l.bias.size());
    if (pos + need > values.size()) {
      throw ShapeError("unflatten: not enough values");
    }
    std::copy_n(values.data() + pos, l.weight.size(), l.weight.data());
    pos += l.weight.size();
    std::copy_n(values.data() + pos, l.bias.size(), l.bias.data());
    pos += l.bias.size();
  }
  return pos;
}

}  // namespace causalmatch
