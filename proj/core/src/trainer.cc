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

#include "causalmatch/trainer.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "causalmatch/errors.h"
#include "causalmatch/random.h"

namespace causalmatch {
namespace {

constexpr std::uint64_t kFishStream = 0xf15;
constexpr std::uint64_t kCfrStream = 0xcf7;
constexpr std::uint64_t kInitStream = 0x1417;

Matrix AsColumn(const Vector& v) {
  Matrix m(v.size(), 1);
  m.col(0) = v;
  return m;
}

bool IsBinaryColumn(const Matrix& x, int col) {
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double v = x(i, col);
    if (v != 0.0 && v != 1.0) return false;
  }
  return true;
}

// Weighted loss of the stub on [phi(x), t] and its gradients. Returns the
// loss; fills the parameter gradients of both networks.
double StubLossAndGradients(const FishState& state, const Matrix& x,
                            const Vector& t, const Vector& y, const Vector& w,
                            bool train_mode, std::uint64_t seed,
                            MlpGradients* phi_grad, MlpGradients* stub_grad) {
  ForwardResult fp = Forward(state.phi, x, train_mode, MixSeed(seed, {0}));
  const Eigen::Index rep = fp.output.cols();
  Matrix input(x.rows(), rep + 1);
  input.leftCols(rep) = fp.output;
  input.col(rep) = t;
  ForwardResult fs = Forward(state.stub, input, train_mode, MixSeed(seed, {1}));
  LossResult loss = WeightedMse(fs.output, AsColumn(y), w);
  if (phi_grad != nullptr || stub_grad != nullptr) {
    BackwardResult bs = Backward(state.stub, fs.trace, loss.gradient);
    if (phi_grad != nullptr) {
      Matrix d_rep = bs.input_gradient.leftCols(rep);
      *phi_grad = Backward(state.phi, fp.trace, d_rep).param_gradients;
    }
    if (stub_grad != nullptr) *stub_grad = std::move(bs.param_gradients);
  }
  return loss.loss;
}

std::vector<int> NonEmptyDomains(const DomainPartition& partition) {
  std::vector<int> out;
  for (int k = 0; k < partition.num_domains; ++k) {
    if (!partition.members[k].empty()) out.push_back(k);
  }
  return out;
}

void CheckPartitionMatches(const DomainPartition& partition,
                           const PreparedData& data) {
  if (static_cast<int>(partition.labels.size()) != data.n()) {
    throw ShapeError("domain partition covers " +
                     std::to_string(partition.labels.size()) +
                     " rows but the data has " + std::to_string(data.n()));
  }
}

// Frozen-representation step: `rep` holds phi(x) for the batch rows.
CfrStepStats CfrStepOnRep(ModelBundle& bundle, const Matrix& rep,
                          const Vector& t, const Vector& y, const Vector& w,
                          const TrainConfig& config, double lr,
                          std::uint64_t dropout_seed) {
  const int m = static_cast<int>(rep.rows());
  ForwardResult g =
      Forward(bundle.gamma_net, rep, true, MixSeed(dropout_seed, {0}));
  const Matrix& h = g.output;
  const std::vector<int> idx1 = IndicesWhere(t, true);
  const std::vector<int> idx0 = IndicesWhere(t, false);

  Matrix pred(m, 1);
  ForwardResult f0, f1;
  if (!idx0.empty()) {
    f0 = Forward(bundle.head0, SelectRows(h, idx0), true,
                 MixSeed(dropout_seed, {1}));
    for (size_t i = 0; i < idx0.size(); ++i) pred(idx0[i], 0) = f0.output(i, 0);
  }
  if (!idx1.empty()) {
    f1 = Forward(bundle.head1, SelectRows(h, idx1), true,
                 MixSeed(dropout_seed, {2}));
    for (size_t i = 0; i < idx1.size(); ++i) pred(idx1[i], 0) = f1.output(i, 0);
  }
  LossResult loss = WeightedMse(pred, AsColumn(y), w);

  Matrix dh = Matrix::Zero(m, h.cols());
  MlpGradients g_head0, g_head1;
  if (!idx0.empty()) {
    BackwardResult b =
        Backward(bundle.head0, f0.trace, SelectRows(loss.gradient, idx0));
    for (size_t i = 0; i < idx0.size(); ++i) dh.row(idx0[i]) = b.input_gradient.row(i);
    g_head0 = std::move(b.param_gradients);
  }
  if (!idx1.empty()) {
    BackwardResult b =
        Backward(bundle.head1, f1.trace, SelectRows(loss.gradient, idx1));
    for (size_t i = 0; i < idx1.size(); ++i) dh.row(idx1[i]) = b.input_gradient.row(i);
    g_head1 = std::move(b.param_gradients);
  }

  CfrStepStats stats;
  stats.loss = loss.loss;
  if (!idx0.empty() && !idx1.empty()) {
    IpmResult ipm =
        ComputeIpm(SelectRows(h, idx1), SelectRows(h, idx0), config.ipm);
    stats.ipm_value = ipm.value;
    if (config.ipm_weight != 0.0) {
      for (size_t i = 0; i < idx1.size(); ++i) {
        dh.row(idx1[i]) += config.ipm_weight * ipm.grad_a.row(i);
      }
      for (size_t i = 0; i < idx0.size(); ++i) {
        dh.row(idx0[i]) += config.ipm_weight * ipm.grad_b.row(i);
      }
    }
  }

  MlpGradients g_gamma = Backward(bundle.gamma_net, g.trace, dh).param_gradients;
  AddScaled(bundle.gamma_net, g_gamma, -lr);
  const double decay = 2.0 * config.weight_decay;
  auto update_head = [&](MlpParams& head, const MlpGradients& grad) {
    for (size_t k = 0; k < grad.size(); ++k) {
      DenseLayer& layer = head.layers[k];
      layer.weight -= lr * (grad[k].weight + decay * layer.weight);
      layer.bias -= lr * grad[k].bias;
    }
  };
  if (!idx0.empty()) update_head(bundle.head0, g_head0);
  if (!idx1.empty()) update_head(bundle.head1, g_head1);
  return stats;
}

}  // namespace

std::string_view ToString(TrainMode m) {
  return m == TrainMode::kSequential ? "sequential" : "alternating";
}

TrainMode ParseTrainMode(std::string_view s) {
  if (s == "sequential") return TrainMode::kSequential;
  if (s == "alternating") return TrainMode::kAlternating;
  throw ConfigError("unknown training mode '" + std::string(s) +
                    "' (expected sequential or alternating)");
}

std::string_view ToString(FishSign s) {
  return s == FishSign::kTowardAdapted ? "toward_adapted" : "paper_literal";
}

FishSign ParseFishSign(std::string_view s) {
  if (s == "toward_adapted") return FishSign::kTowardAdapted;
  if (s == "paper_literal") return FishSign::kPaperLiteral;
  throw ConfigError("unknown fish sign '" + std::string(s) +
                    "' (expected toward_adapted or paper_literal)");
}

void TrainConfig::Validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(fish_iters >= 0, "fish_iters must be >= 0");
  require(fish_inner_lr > 0.0 && std::isfinite(fish_inner_lr),
          "fish inner learning rate (beta) must be positive");
  require(fish_step > 0.0 && fish_step <= 1.0,
          "fish step (eps) must lie in (0, 1]");
  require(cfr_lr > 0.0 && std::isfinite(cfr_lr),
          "learning rate (eta) must be positive");
  require(ipm_weight >= 0.0 && std::isfinite(ipm_weight),
          "ipm weight (alpha) must be >= 0");
  require(weight_decay >= 0.0 && std::isfinite(weight_decay),
          "weight decay (lambda) must be >= 0");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(lr_decay > 0.0 && lr_decay <= 1.0, "lr_decay must lie in (0, 1]");
  require(epochs >= 0, "epochs must be >= 0");
  require(net.hidden_width >= 1, "hidden width must be >= 1");
  require(net.rep_layers >= 1 && net.head_layers >= 1,
          "layer counts must be >= 1");
  require(net.dropout >= 0.0 && net.dropout < 1.0,
          "dropout must lie in [0, 1)");
  require(ipm.sigma > 0.0, "rbf sigma must be positive");
  require(ipm.sinkhorn.reg > 0.0, "sinkhorn regularization must be positive");
}

void ModelBundle::Validate() const {
  ValidateParams(phi);
  ValidateParams(gamma_net);
  ValidateParams(head0);
  ValidateParams(head1);
  if (gamma_net.input_dim() != phi.output_dim() ||
      head0.input_dim() != gamma_net.output_dim() ||
      head1.input_dim() != gamma_net.output_dim() || head0.output_dim() != 1 ||
      head1.output_dim() != 1) {
    throw ShapeError("model bundle: incompatible network dimensions");
  }
}

ModelBundle MakeBundle(int input_dim, const NetworkConfig& net,
                       std::uint64_t seed) {
  const int w = net.hidden_width;
  std::vector<int> rep_dims(net.rep_layers + 1, w);
  rep_dims[0] = input_dim;
  std::vector<int> gamma_dims(net.rep_layers + 1, w);
  std::vector<int> head_dims(net.head_layers + 1, w);
  head_dims.back() = 1;
  ModelBundle b;
  b.phi = InitParams(rep_dims, net.activation, net.dropout, MixSeed(seed, {1}),
                     net.activation);
  b.gamma_net = InitParams(gamma_dims, net.activation, net.dropout,
                           MixSeed(seed, {2}), net.activation);
  b.head0 = InitParams(head_dims, net.activation, net.dropout,
                       MixSeed(seed, {3}));
  b.head1 = InitParams(head_dims, net.activation, net.dropout,
                       MixSeed(seed, {4}));
  return b;
}

MlpParams MakeFishStub(int rep_dim, const NetworkConfig& net,
                       std::uint64_t seed) {
  const std::vector<int> dims = {rep_dim + 1, net.hidden_width, 1};
  return InitParams(dims, net.activation, net.dropout, seed);
}

ModelBundle InitialBundle(int input_dim, const TrainConfig& config) {
  return MakeBundle(input_dim, config.net, MixSeed(config.seed, {kInitStream}));
}

MlpParams InitialStub(const TrainConfig& config) {
  return MakeFishStub(config.net.hidden_width, config.net,
                      MixSeed(config.seed, {kInitStream, 1}));
}

SampleWeights ComputeSampleWeights(const Vector& t) {
  if (t.size() == 0) throw DegenerateError("sample weights: empty treatment");
  SampleWeights s;
  s.u = t.mean();
  if (s.u <= 0.0 || s.u >= 1.0) {
    throw DegenerateError(
        "sample weights: need both treated and control units (treated "
        "fraction " + FormatDouble(s.u) + ")");
  }
  s.w.resize(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    s.w[i] = t[i] / (2.0 * s.u) + (1.0 - t[i]) / (2.0 * (1.0 - s.u));
  }
  return s;
}

Preprocessor Preprocessor::Identity(int d) {
  Preprocessor p;
  p.x_mean = Vector::Zero(d);
  p.x_scale = Vector::Ones(d);
  return p;
}

Preprocessor Preprocessor::Fit(const Matrix& x, const Vector& y) {
  if (x.rows() == 0) throw DataError("cannot fit preprocessing on zero rows");
  Preprocessor p = Identity(static_cast<int>(x.cols()));
  for (int j = 0; j < x.cols(); ++j) {
    if (IsBinaryColumn(x, j)) continue;
    const double mean = x.col(j).mean();
    const double sd =
        std::sqrt((x.col(j).array() - mean).square().mean());
    p.x_mean[j] = mean;
    p.x_scale[j] = sd > 0.0 ? sd : 1.0;
  }
  p.y_mean = y.mean();
  const double sd = std::sqrt((y.array() - p.y_mean).square().mean());
  p.y_scale = sd > 0.0 ? sd : 1.0;
  return p;
}

Matrix Preprocessor::TransformX(const Matrix& x) const {
  if (x.cols() != x_mean.size()) {
    throw ShapeError("preprocessor expects " + std::to_string(x_mean.size()) +
                     " covariates, got " + std::to_string(x.cols()));
  }
  Matrix out(x.rows(), x.cols());
  for (int j = 0; j < x.cols(); ++j) {
    out.col(j) = (x.col(j).array() - x_mean[j]) / x_scale[j];
  }
  return out;
}

Vector Preprocessor::TransformY(const Vector& y) const {
  return (y.array() - y_mean) / y_scale;
}

PreparedData PrepareData(const Dataset& data, const Preprocessor& prep) {
  PreparedData p;
  p.x = prep.TransformX(data.CovariatesWithoutAnchor());
  p.t = data.t;
  p.y = prep.TransformY(data.y);
  p.w = ComputeSampleWeights(data.t).w;
  return p;
}

std::string TrainingLogCsv(const std::vector<LogRow>& log) {
  std::ostringstream out;
  out << "epoch,phase,loss,ipm_value,lr\n";
  for (const LogRow& r : log) {
    out << r.epoch << ',' << r.phase << ',' << FormatDouble(r.loss) << ','
        << (r.ipm_value ? FormatDouble(*r.ipm_value) : std::string()) << ','
        << FormatDouble(r.lr) << '\n';
  }
  return out.str();
}

std::vector<int> SampleBatch(std::span<const int> members, int batch_size,
                             Rng& rng) {
  std::vector<int> rows(members.begin(), members.end());
  if (batch_size >= static_cast<int>(rows.size())) return rows;
  for (int i = 0; i < batch_size; ++i) {
    std::uniform_int_distribution<int> pick(i, static_cast<int>(rows.size()) - 1);
    std::swap(rows[i], rows[pick(rng)]);
  }
  rows.resize(batch_size);
  return rows;
}

FishState AdaptClone(const DomainPartition& partition, const PreparedData& data,
                     const FishState& state, const TrainConfig& config,
                     int iteration, double* mean_loss) {
  CheckPartitionMatches(partition, data);
  std::vector<int> order = NonEmptyDomains(partition);
  if (order.empty()) throw DegenerateError("gradient matching: all domains empty");
  Rng rng = MakeRng(config.seed, {kFishStream, static_cast<std::uint64_t>(iteration)});
  std::shuffle(order.begin(), order.end(), rng);

  FishState clone = state;
  double loss_sum = 0.0;
  for (int k : order) {
    const std::vector<int> rows =
        SampleBatch(partition.members[k], config.batch_size, rng);
    MlpGradients g_phi, g_stub;
    const std::uint64_t seed = MixSeed(
        config.seed, {kFishStream, static_cast<std::uint64_t>(iteration),
                      static_cast<std::uint64_t>(k)});
    loss_sum += StubLossAndGradients(
        clone, SelectRows(data.x, rows), SelectRows(data.t, rows),
        SelectRows(data.y, rows), SelectRows(data.w, rows), true, seed, &g_phi,
        &g_stub);
    AddScaled(clone.phi, g_phi, -config.fish_inner_lr);
    AddScaled(clone.stub, g_stub, -config.fish_inner_lr);
  }
  if (mean_loss != nullptr) *mean_loss = loss_sum / static_cast<double>(order.size());
  return clone;
}

void Interpolate(FishState& state, FishState adapted, const TrainConfig& config) {
  if (config.fish_sign == FishSign::kTowardAdapted) {
    if (config.fish_step == 1.0) {
      state = std::move(adapted);
    } else {
      AddScaled(state.phi, Difference(adapted.phi, state.phi), config.fish_step);
      AddScaled(state.stub, Difference(adapted.stub, state.stub), config.fish_step);
    }
  } else {
    AddScaled(state.phi, Difference(state.phi, adapted.phi), config.fish_step);
    AddScaled(state.stub, Difference(state.stub, adapted.stub), config.fish_step);
  }
}

double FishIteration(const DomainPartition& partition, const PreparedData& data,
                     FishState& state, const TrainConfig& config,
                     int iteration) {
  double loss = 0.0;
  Interpolate(state, AdaptClone(partition, data, state, config, iteration, &loss),
              config);
  if (!std::isfinite(loss) || !AllFinite(state.phi.layers.back().weight)) {
    throw NumericError("gradient matching diverged at iteration " +
                       std::to_string(iteration) +
                       "; lower the inner learning rate");
  }
  return loss;
}

FishResult FishPhase(const DomainPartition& partition, const PreparedData& data,
                     FishState state, const TrainConfig& config) {
  config.Validate();
  FishResult r;
  if (partition.NumNonEmpty() < 2) {
    r.warnings.push_back(
        "only one non-empty domain; gradient matching reduces to plain SGD");
  }
  for (int it = 0; it < config.fish_iters; ++it) {
    const double loss = FishIteration(partition, data, state, config, it);
    r.log.push_back({it, "fish", loss, std::nullopt, config.fish_inner_lr});
  }
  r.state = std::move(state);
  return r;
}

IdgmOracleResult IdgmLossOracle(const DomainPartition& partition,
                                const PreparedData& data, const FishState& state,
                                double gamma_weight, bool with_gradient,
                                double fd_step, size_t max_params) {
  CheckPartitionMatches(partition, data);
  const size_t n_phi = state.phi.NumParameters();
  const size_t n_total = n_phi + state.stub.NumParameters();
  if (n_total > max_params) {
    throw ConfigError("gradient-matching oracle limited to " +
                      std::to_string(max_params) + " parameters, model has " +
                      std::to_string(n_total));
  }
  const std::vector<int> domains = NonEmptyDomains(partition);
  const double s = static_cast<double>(domains.size());
  if (domains.size() < 2) {
    throw DegenerateError("gradient-matching oracle needs two non-empty domains");
  }

  auto evaluate = [&](const FishState& st, IdgmOracleResult* out) {
    const double erm = StubLossAndGradients(st, data.x, data.t, data.y, data.w,
                                            false, 0, nullptr, nullptr);
    std::vector<std::vector<double>> grads;
    for (int k : domains) {
      const std::vector<int>& rows = partition.members[k];
      MlpGradients g_phi, g_stub;
      StubLossAndGradients(st, SelectRows(data.x, rows),
                           SelectRows(data.t, rows), SelectRows(data.y, rows),
                           SelectRows(data.w, rows), false, 0, &g_phi, &g_stub);
      std::vector<double> g = Flatten(g_phi);
      const std::vector<double> gs = Flatten(g_stub);
      g.insert(g.end(), gs.begin(), gs.end());
      grads.push_back(std::move(g));
    }
    double pair = 0.0;
    for (size_t i = 0; i < grads.size(); ++i) {
      for (size_t j = 0; j < grads.size(); ++j) {
        if (i == j) continue;
        pair += std::inner_product(grads[i].begin(), grads[i].end(),
                                   grads[j].begin(), 0.0);
      }
    }
    const double loss = erm - gamma_weight * 2.0 / (s * (s - 1.0)) * pair;
    if (out != nullptr) {
      out->loss = loss;
      out->erm_loss = erm;
      out->pair_sum = pair;
      out->domain_gradients = std::move(grads);
    }
    return loss;
  };

  IdgmOracleResult result;
  evaluate(state, &result);
  if (!with_gradient) return result;

  std::vector<double> theta = Flatten(state.phi);
  const std::vector<double> theta_stub = Flatten(state.stub);
  theta.insert(theta.end(), theta_stub.begin(), theta_stub.end());
  FishState probe = state;
  auto load = [&](const std::vector<double>& v) {
    Unflatten(std::span<const double>(v).subspan(0, n_phi), probe.phi);
    Unflatten(std::span<const double>(v).subspan(n_phi), probe.stub);
  };
  result.gradient.resize(n_total);
  for (size_t i = 0; i < n_total; ++i) {
    std::vector<double> v = theta;
    v[i] = theta[i] + fd_step;
    load(v);
    const double up = evaluate(probe, nullptr);
    v[i] = theta[i] - fd_step;
    load(v);
    const double down = evaluate(probe, nullptr);
    result.gradient[i] = (up - down) / (2.0 * fd_step);
  }
  return result;
}

CfrStepStats CfrStep(ModelBundle& bundle, const PreparedData& data,
                     std::span<const int> rows, const TrainConfig& config,
                     double lr, std::uint64_t dropout_seed) {
  if (rows.empty()) throw DegenerateError("covariate matching: empty batch");
  const Matrix rep = Predict(bundle.phi, SelectRows(data.x, rows));
  return CfrStepOnRep(bundle, rep, SelectRows(data.t, rows),
                      SelectRows(data.y, rows), SelectRows(data.w, rows), config,
                      lr, dropout_seed);
}

LogRow CfrEpoch(ModelBundle& bundle, const PreparedData& data,
                const TrainConfig& config, int epoch) {
  const int n = data.n();
  if (n == 0) throw DegenerateError("covariate matching: no rows");
  const double lr = config.cfr_lr * std::pow(config.lr_decay, epoch);
  const Matrix rep_all = Predict(bundle.phi, data.x);
  Rng rng = MakeRng(config.seed, {kCfrStream, static_cast<std::uint64_t>(epoch)});
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  double loss_sum = 0.0;
  double ipm_sum = 0.0;
  int ipm_count = 0;
  int batch = 0;
  for (int start = 0; start < n; start += config.batch_size, ++batch) {
    const int end = std::min(n, start + config.batch_size);
    std::span<const int> rows(perm.data() + start, end - start);
    const std::uint64_t seed =
        MixSeed(config.seed, {kCfrStream, static_cast<std::uint64_t>(epoch),
                              static_cast<std::uint64_t>(batch)});
    CfrStepStats st = CfrStepOnRep(
        bundle, SelectRows(rep_all, rows), SelectRows(data.t, rows),
        SelectRows(data.y, rows), SelectRows(data.w, rows), config, lr, seed);
    loss_sum += st.loss * (end - start);
    if (st.ipm_value) {
      ipm_sum += *st.ipm_value;
      ++ipm_count;
    }
  }
  LogRow row{epoch, "cfr", loss_sum / n, std::nullopt, lr};
  if (ipm_count > 0) row.ipm_value = ipm_sum / ipm_count;
  if (!std::isfinite(row.loss)) {
    throw NumericError("covariate matching diverged at epoch " +
                       std::to_string(epoch) + "; lower the learning rate");
  }
  return row;
}

CfrResult CfrPhase(const PreparedData& data, ModelBundle bundle,
                   const TrainConfig& config) {
  config.Validate();
  CfrResult r;
  for (int e = 0; e < config.epochs; ++e) {
    r.log.push_back(CfrEpoch(bundle, data, config, e));
  }
  r.bundle = std::move(bundle);
  return r;
}

Vector PredictIte(const ModelBundle& bundle, const Matrix& x) {
  const Matrix h = Predict(bundle.gamma_net, Predict(bundle.phi, x));
  return Predict(bundle.head1, h).col(0) - Predict(bundle.head0, h).col(0);
}

PotentialOutcomes TrainedModel::PredictOutcomes(const Dataset& data) const {
  const Matrix x = prep.TransformX(data.CovariatesWithoutAnchor());
  const Matrix h = Predict(bundle.gamma_net, Predict(bundle.phi, x));
  PotentialOutcomes out;
  out.f0 = Predict(bundle.head0, h).col(0).array() * prep.y_scale + prep.y_mean;
  out.f1 = Predict(bundle.head1, h).col(0).array() * prep.y_scale + prep.y_mean;
  return out;
}

Vector TrainedModel::PredictIte(const Dataset& data) const {
  PotentialOutcomes po = PredictOutcomes(data);
  return po.f1 - po.f0;
}

TrainResult Train(const Dataset& data, const TrainConfig& config,
                  const DomainConfig& domain_config) {
  config.Validate();
  data.Validate();
  if (data.d() < 2) {
    throw ConfigError("need at least one covariate besides the anchor");
  }
  TrainResult r;
  r.model.prep = Preprocessor::Fit(data.CovariatesWithoutAnchor(), data.y);
  const PreparedData prepared = PrepareData(data, r.model.prep);

  r.partition = GenerateDomains(data.x.col(data.anchor_index), domain_config);
  r.general_position = CheckGeneralPosition(data, r.partition);
  if (!r.general_position.full_row_rank) {
    r.warnings.push_back(
        "domain covariate means are not in general position (rank " +
        std::to_string(r.general_position.rank) + ")");
  }

  ModelBundle bundle = InitialBundle(static_cast<int>(prepared.x.cols()), config);
  FishState fish{bundle.phi, InitialStub(config)};

  if (config.fish_iters > 0 && r.partition.NumNonEmpty() < 2) {
    r.warnings.push_back(
        "only one non-empty domain; gradient matching reduces to plain SGD");
  }
  if (config.mode == TrainMode::kSequential) {
    if (config.fish_iters > 0) {
      FishResult f = FishPhase(r.partition, prepared, std::move(fish), config);
      bundle.phi = std::move(f.state.phi);
      r.log = std::move(f.log);
    }
    CfrResult c = CfrPhase(prepared, std::move(bundle), config);
    r.log.insert(r.log.end(), c.log.begin(), c.log.end());
    bundle = std::move(c.bundle);
  } else {
    const int rounds = std::max(config.epochs, config.fish_iters);
    for (int e = 0; e < rounds; ++e) {
      if (e < config.fish_iters) {
        const double loss = FishIteration(r.partition, prepared, fish, config, e);
        r.log.push_back({e, "fish", loss, std::nullopt, config.fish_inner_lr});
        bundle.phi = fish.phi;
      }
      if (e < config.epochs) {
        r.log.push_back(CfrEpoch(bundle, prepared, config, e));
      }
    }
  }
  r.model.bundle = std::move(bundle);
  return r;
}

std::string ModelLabel(const TrainConfig& config) {
  std::string label;
  if (config.fish_iters > 0) {
    label = config.mode == TrainMode::kSequential ? "Seq-M-" : "Alt-M-";
  }
  label += config.ipm_weight > 0.0 ? "CFR" : "TAR";
  return label;
}

namespace {

void WriteVector(std::ostringstream& out, const std::vector<double>& v) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out << ' ';
    out << FormatDouble(v[i]);
  }
  out << '\n';
}

void WriteNet(std::ostringstream& out, const std::string& name,
              const MlpParams& p) {
  out << "net " << name << ' ' << ToString(p.activation) << ' '
      << ToString(p.output_activation) << ' ' << FormatDouble(p.dropout_rate)
      << ' ' << p.layer_dims.size();
  for (int d : p.layer_dims) out << ' ' << d;
  out << '\n';
  WriteVector(out, Flatten(p));
}

std::vector<double> ParseDoubles(const std::string& line) {
  std::vector<double> out;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && *p == ' ') ++p;
    if (p == end) break;
    double v = 0.0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc()) throw DataError("model file: bad number in '" + line + "'");
    out.push_back(v);
    p = next;
  }
  return out;
}

class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}
  std::string Next(const char* what) {
    std::string line;
    if (!std::getline(in_, line)) {
      throw DataError(std::string("model file truncated before ") + what);
    }
    return line;
  }

 private:
  std::istringstream in_;
};

MlpParams ReadNet(LineReader& reader, const std::string& name) {
  std::istringstream head(reader.Next("network header"));
  std::string tag, got, act, out_act, dropout;
  size_t n_dims = 0;
  head >> tag >> got >> act >> out_act >> dropout >> n_dims;
  if (!head || tag != "net" || got != name || n_dims < 2) {
    throw DataError("model file: expected network '" + name + "'");
  }
  std::vector<int> dims(n_dims);
  for (int& d : dims) head >> d;
  if (!head) throw DataError("model file: bad dimensions for '" + name + "'");
  MlpParams p = InitParams(dims, ParseActivation(act), std::stod(dropout), 0,
                           ParseActivation(out_act));
  const std::vector<double> values = ParseDoubles(reader.Next("weights"));
  if (values.size() != p.NumParameters()) {
    throw DataError("model file: network '" + name + "' expects " +
                    std::to_string(p.NumParameters()) + " values, found " +
                    std::to_string(values.size()));
  }
  Unflatten(values, p);
  return p;
}

}  // namespace

std::string SerializeModel(const TrainedModel& model) {
  std::ostringstream out;
  out << "causalmatch-model 1\n";
  out << "x_mean ";
  WriteVector(out, std::vector<double>(model.prep.x_mean.begin(),
                                       model.prep.x_mean.end()));
  out << "x_scale ";
  WriteVector(out, std::vector<double>(model.prep.x_scale.begin(),
                                       model.prep.x_scale.end()));
  out << "y " << FormatDouble(model.prep.y_mean) << ' '
      << FormatDouble(model.prep.y_scale) << '\n';
  WriteNet(out, "phi", model.bundle.phi);
  WriteNet(out, "gamma", model.bundle.gamma_net);
  WriteNet(out, "head0", model.bundle.head0);
  WriteNet(out, "head1", model.bundle.head1);
  return out.str();
}

TrainedModel ParseModel(const std::string& text) {
  LineReader reader(text);
  if (reader.Next("header") != "causalmatch-model 1") {
    throw DataError("not a causalmatch model file");
  }
  auto read_tagged = [&](const std::string& tag) {
    std::string line = reader.Next(tag.c_str());
    if (line.rfind(tag + " ", 0) != 0 && line != tag) {
      throw DataError("model file: expected '" + tag + "' line");
    }
    return ParseDoubles(line.substr(std::min(line.size(), tag.size() + 1)));
  };
  TrainedModel m;
  const std::vector<double> mean = read_tagged("x_mean");
  const std::vector<double> scale = read_tagged("x_scale");
  const std::vector<double> y = read_tagged("y");
  if (mean.size() != scale.size() || y.size() != 2) {
    throw DataError("model file: inconsistent preprocessing block");
  }
  m.prep.x_mean = Eigen::Map<const Vector>(mean.data(), mean.size());
  m.prep.x_scale = Eigen::Map<const Vector>(scale.data(), scale.size());
  m.prep.y_mean = y[0];
  m.prep.y_scale = y[1];
  m.bundle.phi = ReadNet(reader, "phi");
  m.bundle.gamma_net = ReadNet(reader, "gamma");
  m.bundle.head0 = ReadNet(reader, "head0");
  m.bundle.head1 = ReadNet(reader, "head1");
  m.bundle.Validate();
  if (m.bundle.phi.input_dim() != m.prep.x_mean.size()) {
    throw DataError("model file: preprocessing and network widths disagree");
  }
  return m;
}

}  // namespace causalmatch
