// Copyright 2026 The einu Authors
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

#include "einu/emotion/nets.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "einu/common/error.h"

namespace einu::emotion {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Tensor indices, in layout order.
enum AudioTensor {
  kD1W, kD1B, kD2W, kD2B,
  kL1W, kL1U, kL1B, kL2W, kL2U, kL2B,
  kD3W, kD3B, kD4W, kD4B, kOutW, kOutB,
};
enum VideoTensor { kV1W, kV1B, kV2W, kV2B, kVOutW, kVOutB };

void SnapToFloat(VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = static_cast<float>(v[i]);
}

void CheckRate(double rate) {
  if (!(rate >= 0.0 && rate < 1.0)) throw Error(ErrorCode::kInvalidParams, "dropout in [0, 1)");
}

MatrixXd MaybeDrop(bool training, double rate, const MatrixXd& a, std::mt19937_64* rng,
                   MatrixXd* mask) {
  if (!training || rate == 0.0) return a;
  if (!rng) throw Error(ErrorCode::kInvalidParams, "training forward needs an rng");
  *mask = DropoutMask(static_cast<int>(a.rows()), static_cast<int>(a.cols()), rate, *rng);
  return a.cwiseProduct(*mask);
}

MatrixXd MaybeDropBack(bool training, double rate, const MatrixXd& g, const MatrixXd& mask) {
  if (!training || rate == 0.0) return g;
  return g.cwiseProduct(mask);
}

}  // namespace

nlohmann::json AudioNetShapeToJson(const AudioNetShape& s) {
  return {{"input", s.input},   {"dense1", s.dense1}, {"dense2", s.dense2},
          {"lstm1", s.lstm1},   {"lstm2", s.lstm2},   {"dense3", s.dense3},
          {"dense4", s.dense4}, {"classes", s.classes}, {"dropout", s.dropout}};
}

AudioNetShape AudioNetShapeFromJson(const nlohmann::json& d) {
  AudioNetShape s;
  s.input = d.value("input", s.input);
  s.dense1 = d.value("dense1", s.dense1);
  s.dense2 = d.value("dense2", s.dense2);
  s.lstm1 = d.value("lstm1", s.lstm1);
  s.lstm2 = d.value("lstm2", s.lstm2);
  s.dense3 = d.value("dense3", s.dense3);
  s.dense4 = d.value("dense4", s.dense4);
  s.classes = d.value("classes", s.classes);
  s.dropout = d.value("dropout", s.dropout);
  return s;
}

AudioNet::AudioNet(AudioNetShape shape) : shape_(shape) {
  CheckRate(shape_.dropout);
  const AudioNetShape& s = shape_;
  layout_.Add("dense1.w", s.dense1, s.input);
  layout_.Add("dense1.b", s.dense1, 1);
  layout_.Add("dense2.w", s.dense2, s.dense1);
  layout_.Add("dense2.b", s.dense2, 1);
  layout_.Add("lstm1.w", 4 * s.lstm1, s.dense2);
  layout_.Add("lstm1.u", 4 * s.lstm1, s.lstm1);
  layout_.Add("lstm1.b", 4 * s.lstm1, 1);
  layout_.Add("lstm2.w", 4 * s.lstm2, s.lstm1);
  layout_.Add("lstm2.u", 4 * s.lstm2, s.lstm2);
  layout_.Add("lstm2.b", 4 * s.lstm2, 1);
  layout_.Add("dense3.w", s.dense3, s.lstm2);
  layout_.Add("dense3.b", s.dense3, 1);
  layout_.Add("dense4.w", s.dense4, s.dense3);
  layout_.Add("dense4.b", s.dense4, 1);
  layout_.Add("out.w", s.classes, s.dense4);
  layout_.Add("out.b", s.classes, 1);
  params_ = VectorXd::Zero(layout_.size());
}

void AudioNet::Initialize(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  params_.setZero();
  for (int t : {kD1W, kD2W, kL1W, kL1U, kL2W, kL2U, kD3W, kD4W, kOutW}) {
    const TensorSpec& spec = layout_.tensors()[t];
    const bool recurrent = t == kL1W || t == kL1U || t == kL2W || t == kL2U;
    GlorotFill(layout_.View(params_, t), spec.cols, recurrent ? spec.rows / 4 : spec.rows, rng);
  }
  for (int b : {kL1B, kL2B}) {
    MatMap bias = layout_.View(params_, b);
    const Eigen::Index h = bias.rows() / 4;
    bias.middleRows(h, h).setOnes();
  }
  SnapToFloat(params_);
}

double AudioNet::Loss(const std::vector<MatrixXd>& batch, const std::vector<int>& labels,
                      bool training, std::mt19937_64* rng, VectorXd* grad) const {
  if (batch.empty()) throw Error(ErrorCode::kInvalidParams, "empty batch");
  const int steps = static_cast<int>(batch[0].rows());
  if (steps < 1) throw Error(ErrorCode::kInvalidParams, "sequence needs at least one frame");
  const int b = static_cast<int>(batch.size());
  for (const MatrixXd& seq : batch) {
    if (seq.cols() != shape_.input) {
      throw Error(ErrorCode::kBadFrameDim, "frame has " + std::to_string(seq.cols()) +
                                               " values, net expects " +
                                               std::to_string(shape_.input));
    }
    if (seq.rows() != steps) throw Error(ErrorCode::kInvalidParams, "batch mixes sequence lengths");
  }
  const auto view = [&](int t) { return layout_.View(params_, t); };
  const double rate = shape_.dropout;

  // Frames stacked time-major: column t * B + j is frame t of sample j.
  MatrixXd x(shape_.input, static_cast<Eigen::Index>(steps) * b);
  for (int t = 0; t < steps; ++t) {
    for (int j = 0; j < b; ++j) x.col(t * b + j) = batch[j].row(t).transpose();
  }
  MatrixXd m1, m2, m3, m4;
  const MatrixXd z1 = Dense(view(kD1W), view(kD1B), x);
  const MatrixXd a1 = MaybeDrop(training, rate, Relu(z1), rng, &m1);
  const MatrixXd z2 = Dense(view(kD2W), view(kD2B), a1);
  const MatrixXd a2 = MaybeDrop(training, rate, Relu(z2), rng, &m2);
  std::vector<MatrixXd> seq(steps);
  for (int t = 0; t < steps; ++t) seq[t] = a2.middleCols(static_cast<Eigen::Index>(t) * b, b);
  LstmTrace tr1, tr2;
  const std::vector<MatrixXd> h1 = LstmForward(view(kL1W), view(kL1U), view(kL1B), seq, &tr1);
  const std::vector<MatrixXd> h2 = LstmForward(view(kL2W), view(kL2U), view(kL2B), h1, &tr2);
  const MatrixXd& last = h2.back();
  const MatrixXd z3 = Dense(view(kD3W), view(kD3B), last);
  const MatrixXd a3 = MaybeDrop(training, rate, Relu(z3), rng, &m3);
  const MatrixXd z4 = Dense(view(kD4W), view(kD4B), a3);
  const MatrixXd a4 = MaybeDrop(training, rate, Relu(z4), rng, &m4);
  const MatrixXd logits = Dense(view(kOutW), view(kOutB), a4);

  MatrixXd dlogits;
  const double loss = SoftmaxCrossEntropy(logits, labels, grad ? &dlogits : nullptr);
  if (!grad) return loss;
  if (grad->size() != params_.size()) *grad = VectorXd::Zero(params_.size());
  const auto gview = [&](int t) { return layout_.View(*grad, t); };

  MatrixXd d = DenseBackward(view(kOutW), a4, dlogits, gview(kOutW), gview(kOutB));
  d = ReluBackward(z4, MaybeDropBack(training, rate, d, m4));
  d = DenseBackward(view(kD4W), a3, d, gview(kD4W), gview(kD4B));
  d = ReluBackward(z3, MaybeDropBack(training, rate, d, m3));
  d = DenseBackward(view(kD3W), last, d, gview(kD3W), gview(kD3B));
  std::vector<MatrixXd> dh2(steps, MatrixXd::Zero(shape_.lstm2, b));
  dh2.back() = d;
  const std::vector<MatrixXd> dh1 =
      LstmBackward(view(kL2W), view(kL2U), tr2, dh2, gview(kL2W), gview(kL2U), gview(kL2B));
  const std::vector<MatrixXd> da2 =
      LstmBackward(view(kL1W), view(kL1U), tr1, dh1, gview(kL1W), gview(kL1U), gview(kL1B));
  MatrixXd dstack(shape_.dense2, static_cast<Eigen::Index>(steps) * b);
  for (int t = 0; t < steps; ++t) dstack.middleCols(static_cast<Eigen::Index>(t) * b, b) = da2[t];
  d = ReluBackward(z2, MaybeDropBack(training, rate, dstack, m2));
  d = DenseBackward(view(kD2W), a1, d, gview(kD2W), gview(kD2B));
  d = ReluBackward(z1, MaybeDropBack(training, rate, d, m1));
  DenseBackward(view(kD1W), x, d, gview(kD1W), gview(kD1B));
  return loss;
}

MatrixXd AudioNet::Forward(const std::vector<MatrixXd>& batch, bool training,
                           std::mt19937_64* rng) const {
  if (batch.empty()) throw Error(ErrorCode::kInvalidParams, "empty batch");
  const int steps = static_cast<int>(batch[0].rows());
  const int b = static_cast<int>(batch.size());
  for (const MatrixXd& seq : batch) {
    if (seq.cols() != shape_.input) {
      throw Error(ErrorCode::kBadFrameDim, "frame has " + std::to_string(seq.cols()) +
                                               " values, net expects " +
                                               std::to_string(shape_.input));
    }
    if (seq.rows() != steps || steps < 1) {
      throw Error(ErrorCode::kInvalidParams, "sequences must be non-empty and equal length");
    }
  }
  const auto view = [&](int t) { return layout_.View(params_, t); };
  const double rate = shape_.dropout;
  MatrixXd x(shape_.input, static_cast<Eigen::Index>(steps) * b);
  for (int t = 0; t < steps; ++t) {
    for (int j = 0; j < b; ++j) x.col(t * b + j) = batch[j].row(t).transpose();
  }
  MatrixXd mask;
  MatrixXd a = MaybeDrop(training, rate, Relu(Dense(view(kD1W), view(kD1B), x)), rng, &mask);
  a = MaybeDrop(training, rate, Relu(Dense(view(kD2W), view(kD2B), a)), rng, &mask);
  std::vector<MatrixXd> seq(steps);
  for (int t = 0; t < steps; ++t) seq[t] = a.middleCols(static_cast<Eigen::Index>(t) * b, b);
  const auto h1 = LstmForward(view(kL1W), view(kL1U), view(kL1B), seq, nullptr);
  const auto h2 = LstmForward(view(kL2W), view(kL2U), view(kL2B), h1, nullptr);
  a = MaybeDrop(training, rate, Relu(Dense(view(kD3W), view(kD3B), h2.back())), rng, &mask);
  a = MaybeDrop(training, rate, Relu(Dense(view(kD4W), view(kD4B), a)), rng, &mask);
  return Softmax(Dense(view(kOutW), view(kOutB), a));
}

VectorXd AudioNet::Predict(const MatrixXd& sequence) const {
  return Forward({sequence}, false).col(0);
}

nlohmann::json VideoNetShapeToJson(const VideoNetShape& s) {
  return {{"features", s.features}, {"dense1", s.dense1}, {"dense2", s.dense2},
          {"classes", s.classes},   {"dropout", s.dropout}};
}

VideoNetShape VideoNetShapeFromJson(const nlohmann::json& d) {
  VideoNetShape s;
  s.features = d.value("features", s.features);
  s.dense1 = d.value("dense1", s.dense1);
  s.dense2 = d.value("dense2", s.dense2);
  s.classes = d.value("classes", s.classes);
  s.dropout = d.value("dropout", s.dropout);
  return s;
}

VideoNet::VideoNet(VideoNetShape shape) : shape_(shape) {
  CheckRate(shape_.dropout);
  if (shape_.features < 1) throw Error(ErrorCode::kInvalidParams, "feature dimension must be >= 1");
  layout_.Add("dense1.w", shape_.dense1, shape_.features);
  layout_.Add("dense1.b", shape_.dense1, 1);
  layout_.Add("dense2.w", shape_.dense2, shape_.dense1);
  layout_.Add("dense2.b", shape_.dense2, 1);
  layout_.Add("out.w", shape_.classes, shape_.dense2);
  layout_.Add("out.b", shape_.classes, 1);
  params_ = VectorXd::Zero(layout_.size());
}

void VideoNet::Initialize(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  params_.setZero();
  for (int t : {kV1W, kV2W, kVOutW}) {
    const TensorSpec& spec = layout_.tensors()[t];
    GlorotFill(layout_.View(params_, t), spec.cols, spec.rows, rng);
  }
  SnapToFloat(params_);
}

double VideoNet::Loss(const MatrixXd& features, const std::vector<int>& labels, bool training,
                      std::mt19937_64* rng, VectorXd* grad) const {
  if (features.rows() != shape_.features) {
    throw Error(ErrorCode::kBadFeatureDim, "features have " + std::to_string(features.rows()) +
                                               " values, net expects " +
                                               std::to_string(shape_.features));
  }
  const auto view = [&](int t) { return layout_.View(params_, t); };
  MatrixXd m1;
  const MatrixXd z1 = Dense(view(kV1W), view(kV1B), features);
  const MatrixXd a1 = MaybeDrop(training, shape_.dropout, Relu(z1), rng, &m1);
  const MatrixXd z2 = Dense(view(kV2W), view(kV2B), a1);
  const MatrixXd a2 = Relu(z2);
  const MatrixXd logits = Dense(view(kVOutW), view(kVOutB), a2);
  MatrixXd dlogits;
  const double loss = SoftmaxCrossEntropy(logits, labels, grad ? &dlogits : nullptr);
  if (!grad) return loss;
  if (grad->size() != params_.size()) *grad = VectorXd::Zero(params_.size());
  const auto gview = [&](int t) { return layout_.View(*grad, t); };
  MatrixXd d = DenseBackward(view(kVOutW), a2, dlogits, gview(kVOutW), gview(kVOutB));
  d = ReluBackward(z2, d);
  d = DenseBackward(view(kV2W), a1, d, gview(kV2W), gview(kV2B));
  d = ReluBackward(z1, MaybeDropBack(training, shape_.dropout, d, m1));
  DenseBackward(view(kV1W), features, d, gview(kV1W), gview(kV1B));
  return loss;
}

MatrixXd VideoNet::Forward(const MatrixXd& features, bool training, std::mt19937_64* rng) const {
  if (features.rows() != shape_.features) {
    throw Error(ErrorCode::kBadFeatureDim, "features have " + std::to_string(features.rows()) +
                                               " values, net expects " +
                                               std::to_string(shape_.features));
  }
  const auto view = [&](int t) { return layout_.View(params_, t); };
  MatrixXd mask;
  MatrixXd a = MaybeDrop(training, shape_.dropout, Relu(Dense(view(kV1W), view(kV1B), features)),
                         rng, &mask);
  a = Relu(Dense(view(kV2W), view(kV2B), a));
  return Softmax(Dense(view(kVOutW), view(kVOutB), a));
}

VectorXd VideoNet::Predict(const VectorXd& features) const {
  return Forward(features, false).col(0);
}

Emotion ArgmaxEmotion(const VectorXd& probs) {
  Eigen::Index best = 0;
  probs.maxCoeff(&best);
  return FromClassIndex(static_cast<int>(best));
}

nlohmann::json EmotionTrainConfigToJson(const EmotionTrainConfig& c) {
  return {{"epochs", c.epochs},
          {"batch_size", c.batch_size},
          {"learning_rate", c.adam.learning_rate},
          {"beta1", c.adam.beta1},
          {"beta2", c.adam.beta2},
          {"seed", c.seed},
          {"target_accuracy", c.target_accuracy}};
}

EmotionTrainConfig EmotionTrainConfigFromJson(const nlohmann::json& d) {
  EmotionTrainConfig c;
  c.epochs = d.value("epochs", c.epochs);
  c.batch_size = d.value("batch_size", c.batch_size);
  c.adam.learning_rate = d.value("learning_rate", c.adam.learning_rate);
  c.adam.beta1 = d.value("beta1", c.adam.beta1);
  c.adam.beta2 = d.value("beta2", c.adam.beta2);
  c.seed = d.value("seed", c.seed);
  c.target_accuracy = d.value("target_accuracy", c.target_accuracy);
  if (c.epochs < 0 || c.batch_size < 1) throw Error(ErrorCode::kInvalidParams, "bad train config");
  return c;
}

namespace {

// Shared epoch loop. loss_fn(indices, rng, grad) returns the mean loss over
// the indexed samples and accumulates its gradient.
template <typename LossFn, typename AccFn>
TrainCurve RunTraining(VectorXd& params, std::size_t n, const EmotionTrainConfig& config,
                       const LossFn& loss_fn, const AccFn& accuracy_fn, const EpochHook& hook) {
  if (n == 0) throw Error(ErrorCode::kInvalidParams, "empty dataset");
  std::mt19937_64 rng(config.seed);
  Adam adam(params.size(), config.adam);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  TrainCurve curve;
  VectorXd grad(params.size());
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double total = 0.0;
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t end = std::min(n, start + static_cast<std::size_t>(config.batch_size));
      const std::vector<std::size_t> idx(order.begin() + static_cast<std::ptrdiff_t>(start),
                                         order.begin() + static_cast<std::ptrdiff_t>(end));
      grad.setZero();
      const double loss = loss_fn(idx, rng, grad);
      if (!std::isfinite(loss) || !grad.allFinite()) {
        throw Error(ErrorCode::kNonFiniteLoss, "epoch " + std::to_string(epoch));
      }
      total += loss * static_cast<double>(idx.size());
      adam.Step(params, grad);
      SnapToFloat(params);
    }
    const double acc = accuracy_fn();
    curve.loss.push_back(total / static_cast<double>(n));
    curve.accuracy.push_back(acc);
    if (hook) hook(epoch, curve.loss.back(), acc);
    if (acc >= config.target_accuracy) break;
  }
  return curve;
}

}  // namespace

double Accuracy(const AudioNet& net, const AudioDataset& data) {
  int correct = 0;
  for (std::size_t i = 0; i < data.sequences.size(); ++i) {
    Eigen::Index best = 0;
    net.Predict(data.sequences[i]).maxCoeff(&best);
    correct += static_cast<int>(best) == data.labels[i];
  }
  return data.sequences.empty() ? 0.0 : static_cast<double>(correct) / data.sequences.size();
}

double Accuracy(const VideoNet& net, const VideoDataset& data) {
  const MatrixXd probs = net.Forward(data.features, false);
  int correct = 0;
  for (Eigen::Index j = 0; j < probs.cols(); ++j) {
    Eigen::Index best = 0;
    probs.col(j).maxCoeff(&best);
    correct += static_cast<int>(best) == data.labels[j];
  }
  return probs.cols() == 0 ? 0.0 : static_cast<double>(correct) / probs.cols();
}

TrainCurve TrainAudioNet(AudioNet& net, const AudioDataset& data, const EmotionTrainConfig& config,
                         const EpochHook& hook) {
  if (data.sequences.size() != data.labels.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one label per sequence");
  }
  auto loss_fn = [&](const std::vector<std::size_t>& idx, std::mt19937_64& rng, VectorXd& grad) {
    // Equal-length groups run batched; each contributes by its share.
    std::map<Eigen::Index, std::vector<std::size_t>> groups;
    for (std::size_t i : idx) groups[data.sequences[i].rows()].push_back(i);
    double loss = 0.0;
    VectorXd g(grad.size());
    for (const auto& [len, members] : groups) {
      std::vector<MatrixXd> batch;
      std::vector<int> labels;
      for (std::size_t i : members) {
        batch.push_back(data.sequences[i]);
        labels.push_back(data.labels[i]);
      }
      g.setZero();
      const double w = static_cast<double>(members.size()) / static_cast<double>(idx.size());
      loss += w * net.Loss(batch, labels, true, &rng, &g);
      grad += w * g;
    }
    return loss;
  };
  return RunTraining(net.params(), data.sequences.size(), config, loss_fn,
                     [&] { return Accuracy(net, data); }, hook);
}

TrainCurve TrainVideoNet(VideoNet& net, const VideoDataset& data, const EmotionTrainConfig& config,
                         const EpochHook& hook) {
  if (static_cast<std::size_t>(data.features.cols()) != data.labels.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one label per feature vector");
  }
  auto loss_fn = [&](const std::vector<std::size_t>& idx, std::mt19937_64& rng, VectorXd& grad) {
    MatrixXd x(data.features.rows(), static_cast<Eigen::Index>(idx.size()));
    std::vector<int> labels;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      x.col(static_cast<Eigen::Index>(k)) = data.features.col(static_cast<Eigen::Index>(idx[k]));
      labels.push_back(data.labels[idx[k]]);
    }
    return net.Loss(x, labels, true, &rng, &grad);
  };
  return RunTraining(net.params(), data.labels.size(), config, loss_fn,
                     [&] { return Accuracy(net, data); }, hook);
}

AudioDataset MakeClusterSequences(int per_class, int length, int dim, double separation,
                                  double noise, std::uint64_t seed) {
  if (per_class < 1 || length < 1 || dim < 1) {
    throw Error(ErrorCode::kInvalidParams, "cluster dataset needs positive sizes");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  MatrixXd means(dim, kNumEmotions);
  for (int c = 0; c < kNumEmotions; ++c) {
    for (int i = 0; i < dim; ++i) means(i, c) = g(rng);
    means.col(c) *= separation / means.col(c).norm();
  }
  AudioDataset data;
  for (int c = 0; c < kNumEmotions; ++c) {
    for (int k = 0; k < per_class; ++k) {
      MatrixXd seq(length, dim);
      for (int t = 0; t < length; ++t) {
        for (int i = 0; i < dim; ++i) seq(t, i) = means(i, c) + noise * g(rng);
      }
      data.sequences.push_back(std::move(seq));
      data.labels.push_back(c);
    }
  }
  return data;
}

SyntheticVideoFeatures::SyntheticVideoFeatures(int dim, double separation, double noise,
                                               std::uint64_t seed)
    : means_(dim, kNumEmotions), noise_(noise) {
  if (dim < 1) throw Error(ErrorCode::kInvalidParams, "feature dimension must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int c = 0; c < kNumEmotions; ++c) {
    for (int i = 0; i < dim; ++i) means_(i, c) = g(rng);
    means_.col(c) *= separation / means_.col(c).norm();
  }
}

VectorXd SyntheticVideoFeatures::Sample(Emotion e, std::mt19937_64& rng) const {
  std::normal_distribution<double> g(0.0, noise_);
  VectorXd v = Mean(e);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] += g(rng);
  return v;
}

VideoDataset SyntheticVideoFeatures::Dataset(int per_class, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  VideoDataset data;
  data.features.resize(dim(), static_cast<Eigen::Index>(per_class) * kNumEmotions);
  Eigen::Index col = 0;
  for (Emotion e : kAllEmotions) {
    for (int k = 0; k < per_class; ++k) {
      data.features.col(col++) = Sample(e, rng);
      data.labels.push_back(ClassIndex(e));
    }
  }
  return data;
}

}  // namespace einu::emotion
