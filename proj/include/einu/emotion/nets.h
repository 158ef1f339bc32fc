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

#ifndef EINU_EMOTION_NETS_H_
#define EINU_EMOTION_NETS_H_

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "einu/common/adam.h"
#include "einu/emotion/labels.h"
#include "einu/emotion/layers.h"

namespace einu::emotion {

struct AudioNetShape {
  int input = 40;
  int dense1 = 64;
  int dense2 = 128;
  int lstm1 = 128;
  int lstm2 = 128;
  int dense3 = 128;
  int dense4 = 64;
  int classes = kNumEmotions;
  double dropout = 0.2;
};

nlohmann::json AudioNetShapeToJson(const AudioNetShape& s);
AudioNetShape AudioNetShapeFromJson(const nlohmann::json& doc);

// Per-frame dense 40-64-128 (ReLU), two stacked LSTMs over time, and a
// dense 128-128-64-7 head on the last step (ReLU hidden, softmax out).
// Dropout follows every hidden dense layer when training.
class AudioNet {
 public:
  explicit AudioNet(AudioNetShape shape = {});

  const AudioNetShape& shape() const { return shape_; }
  const ParamLayout& layout() const { return layout_; }
  Eigen::VectorXd& params() { return params_; }
  const Eigen::VectorXd& params() const { return params_; }

  // Glorot weights, zero biases, forget-gate bias 1.
  void Initialize(std::uint64_t seed);

  // Sequences are T x input (one frame per row) and must share T. Returns
  // classes x B probabilities. Throws BadFrameDim.
  Eigen::MatrixXd Forward(const std::vector<Eigen::MatrixXd>& batch, bool training,
                          std::mt19937_64* rng = nullptr) const;
  Eigen::VectorXd Predict(const Eigen::MatrixXd& sequence) const;

  // Mean cross-entropy; adds its gradient to *grad when non-null.
  double Loss(const std::vector<Eigen::MatrixXd>& batch, const std::vector<int>& labels,
              bool training, std::mt19937_64* rng, Eigen::VectorXd* grad) const;

 private:
  AudioNetShape shape_;
  ParamLayout layout_;
  Eigen::VectorXd params_;
};

struct VideoNetShape {
  int features = 128;  // F
  int dense1 = 512;
  int dense2 = 256;
  int classes = kNumEmotions;
  double dropout = 0.2;
};

nlohmann::json VideoNetShapeToJson(const VideoNetShape& s);
VideoNetShape VideoNetShapeFromJson(const nlohmann::json& doc);

// F-512 (ReLU, dropout) - 256 (ReLU) - 7 softmax.
class VideoNet {
 public:
  explicit VideoNet(VideoNetShape shape = {});

  const VideoNetShape& shape() const { return shape_; }
  const ParamLayout& layout() const { return layout_; }
  Eigen::VectorXd& params() { return params_; }
  const Eigen::VectorXd& params() const { return params_; }

  void Initialize(std::uint64_t seed);

  // features is F x B. Throws BadFeatureDim.
  Eigen::MatrixXd Forward(const Eigen::MatrixXd& features, bool training,
                          std::mt19937_64* rng = nullptr) const;
  Eigen::VectorXd Predict(const Eigen::VectorXd& features) const;

  double Loss(const Eigen::MatrixXd& features, const std::vector<int>& labels, bool training,
              std::mt19937_64* rng, Eigen::VectorXd* grad) const;

 private:
  VideoNetShape shape_;
  ParamLayout layout_;
  Eigen::VectorXd params_;
};

Emotion ArgmaxEmotion(const Eigen::VectorXd& probs);

struct AudioDataset {
  std::vector<Eigen::MatrixXd> sequences;  // T x input each
  std::vector<int> labels;                 // class indices
};

struct VideoDataset {
  Eigen::MatrixXd features;  // F x N
  std::vector<int> labels;
};

struct EmotionTrainConfig {
  int epochs = 200;
  int batch_size = 32;
  AdamConfig adam{1e-3, 0.9, 0.999, 1e-8};
  std::uint64_t seed = 0;
  // Stop once training accuracy reaches this (> 1 never stops early).
  double target_accuracy = 2.0;
};

nlohmann::json EmotionTrainConfigToJson(const EmotionTrainConfig& c);
EmotionTrainConfig EmotionTrainConfigFromJson(const nlohmann::json& doc);

struct TrainCurve {
  std::vector<double> loss;      // mean training loss per epoch
  std::vector<double> accuracy;  // training accuracy (dropout off) per epoch
};

using EpochHook = std::function<void(int epoch, double loss, double accuracy)>;

// Shuffled minibatch Adam on categorical cross-entropy with dropout on.
// Parameters are rounded to float after every step. Throws NonFiniteLoss
// naming the epoch.
TrainCurve TrainAudioNet(AudioNet& net, const AudioDataset& data, const EmotionTrainConfig& config,
                         const EpochHook& hook = {});
TrainCurve TrainVideoNet(VideoNet& net, const VideoDataset& data, const EmotionTrainConfig& config,
                         const EpochHook& hook = {});

double Accuracy(const AudioNet& net, const AudioDataset& data);
double Accuracy(const VideoNet& net, const VideoDataset& data);

// Seven Gaussian clusters in frame space: each class has a random mean of
// norm `separation`; frames are mean + N(0, noise^2).
AudioDataset MakeClusterSequences(int per_class, int length, int dim, double separation,
                                  double noise, std::uint64_t seed);

// Stand-in for the visual feature extractor: class-conditioned Gaussian
// feature vectors.
class SyntheticVideoFeatures {
 public:
  SyntheticVideoFeatures(int dim, double separation, double noise, std::uint64_t seed);

  int dim() const { return static_cast<int>(means_.rows()); }
  Eigen::VectorXd Sample(Emotion e, std::mt19937_64& rng) const;
  Eigen::VectorXd Mean(Emotion e) const { return means_.col(ClassIndex(e)); }
  VideoDataset Dataset(int per_class, std::uint64_t seed) const;

 private:
  Eigen::MatrixXd means_;
  double noise_;
};

}  // namespace einu::emotion

#endif  // EINU_EMOTION_NETS_H_
