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

#include <chrono>
#include <cstring>
#include <functional>
#include <cmath>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "einu/common/error.h"
#include "einu/emotion/labels.h"
#include "einu/emotion/layers.h"
#include "einu/emotion/nets.h"
#include "oracle/emotion_oracle.h"

namespace einu::emotion {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

AudioNetShape TinyAudioShape(int input = 3) {
  AudioNetShape s;
  s.input = input;
  s.dense1 = s.dense2 = s.lstm1 = s.lstm2 = s.dense3 = s.dense4 = 2;
  return s;
}

VideoNetShape TinyVideoShape() {
  VideoNetShape s;
  s.features = 4;
  s.dense1 = 3;
  s.dense2 = 2;
  return s;
}

void FillNormal(VectorXd& v, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = g(rng);
}

MatrixXd RandomMatrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  return m;
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no einu::Error thrown";
  return ErrorCode::kInvalidParams;
}

// Labels, arbitration, behavior.

TEST(LabelsTest, RanksAreABijection) {
  std::set<int> ranks;
  for (Emotion e : kAllEmotions) {
    ranks.insert(Rank(e));
    EXPECT_EQ(FromClassIndex(ClassIndex(e)), e);
    EXPECT_EQ(ParseEmotion(EmotionName(e)), e);
  }
  EXPECT_EQ(ranks, (std::set<int>{1, 2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(Rank(Emotion::kAnger), 1);
  EXPECT_EQ(Rank(Emotion::kNeutral), 7);
  EXPECT_EQ(CodeOf([] { ParseEmotion("contempt"); }), ErrorCode::kUnknownEmotion);
  EXPECT_EQ(CodeOf([] { FromClassIndex(7); }), ErrorCode::kUnknownEmotion);
  EXPECT_EQ(CodeOf([] { FromRank(0); }), ErrorCode::kUnknownEmotion);
}

TEST(ArbitrateTest, Examples) {
  EXPECT_EQ(Arbitrate(Emotion::kAnger, Emotion::kHappiness), Emotion::kAnger);
  EXPECT_EQ(Arbitrate(Emotion::kNeutral, Emotion::kNeutral), Emotion::kNeutral);
  EXPECT_EQ(Arbitrate(std::nullopt, Emotion::kFear), Emotion::kFear);
  EXPECT_EQ(Arbitrate(Emotion::kSurprise, std::nullopt), Emotion::kSurprise);
  EXPECT_EQ(CodeOf([] { Arbitrate(std::nullopt, std::nullopt); }), ErrorCode::kNoInput);
}

TEST(ArbitrateTest, AllPairsPickMinRank) {
  // Oracle: rank table written out independently of the enum values.
  const std::vector<std::pair<const char*, int>> table = {
      {"anger", 1},    {"disgust", 2},   {"fear", 3},   {"sadness", 4},
      {"surprise", 5}, {"happiness", 6}, {"neutral", 7}};
  int checked = 0;
  for (const auto& [na, ra] : table) {
    for (const auto& [nb, rb] : table) {
      const Emotion a = ParseEmotion(na);
      const Emotion b = ParseEmotion(nb);
      const char* want = ra <= rb ? na : nb;
      EXPECT_EQ(EmotionName(Arbitrate(a, b)), want) << na << " vs " << nb;
      EXPECT_EQ(Arbitrate(a, b), Arbitrate(b, a));
      ++checked;
    }
    EXPECT_EQ(Arbitrate(ParseEmotion(na), ParseEmotion(na)), ParseEmotion(na));
  }
  EXPECT_EQ(checked, 49);
}

TEST(BehaviorTest, AllLabelsWithAndWithoutAzimuth) {
  const FeedbackMap map;
  for (Emotion e : kAllEmotions) {
    const BehaviorCommand with = BehaviorFor(e, 1.2, map);
    const BehaviorCommand without = BehaviorFor(e, std::nullopt, map);
    EXPECT_EQ(with.feedback, map.For(e));
    EXPECT_EQ(without.feedback, map.For(e));
    if (Rank(e) <= 4) {
      EXPECT_EQ(with.kind, BehaviorKind::kLocomoteTowardSound) << EmotionName(e);
      ASSERT_TRUE(with.azimuth.has_value());
      EXPECT_DOUBLE_EQ(*with.azimuth, 1.2);
      EXPECT_EQ(without.kind, BehaviorKind::kHold) << EmotionName(e);
    } else {
      EXPECT_EQ(with.kind, BehaviorKind::kSquat) << EmotionName(e);
      EXPECT_EQ(without.kind, BehaviorKind::kSquat) << EmotionName(e);
    }
  }
}

TEST(BehaviorTest, AzimuthIsWrappedAndCutoffConfigurable) {
  const FeedbackMap map;
  const BehaviorCommand cmd = BehaviorFor(Emotion::kSadness, -0.5, map);
  EXPECT_NEAR(*cmd.azimuth, 2.0 * M_PI - 0.5, 1e-15);
  EXPECT_EQ(BehaviorFor(Emotion::kSadness, 1.0, map, 3).kind, BehaviorKind::kSquat);
  EXPECT_EQ(BehaviorFor(Emotion::kSurprise, 1.0, map, 5).kind,
            BehaviorKind::kLocomoteTowardSound);
  EXPECT_EQ(BehaviorName(BehaviorKind::kLocomoteTowardSound), "LocomoteTowardSound");
}

TEST(FeedbackTest, DefaultIsTotalAndInjective) {
  const FeedbackMap map;
  std::set<std::pair<std::string, std::string>> seen;
  for (Emotion e : kAllEmotions) {
    const FeedbackAction& a = FeedbackFor(map, e);
    EXPECT_FALSE(a.sound_clip_id.empty());
    EXPECT_FALSE(a.face_expression_id.empty());
    seen.insert({a.sound_clip_id, a.face_expression_id});
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(CodeOf([&] { map.For(static_cast<Emotion>(9)); }), ErrorCode::kUnknownEmotion);
}

TEST(FeedbackTest, JsonRoundTripAndValidation) {
  const FeedbackMap map;
  const FeedbackMap back = FeedbackMap::FromJson(map.ToJson());
  for (Emotion e : kAllEmotions) EXPECT_EQ(back.For(e), map.For(e));

  nlohmann::json missing = map.ToJson();
  missing.erase("fear");
  EXPECT_EQ(CodeOf([&] { FeedbackMap::FromJson(missing); }), ErrorCode::kInvalidParams);

  nlohmann::json dup = map.ToJson();
  dup["fear"] = dup["anger"];
  EXPECT_EQ(CodeOf([&] { FeedbackMap::FromJson(dup); }), ErrorCode::kInvalidParams);

  nlohmann::json unknown = map.ToJson();
  unknown["boredom"] = {{"clip", "x"}, {"face", "y"}};
  EXPECT_EQ(CodeOf([&] { FeedbackMap::FromJson(unknown); }), ErrorCode::kUnknownEmotion);
}

// Layers.

TEST(LayersTest, DenseGradient) {
  std::mt19937_64 rng(1);
  ParamLayout layout;
  layout.Add("w", 3, 4);
  layout.Add("b", 3, 1);
  VectorXd theta(layout.size());
  FillNormal(theta, rng);
  const MatrixXd x = RandomMatrix(4, 5, rng);
  const MatrixXd r = RandomMatrix(3, 5, rng);  // loss = <r, Wx + b>
  const auto f = [&](const VectorXd& t) {
    return (Dense(layout.View(t, 0), layout.View(t, 1), x).array() * r.array()).sum();
  };
  VectorXd g = VectorXd::Zero(layout.size());
  const MatrixXd dx = DenseBackward(layout.View(std::as_const(theta), 0), x, r, layout.View(g, 0),
                                    layout.View(g, 1));
  EXPECT_LT(oracle::RelativeError(g, oracle::FiniteDifferenceGradient(f, theta)), 1e-4);
  EXPECT_TRUE(dx.isApprox(layout.View(std::as_const(theta), 0).transpose() * r));
}

TEST(LayersTest, SoftmaxCrossEntropyGradient) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixXd logits = RandomMatrix(7, 3, rng);
    const std::vector<int> labels = {trial % 7, (trial + 3) % 7, 6};
    MatrixXd grad;
    SoftmaxCrossEntropy(logits, labels, &grad);
    const VectorXd flat = logits.reshaped();
    const auto f = [&](const VectorXd& t) {
      return SoftmaxCrossEntropy(t.reshaped(7, 3), labels, nullptr);
    };
    EXPECT_LT(oracle::RelativeError(grad.reshaped(), oracle::FiniteDifferenceGradient(f, flat)),
              1e-4);
  }
}

TEST(LayersTest, SoftmaxCrossEntropyStaysFiniteForHugeLogits) {
  MatrixXd logits(3, 1);
  logits << 1000.0, -1000.0, 0.0;
  MatrixXd grad;
  EXPECT_NEAR(SoftmaxCrossEntropy(logits, {1}, &grad), 2000.0, 1e-9);
  EXPECT_TRUE(grad.allFinite());
  EXPECT_EQ(CodeOf([&] { SoftmaxCrossEntropy(logits, {3}, nullptr); }),
            ErrorCode::kInvalidParams);
}

TEST(LayersTest, LstmMatchesScalarOracle) {
  std::mt19937_64 rng(3);
  const MatrixXd w = RandomMatrix(8, 3, rng);
  const MatrixXd u = RandomMatrix(8, 2, rng);
  const VectorXd b = RandomMatrix(8, 1, rng);
  std::vector<MatrixXd> xs;
  std::vector<std::vector<double>> xs_scalar;
  for (int t = 0; t < 4; ++t) {
    xs.push_back(RandomMatrix(3, 1, rng));
    xs_scalar.push_back({xs.back()(0), xs.back()(1), xs.back()(2)});
  }
  const ConstMatMap wm(w.data(), 8, 3), um(u.data(), 8, 2), bm(b.data(), 8, 1);
  const auto hs = LstmForward(wm, um, bm, xs, nullptr);
  const auto want = oracle::NaiveLstm(w, u, b, xs_scalar);
  for (int t = 0; t < 4; ++t) {
    for (int k = 0; k < 2; ++k) EXPECT_NEAR(hs[t](k, 0), want[t][k], 1e-12);
  }
}

TEST(LayersTest, LstmHandTrace) {
  // One-dimensional input, 2 units, 2 frames. W = 0.5 everywhere, U = 0,
  // b = 0 except the forget bias. Each gate pre-activation is 0.5 x.
  MatrixXd w = MatrixXd::Constant(8, 1, 0.5);
  MatrixXd u = MatrixXd::Zero(8, 2);
  VectorXd b = VectorXd::Zero(8);
  b.segment(2, 2).setConstant(1.0);
  const ConstMatMap wm(w.data(), 8, 1), um(u.data(), 8, 2), bm(b.data(), 8, 1);
  std::vector<MatrixXd> xs = {MatrixXd::Constant(1, 1, 1.0), MatrixXd::Constant(1, 1, -2.0)};
  const auto hs = LstmForward(wm, um, bm, xs, nullptr);

  const auto sig = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };
  // Frame 1: z_i = z_g = z_o = 0.5, z_f = 1.5, c_prev = 0.
  const double c1 = sig(0.5) * std::tanh(0.5);
  const double h1 = sig(0.5) * std::tanh(c1);
  // Frame 2: z_i = z_g = z_o = -1, z_f = 0 (U = 0 so h1 does not feed back).
  const double c2 = sig(0.0) * c1 + sig(-1.0) * std::tanh(-1.0);
  const double h2 = sig(-1.0) * std::tanh(c2);
  for (int k = 0; k < 2; ++k) {
    EXPECT_NEAR(hs[0](k, 0), h1, 1e-10);
    EXPECT_NEAR(hs[1](k, 0), h2, 1e-10);
  }
}

TEST(LayersTest, LstmGradient) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    ParamLayout layout;
    layout.Add("w", 8, 3);
    layout.Add("u", 8, 2);
    layout.Add("b", 8, 1);
    VectorXd theta(layout.size());
    FillNormal(theta, rng);
    std::vector<MatrixXd> xs;
    std::vector<MatrixXd> r;  // loss = sum_t <r_t, h_t>
    for (int t = 0; t < 3; ++t) {
      xs.push_back(RandomMatrix(3, 2, rng));
      r.push_back(RandomMatrix(2, 2, rng));
    }
    const auto f = [&](const VectorXd& t) {
      const auto hs =
          LstmForward(layout.View(t, 0), layout.View(t, 1), layout.View(t, 2), xs, nullptr);
      double s = 0.0;
      for (std::size_t k = 0; k < hs.size(); ++k) s += (hs[k].array() * r[k].array()).sum();
      return s;
    };
    LstmTrace trace;
    LstmForward(layout.View(std::as_const(theta), 0), layout.View(std::as_const(theta), 1), layout.View(std::as_const(theta), 2), xs, &trace);
    VectorXd g = VectorXd::Zero(layout.size());
    const auto dx = LstmBackward(layout.View(std::as_const(theta), 0), layout.View(std::as_const(theta), 1), trace, r,
                                 layout.View(g, 0), layout.View(g, 1), layout.View(g, 2));
    EXPECT_LT(oracle::RelativeError(g, oracle::FiniteDifferenceGradient(f, theta)), 1e-4)
        << "trial " << trial;

    // Input gradient for the first frame.
    VectorXd x0 = xs[0].reshaped();
    const auto fx = [&](const VectorXd& v) {
      std::vector<MatrixXd> xv = xs;
      xv[0] = v.reshaped(3, 2);
      const auto hs = LstmForward(layout.View(std::as_const(theta), 0), layout.View(std::as_const(theta), 1),
                                  layout.View(std::as_const(theta), 2), xv, nullptr);
      double s = 0.0;
      for (std::size_t k = 0; k < hs.size(); ++k) s += (hs[k].array() * r[k].array()).sum();
      return s;
    };
    EXPECT_LT(oracle::RelativeError(dx[0].reshaped(), oracle::FiniteDifferenceGradient(fx, x0)),
              1e-4);
  }
}

TEST(LayersTest, DropoutMaskIsInverted) {
  std::mt19937_64 rng(5);
  const MatrixXd m = DropoutMask(100, 100, 0.2, rng);
  int kept = 0;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double v = m.data()[i];
    EXPECT_TRUE(v == 0.0 || v == 1.25);
    kept += v != 0.0;
  }
  EXPECT_NEAR(kept / 10000.0, 0.8, 0.02);
  EXPECT_NEAR(m.mean(), 1.0, 0.03);
}

// Networks.

TEST(AudioNetTest, ShapesAsListed) {
  const AudioNet net;
  const auto& t = net.layout().tensors();
  ASSERT_EQ(t.size(), 16u);
  EXPECT_EQ(t[0].rows, 64);
  EXPECT_EQ(t[0].cols, 40);
  EXPECT_EQ(t[2].rows, 128);
  EXPECT_EQ(t[4].rows, 512);  // 4 gates x 128
  EXPECT_EQ(t[5].cols, 128);
  EXPECT_EQ(t[10].rows, 128);
  EXPECT_EQ(t[12].rows, 64);
  EXPECT_EQ(t[14].rows, 7);
  EXPECT_EQ(t[14].cols, 64);
  EXPECT_DOUBLE_EQ(net.shape().dropout, 0.2);
}

TEST(AudioNetTest, ZeroWeightsGiveUniform) {
  const AudioNet net;
  std::mt19937_64 rng(6);
  const VectorXd p = net.Predict(RandomMatrix(5, 40, rng));
  for (int k = 0; k < 7; ++k) EXPECT_NEAR(p[k], 1.0 / 7.0, 1e-15);
}

TEST(AudioNetTest, ProbabilitiesSumToOneAndDropoutOffIsDeterministic) {
  AudioNet net;
  net.Initialize(7);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixXd seq = RandomMatrix(1 + trial, 40, rng) * 5.0;
    const VectorXd p = net.Predict(seq);
    EXPECT_NEAR(p.sum(), 1.0, 1e-9);
    EXPECT_TRUE((p.array() > 0.0).all() && (p.array() < 1.0).all());
    const VectorXd q = net.Predict(seq);
    EXPECT_EQ(std::memcmp(p.data(), q.data(), sizeof(double) * 7), 0);
  }
}

TEST(AudioNetTest, RejectsBadFrameDim) {
  const AudioNet net;
  EXPECT_EQ(CodeOf([&] { net.Predict(MatrixXd::Zero(3, 39)); }), ErrorCode::kBadFrameDim);
  EXPECT_EQ(CodeOf([&] { net.Predict(MatrixXd::Zero(0, 40)); }), ErrorCode::kInvalidParams);
}

TEST(AudioNetTest, TinyNetMatchesLayerByLayerOracle) {
  AudioNet net(TinyAudioShape());
  std::mt19937_64 rng(9);
  FillNormal(net.params(), rng, 0.7);
  const MatrixXd seq = RandomMatrix(2, 3, rng);
  const auto& L = net.layout();
  const auto P = [&](int i) { return MatrixXd(L.View(net.params(), i)); };
  const auto relu = [](const MatrixXd& m) { return MatrixXd(m.cwiseMax(0.0)); };
  std::vector<std::vector<double>> a2;
  for (int t = 0; t < 2; ++t) {
    const VectorXd x = seq.row(t).transpose();
    const VectorXd a1 = relu(P(0) * x + P(1));
    const VectorXd v = relu(P(2) * a1 + P(3));
    a2.push_back({v[0], v[1]});
  }
  const auto h1 = oracle::NaiveLstm(P(4), P(5), P(6), a2);
  const auto h2 = oracle::NaiveLstm(P(7), P(8), P(9), h1);
  const VectorXd last = Eigen::Vector2d(h2[1][0], h2[1][1]);
  const VectorXd a3 = relu(P(10) * last + P(11));
  const VectorXd a4 = relu(P(12) * a3 + P(13));
  const VectorXd z = P(14) * a4 + P(15);
  const VectorXd want = z.array().exp() / z.array().exp().sum();
  EXPECT_LT((net.Predict(seq) - want).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(AudioNetTest, AnalyticGradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    AudioNet net(TinyAudioShape());
    FillNormal(net.params(), rng, 0.8);
    std::vector<MatrixXd> batch;
    for (int j = 0; j < 3; ++j) batch.push_back(RandomMatrix(3, 3, rng));
    const std::vector<int> labels = {trial % 7, (trial + 2) % 7, (trial + 5) % 7};
    // Dropout on with a fixed mask stream: every evaluation sees the same masks.
    const std::uint64_t mask_seed = 100 + trial;
    VectorXd grad = VectorXd::Zero(net.params().size());
    std::mt19937_64 r0(mask_seed);
    net.Loss(batch, labels, true, &r0, &grad);
    const VectorXd theta = net.params();
    AudioNet probe = net;
    const auto f = [&](const VectorXd& t) {
      probe.params() = t;
      std::mt19937_64 r(mask_seed);
      return probe.Loss(batch, labels, true, &r, nullptr);
    };
    EXPECT_LT(oracle::RelativeError(grad, oracle::FiniteDifferenceGradient(f, theta)), 1e-4)
        << "trial " << trial;
  }
}

TEST(VideoNetTest, ZeroWeightsGiveUniformAndShapes) {
  const VideoNet net(VideoNetShape{.features = 16});
  const VectorXd p = net.Predict(VectorXd::Ones(16));
  for (int k = 0; k < 7; ++k) EXPECT_NEAR(p[k], 1.0 / 7.0, 1e-15);
  const auto& t = net.layout().tensors();
  EXPECT_EQ(t[0].rows, 512);
  EXPECT_EQ(t[0].cols, 16);
  EXPECT_EQ(t[2].rows, 256);
  EXPECT_EQ(t[4].rows, 7);
  EXPECT_EQ(CodeOf([&] { net.Predict(VectorXd::Ones(15)); }), ErrorCode::kBadFeatureDim);
}

TEST(VideoNetTest, ScaledIdentityPicksAlignedClass) {
  VideoNet net(VideoNetShape{.features = 7});
  const auto& L = net.layout();
  L.View(net.params(), 0).topRows(7) = 3.0 * MatrixXd::Identity(7, 7);
  L.View(net.params(), 2).topLeftCorner(7, 7) = MatrixXd::Identity(7, 7);
  L.View(net.params(), 4).leftCols(7) = MatrixXd::Identity(7, 7);
  for (int c = 0; c < 7; ++c) {
    EXPECT_EQ(ArgmaxEmotion(net.Predict(VectorXd::Unit(7, c))), FromClassIndex(c));
  }
}

TEST(VideoNetTest, MatchesMatrixMultiplyOracle) {
  std::mt19937_64 rng(11);
  VideoNet net(VideoNetShape{.features = 10});
  FillNormal(net.params(), rng, 0.1);
  const auto& L = net.layout();
  for (int trial = 0; trial < 10; ++trial) {
    const VectorXd x = RandomMatrix(10, 1, rng);
    // Straight-line loops.
    const auto layer = [&](int wi, const std::vector<double>& in, bool relu) {
      const MatrixXd w = L.View(net.params(), wi);
      const MatrixXd b = L.View(net.params(), wi + 1);
      std::vector<double> out(w.rows());
      for (int i = 0; i < w.rows(); ++i) {
        double s = b(i, 0);
        for (int j = 0; j < w.cols(); ++j) s += w(i, j) * in[j];
        out[i] = relu ? std::max(0.0, s) : s;
      }
      return out;
    };
    std::vector<double> v(x.data(), x.data() + 10);
    v = layer(4, layer(2, layer(0, v, true), true), false);
    double m = v[0], z = 0.0;
    for (double e : v) m = std::max(m, e);
    for (double e : v) z += std::exp(e - m);
    const VectorXd p = net.Predict(x);
    for (int k = 0; k < 7; ++k) EXPECT_NEAR(p[k], std::exp(v[k] - m) / z, 1e-10);
  }
}

TEST(VideoNetTest, AnalyticGradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    VideoNet net(TinyVideoShape());
    FillNormal(net.params(), rng);
    const MatrixXd x = RandomMatrix(4, 3, rng);
    const std::vector<int> labels = {trial % 7, 3, 6};
    const std::uint64_t mask_seed = 200 + trial;
    VectorXd grad = VectorXd::Zero(net.params().size());
    std::mt19937_64 r0(mask_seed);
    net.Loss(x, labels, true, &r0, &grad);
    VideoNet probe = net;
    const auto f = [&](const VectorXd& t) {
      probe.params() = t;
      std::mt19937_64 r(mask_seed);
      return probe.Loss(x, labels, true, &r, nullptr);
    };
    EXPECT_LT(oracle::RelativeError(grad, oracle::FiniteDifferenceGradient(f, net.params())),
              1e-4)
        << "trial " << trial;
  }
}

// Training.

TEST(TrainTest, ZeroLearningRateLeavesParamsUnchanged) {
  AudioNet net(TinyAudioShape(40));
  net.Initialize(13);
  const VectorXd before = net.params();
  const AudioDataset data = MakeClusterSequences(3, 4, 40, 4.0, 1.0, 14);
  EmotionTrainConfig c;
  c.epochs = 5;
  c.adam.learning_rate = 0.0;
  const TrainCurve curve = TrainAudioNet(net, data, c);
  EXPECT_EQ(curve.loss.size(), 5u);
  EXPECT_EQ(std::memcmp(before.data(), net.params().data(), sizeof(double) * before.size()), 0);

  VideoNet vnet(TinyVideoShape());
  vnet.Initialize(15);
  const VectorXd vbefore = vnet.params();
  TrainVideoNet(vnet, SyntheticVideoFeatures(4, 3.0, 1.0, 16).Dataset(4, 17), c);
  EXPECT_EQ(std::memcmp(vbefore.data(), vnet.params().data(), sizeof(double) * vbefore.size()),
            0);
}

TEST(TrainTest, DeterministicGivenSeed) {
  const AudioDataset data = MakeClusterSequences(3, 4, 40, 4.0, 1.0, 18);
  EmotionTrainConfig c;
  c.epochs = 3;
  c.seed = 19;
  AudioNet a(TinyAudioShape(40)), b(TinyAudioShape(40));
  a.Initialize(20);
  b.Initialize(20);
  const TrainCurve ca = TrainAudioNet(a, data, c);
  const TrainCurve cb = TrainAudioNet(b, data, c);
  EXPECT_EQ(ca.loss, cb.loss);
  EXPECT_EQ(std::memcmp(a.params().data(), b.params().data(), sizeof(double) * a.params().size()),
            0);
}

TEST(TrainTest, NonFiniteLossNamesEpoch) {
  AudioDataset data = MakeClusterSequences(2, 3, 40, 4.0, 1.0, 21);
  data.sequences[0](0, 0) = std::nan("");
  AudioNet net(TinyAudioShape(40));
  net.Initialize(22);
  EmotionTrainConfig c;
  c.epochs = 2;
  try {
    TrainAudioNet(net, data, c);
    FAIL() << "expected NonFiniteLoss";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFiniteLoss);
    EXPECT_NE(std::string(e.what()).find("epoch 0"), std::string::npos);
  }
}

TEST(TrainTest, MixedLengthsTrain) {
  AudioDataset data = MakeClusterSequences(2, 4, 40, 4.0, 1.0, 23);
  for (std::size_t i = 0; i < data.sequences.size(); i += 2) {
    data.sequences[i].conservativeResize(2, Eigen::NoChange);
  }
  AudioNet net(TinyAudioShape(40));
  net.Initialize(24);
  EmotionTrainConfig c;
  c.epochs = 2;
  EXPECT_EQ(TrainAudioNet(net, data, c).loss.size(), 2u);
}

TEST(TrainTest, ToyAudioClustersReach95Percent) {
  const AudioDataset data = MakeClusterSequences(20, 10, 40, 4.0, 1.0, 25);
  AudioNet net;
  net.Initialize(26);
  EmotionTrainConfig c;
  c.seed = 27;
  c.target_accuracy = 0.95;
  const auto start = std::chrono::steady_clock::now();
  const TrainCurve curve = TrainAudioNet(net, data, c);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ASSERT_FALSE(curve.accuracy.empty());
  EXPECT_LE(curve.accuracy.size(), 200u);
  EXPECT_GE(curve.accuracy.back(), 0.95);
  EXPECT_LT(secs, 300.0);
  RecordProperty("epochs", static_cast<int>(curve.accuracy.size()));
}

TEST(TrainTest, ToyVideoFeaturesReach95Percent) {
  const SyntheticVideoFeatures gen(32, 4.0, 1.0, 28);
  const VideoDataset data = gen.Dataset(20, 29);
  VideoNet net(VideoNetShape{.features = 32});
  net.Initialize(30);
  EmotionTrainConfig c;
  c.seed = 31;
  c.target_accuracy = 0.95;
  const TrainCurve curve = TrainVideoNet(net, data, c);
  EXPECT_LE(curve.accuracy.size(), 200u);
  EXPECT_GE(curve.accuracy.back(), 0.95);
}

TEST(TrainTest, ConfigJsonRoundTrip) {
  EmotionTrainConfig c;
  c.epochs = 7;
  c.batch_size = 16;
  c.seed = 99;
  const EmotionTrainConfig back = EmotionTrainConfigFromJson(EmotionTrainConfigToJson(c));
  EXPECT_EQ(back.epochs, 7);
  EXPECT_EQ(back.batch_size, 16);
  EXPECT_EQ(back.seed, 99u);
  EXPECT_DOUBLE_EQ(back.adam.learning_rate, 1e-3);
  const AudioNetShape s = AudioNetShapeFromJson(AudioNetShapeToJson(TinyAudioShape()));
  EXPECT_EQ(s.lstm2, 2);
  EXPECT_EQ(VideoNetShapeFromJson(VideoNetShapeToJson(TinyVideoShape())).dense1, 3);
}

}  // namespace
}  // namespace einu::emotion
