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

#include "einu/rl/policy.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "einu/common/angles.h"
#include "einu/rl/mlp.h"

namespace einu::rl {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST(MlpTest, ShapesAndOffsets) {
  Mlp net({3, 4, 2});
  EXPECT_EQ(net.num_params(), 4 * 3 + 4 + 2 * 4 + 2);
  const auto shapes = net.LayerShapes();
  ASSERT_EQ(shapes.size(), 4u);
  EXPECT_EQ(shapes[0], (std::vector<int>{4, 3}));
  EXPECT_EQ(shapes[3], (std::vector<int>{2}));
}

TEST(MlpTest, ForwardByHand) {
  Mlp net({1, 1, 1});
  net.params() << 0.5, 0.1, 2.0, -0.3;  // W1 b1 W2 b2
  MatrixXd x(1, 1);
  x << 2.0;
  EXPECT_DOUBLE_EQ(net.Forward(x)(0, 0), 2.0 * std::tanh(1.1) - 0.3);
}

TEST(MlpTest, GradientsMatchFiniteDifferences) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  Mlp net({3, 5, 4, 2});
  net.Initialize(rng, 1.0);
  const MatrixXd x = MatrixXd::NullaryExpr(3, 6, [&] { return g(rng); });
  const MatrixXd w = MatrixXd::NullaryExpr(2, 6, [&] { return g(rng); });
  auto loss = [&](const Mlp& m, const MatrixXd& in) { return (m.Forward(in).array() * w.array()).sum(); };
  Mlp::Cache cache;
  net.Forward(x, &cache);
  VectorXd grad = VectorXd::Zero(net.num_params());
  net.Backward(cache, w, &grad);
  const MatrixXd dx = net.InputGradient(cache, w);
  const double h = 1e-6;
  for (Eigen::Index k = 0; k < net.num_params(); ++k) {
    Mlp p = net;
    p.params()[k] += h;
    const double up = loss(p, x);
    p.params()[k] -= 2 * h;
    const double fd = (up - loss(p, x)) / (2 * h);
    EXPECT_NEAR(grad[k], fd, 1e-7 * std::max(1.0, std::abs(fd))) << k;
  }
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    MatrixXd xp = x;
    xp(k) += h;
    const double up = loss(net, xp);
    xp(k) -= 2 * h;
    EXPECT_NEAR(dx(k), (up - loss(net, xp)) / (2 * h), 1e-7);
  }
}

TEST(NormalizerTest, ChunkedUpdateMatchesWholeBatch) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(3.0, 2.0);
  const MatrixXd x = MatrixXd::NullaryExpr(4, 300, [&] { return g(rng); });
  RunningNormalizer whole(4), chunked(4);
  whole.Update(x);
  chunked.Update(x.leftCols(17));
  chunked.Update(x.middleCols(17, 200));
  chunked.Update(x.rightCols(83));
  EXPECT_EQ(whole.count, 300.0);
  EXPECT_EQ(chunked.count, 300.0);
  const VectorXd mean = x.rowwise().mean();
  const VectorXd var = (x.colwise() - mean).array().square().rowwise().mean();
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(whole.mean[i], mean[i], 1e-12);
    EXPECT_NEAR(chunked.mean[i], mean[i], 1e-12);
    EXPECT_NEAR(chunked.var[i], var[i], 1e-10);
  }
}

TEST(NormalizerTest, ClipsNormalizedValues) {
  RunningNormalizer n(1);
  MatrixXd x(1, 2);
  x << -1.0, 1.0;
  n.Update(x);
  MatrixXd far(1, 1);
  far << 1e6;
  EXPECT_DOUBLE_EQ(n.Normalize(far)(0, 0), n.clip);
}

TEST(GaussianTest, LogProbAndEntropy) {
  VectorXd zero = VectorXd::Zero(1);
  EXPECT_DOUBLE_EQ(GaussianLogProb(zero, zero, zero), -0.5 * std::log(kTwoPi));
  VectorXd mean(2), log_std(2), a(2);
  mean << 1.0, -1.0;
  log_std << std::log(2.0), 0.0;
  a << 2.0, 0.0;
  const double expected = -0.5 * 0.25 - std::log(2.0) - 0.5 * 1.0 - std::log(kTwoPi);
  EXPECT_NEAR(GaussianLogProb(mean, log_std, a), expected, 1e-15);
  EXPECT_NEAR(GaussianEntropy(log_std), std::log(2.0) + 1.0 + std::log(kTwoPi), 1e-15);
}

TEST(PolicyTest, InitIsSeededAndFloatExact) {
  const PolicyParams a = InitPolicy(21, 2, 9);
  const PolicyParams b = InitPolicy(21, 2, 9);
  const PolicyParams c = InitPolicy(21, 2, 10);
  EXPECT_TRUE(BitwiseEqual(a, b));
  EXPECT_FALSE(BitwiseEqual(a, c));
  const VectorXd theta = a.Trainable();
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    ASSERT_EQ(static_cast<double>(static_cast<float>(theta[i])), theta[i]);
  }
  EXPECT_EQ(a.actor.sizes(), (std::vector<int>{21, 64, 64, 2}));
  EXPECT_EQ(a.critic.sizes(), (std::vector<int>{21, 64, 64, 1}));
  EXPECT_EQ(a.log_std[0], -1.0);
}

TEST(PolicyTest, TrainableRoundTrip) {
  PolicyParams p = InitPolicy(3, 2, 4);
  VectorXd theta = p.Trainable();
  EXPECT_EQ(theta.size(), p.num_trainable());
  theta[p.actor.num_params()] = 0.25;  // first log_std entry
  p.SetTrainable(theta);
  EXPECT_EQ(p.log_std[0], 0.25);
  EXPECT_EQ(p.Trainable(), theta);
}

TEST(PolicyTest, SnapClampsLogStd) {
  PolicyParams p = InitPolicy(3, 2, 4);
  p.log_std << 7.0, -9.0;
  p.actor.params()[0] = 0.1;
  SnapToFloat(p);
  EXPECT_EQ(p.log_std[0], kMaxLogStd);
  EXPECT_EQ(p.log_std[1], kMinLogStd);
  EXPECT_EQ(p.actor.params()[0], static_cast<double>(0.1f));
}

TEST(PolicyTest, NonFiniteDetected) {
  PolicyParams p = InitPolicy(3, 2, 4);
  EXPECT_TRUE(p.AllFinite());
  p.critic.params()[3] = std::numeric_limits<double>::infinity();
  EXPECT_FALSE(p.AllFinite());
}

}  // namespace
}  // namespace einu::rl
