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

#include "einu/rl/ppo.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "einu/common/error.h"
#include "support/ppo_instance.h"

namespace einu::rl {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

using testing::Instance;
using testing::LogProbs;
using testing::RandomInstance;

double Loss(const Instance& in, const PolicyParams& p, const PpoConfig& c) {
  return PpoLoss(p, in.obs, in.actions, in.old_log_probs, in.advantages, in.returns, c, nullptr)
      .total;
}

TEST(PpoTest, SurrogateArithmetic) {
  EXPECT_EQ(ClippedSurrogate(1.0, 0.73, 0.2), 0.73);
  EXPECT_EQ(ClippedSurrogate(1.0, -1.9, 0.2), -1.9);
  EXPECT_DOUBLE_EQ(ClippedSurrogate(1.5, 2.0, 0.2), 1.2 * 2.0);
  EXPECT_DOUBLE_EQ(ClippedSurrogate(0.5, -1.0, 0.2), -0.8);
  EXPECT_DOUBLE_EQ(ClippedSurrogate(0.5, 1.0, 0.2), 0.5);
}

TEST(PpoTest, UnitRatioSurrogateEqualsAdvantage) {
  std::mt19937_64 rng(5);
  Instance in = RandomInstance(rng, 0.2);
  in.old_log_probs = LogProbs(in.params, in.obs, in.actions);
  PpoConfig c;
  c.value_coef = 0.0;
  c.entropy_coef = 0.0;
  const LossTerms t = PpoLoss(in.params, in.obs, in.actions, in.old_log_probs, in.advantages,
                              in.returns, c, nullptr);
  EXPECT_NEAR(t.policy, -in.advantages.mean(), 1e-15);
  EXPECT_NEAR(t.approx_kl, 0.0, 1e-15);
  EXPECT_EQ(t.clip_fraction, 0.0);
}

TEST(PpoTest, AnalyticGradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(11);
  PpoConfig c;
  for (int trial = 0; trial < 25; ++trial) {
    const Instance in = RandomInstance(rng, c.clip_epsilon);
    VectorXd grad;
    PpoLoss(in.params, in.obs, in.actions, in.old_log_probs, in.advantages, in.returns, c,
            &grad);
    const VectorXd theta = in.params.Trainable();
    VectorXd fd(theta.size());
    PolicyParams p = in.params;
    const double h = 1e-6;
    for (Eigen::Index k = 0; k < theta.size(); ++k) {
      VectorXd t = theta;
      t[k] += h;
      p.SetTrainable(t);
      const double up = Loss(in, p, c);
      t[k] -= 2.0 * h;
      p.SetTrainable(t);
      const double down = Loss(in, p, c);
      fd[k] = (up - down) / (2.0 * h);
    }
    const double rel = (grad - fd).norm() / std::max(grad.norm(), fd.norm());
    EXPECT_LT(rel, 1e-4) << "trial " << trial;
  }
}

RolloutBatch RandomBatch(std::mt19937_64& rng, const PolicyParams& p, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  RolloutBatch b;
  b.observations = MatrixXd::NullaryExpr(p.obs_dim(), n, [&] { return g(rng); });
  b.actions = MatrixXd::NullaryExpr(p.action_dim(), n, [&] { return g(rng); });
  b.log_probs = LogProbs(p, b.observations, b.actions);
  b.rewards = VectorXd::NullaryExpr(n, [&] { return g(rng); });
  b.values = VectorXd::Zero(n);
  b.dones.assign(n, 0);
  b.dones.back() = 1;
  return b;
}

TEST(PpoTest, FinishBatchNormalizesAdvantages) {
  std::mt19937_64 rng(3);
  const PolicyParams p = InitPolicy(3, 2, 1);
  RolloutBatch b = RandomBatch(rng, p, 100);
  FinishBatch(b, 0.99, 0.95);
  EXPECT_TRUE(b.advantages_ready);
  EXPECT_NEAR(b.advantages.mean(), 0.0, 1e-12);
  EXPECT_NEAR((b.advantages.array() - b.advantages.mean()).square().mean(), 1.0, 1e-6);
}

TEST(PpoTest, BatchIsConsumedOnce) {
  std::mt19937_64 rng(4);
  PolicyParams p = InitPolicy(3, 2, 1);
  RolloutBatch b = RandomBatch(rng, p, 64);
  PpoConfig c;
  c.epochs = 2;
  Adam adam(p.num_trainable(), {});
  EXPECT_THROW(PpoUpdate(p, b, c, adam, rng), Error);  // no advantages yet
  FinishBatch(b, c.gamma, c.lambda);
  const UpdateStats stats = PpoUpdate(p, b, c, adam, rng);
  EXPECT_EQ(stats.minibatches, 2);
  EXPECT_TRUE(b.consumed);
  EXPECT_EQ(b.size(), 0);
  try {
    PpoUpdate(p, b, c, adam, rng);
    FAIL() << "second update on the same batch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotPermitted);
  }
}

TEST(PpoTest, NonFiniteGradientLeavesParamsUnchanged) {
  std::mt19937_64 rng(6);
  PolicyParams p = InitPolicy(3, 2, 1);
  RolloutBatch b = RandomBatch(rng, p, 64);
  PpoConfig c;
  FinishBatch(b, c.gamma, c.lambda);
  b.advantages[17] = std::numeric_limits<double>::quiet_NaN();
  const PolicyParams before = p;
  Adam adam(p.num_trainable(), {});
  try {
    PpoUpdate(p, b, c, adam, rng);
    FAIL() << "expected NonFiniteGradient";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFiniteGradient);
  }
  EXPECT_TRUE(BitwiseEqual(p, before));
  EXPECT_EQ(adam.steps(), 0);
}

TEST(PpoTest, ZeroLearningRateIsIdentity) {
  std::mt19937_64 rng(7);
  PolicyParams p = InitPolicy(3, 2, 1);
  RolloutBatch b = RandomBatch(rng, p, 64);
  PpoConfig c;
  FinishBatch(b, c.gamma, c.lambda);
  AdamConfig ac;
  ac.learning_rate = 0.0;
  Adam adam(p.num_trainable(), ac);
  const PolicyParams before = p;
  PpoUpdate(p, b, c, adam, rng);
  EXPECT_TRUE(BitwiseEqual(p, before));
}

TEST(PpoTest, LogStdStaysClampedAndFinite) {
  std::mt19937_64 rng(8);
  PolicyParams p = InitPolicy(3, 2, 1);
  p.log_std << kMaxLogStd, kMaxLogStd - 0.01;
  RolloutBatch b = RandomBatch(rng, p, 128);
  PpoConfig c;
  c.entropy_coef = 5.0;  // pushes log_std up hard
  FinishBatch(b, c.gamma, c.lambda);
  AdamConfig ac;
  ac.learning_rate = 0.05;
  Adam adam(p.num_trainable(), ac);
  PpoUpdate(p, b, c, adam, rng);
  EXPECT_TRUE(p.AllFinite());
  EXPECT_EQ(p.log_std[0], kMaxLogStd);
  EXPECT_EQ(p.log_std[1], kMaxLogStd);
}

TEST(PpoTest, ConfigJsonRoundTrip) {
  PpoConfig c;
  c.horizon = 512;
  c.init.hidden = {32, 16};
  const PpoConfig back = PpoConfigFromJson(PpoConfigToJson(c));
  EXPECT_EQ(back.horizon, 512);
  EXPECT_EQ(back.init.hidden, (std::vector<int>{32, 16}));
  EXPECT_EQ(back.clip_epsilon, c.clip_epsilon);
  EXPECT_THROW(PpoConfigFromJson({{"horizon", 0}}), Error);
}

}  // namespace
}  // namespace einu::rl
