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

#ifndef EINU_RL_PPO_H_
#define EINU_RL_PPO_H_

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "einu/common/adam.h"
#include "einu/rl/policy.h"

namespace einu::rl {

struct PpoConfig {
  int horizon = 2048;  // control steps per iteration
  int epochs = 10;
  int minibatch_size = 64;
  double clip_epsilon = 0.2;
  double learning_rate = 3e-4;
  double gamma = 0.99;
  double lambda = 0.95;
  double value_coef = 0.5;
  double entropy_coef = 0.01;
  double max_grad_norm = 0.5;  // <= 0 disables global-norm clipping
  int iterations = 100;
  int num_envs = 1;  // rollout workers, merged in worker order
  PolicyInit init;
};

nlohmann::json PpoConfigToJson(const PpoConfig& config);
// Missing keys keep their defaults.
PpoConfig PpoConfigFromJson(const nlohmann::json& doc);

// One on-policy batch. Observations are stored normalized with the
// statistics that were frozen while the batch was collected.
struct RolloutBatch {
  Eigen::MatrixXd observations;  // obs_dim x N
  Eigen::MatrixXd actions;       // action_dim x N (raw policy samples)
  Eigen::VectorXd log_probs;
  Eigen::VectorXd rewards;
  Eigen::VectorXd values;
  std::vector<std::uint8_t> dones;
  double bootstrap_value = 0.0;
  Eigen::VectorXd advantages;
  Eigen::VectorXd returns;
  bool advantages_ready = false;
  bool consumed = false;

  Eigen::Index size() const { return rewards.size(); }
};

// Runs GAE over the batch and normalizes advantages to zero mean and unit
// variance.
void FinishBatch(RolloutBatch& batch, double gamma, double lambda);

// min(r A, clip(r, 1 - eps, 1 + eps) A).
double ClippedSurrogate(double ratio, double advantage, double epsilon);

struct LossTerms {
  double total = 0.0;
  double policy = 0.0;   // -mean surrogate
  double value = 0.0;    // mean squared value error (before its coefficient)
  double entropy = 0.0;
  double approx_kl = 0.0;
  double clip_fraction = 0.0;
};

// Full loss -surrogate + c_v * value_error - c_e * entropy over the given
// samples and, if grad is non-null, its analytic gradient with respect to
// PolicyParams::Trainable().
LossTerms PpoLoss(const PolicyParams& params, const Eigen::MatrixXd& observations,
                  const Eigen::MatrixXd& actions, const Eigen::VectorXd& old_log_probs,
                  const Eigen::VectorXd& advantages, const Eigen::VectorXd& returns,
                  const PpoConfig& config, Eigen::VectorXd* grad);

struct UpdateStats {
  LossTerms last;
  int minibatches = 0;
};

// Epochs of shuffled minibatch Adam steps on the batch, which is then marked
// consumed and cleared. A consumed batch or one without advantages throws
// NotPermitted. A non-finite gradient throws NonFiniteGradient and restores
// params and optimizer.
UpdateStats PpoUpdate(PolicyParams& params, RolloutBatch& batch, const PpoConfig& config,
                      Adam& optimizer, std::mt19937_64& rng);

}  // namespace einu::rl

#endif  // EINU_RL_PPO_H_
