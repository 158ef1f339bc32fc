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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "einu/common/angles.h"
#include "einu/common/error.h"
#include "einu/rl/gae.h"

namespace einu::rl {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using nlohmann::json;

json PpoConfigToJson(const PpoConfig& c) {
  return {{"horizon", c.horizon},
          {"epochs", c.epochs},
          {"minibatch_size", c.minibatch_size},
          {"clip_epsilon", c.clip_epsilon},
          {"learning_rate", c.learning_rate},
          {"gamma", c.gamma},
          {"lambda", c.lambda},
          {"value_coef", c.value_coef},
          {"entropy_coef", c.entropy_coef},
          {"max_grad_norm", c.max_grad_norm},
          {"iterations", c.iterations},
          {"num_envs", c.num_envs},
          {"hidden", c.init.hidden},
          {"initial_log_std", c.init.initial_log_std},
          {"actor_output_scale", c.init.actor_output_scale}};
}

PpoConfig PpoConfigFromJson(const json& doc) {
  PpoConfig c;
  c.horizon = doc.value("horizon", c.horizon);
  c.epochs = doc.value("epochs", c.epochs);
  c.minibatch_size = doc.value("minibatch_size", c.minibatch_size);
  c.clip_epsilon = doc.value("clip_epsilon", c.clip_epsilon);
  c.learning_rate = doc.value("learning_rate", c.learning_rate);
  c.gamma = doc.value("gamma", c.gamma);
  c.lambda = doc.value("lambda", c.lambda);
  c.value_coef = doc.value("value_coef", c.value_coef);
  c.entropy_coef = doc.value("entropy_coef", c.entropy_coef);
  c.max_grad_norm = doc.value("max_grad_norm", c.max_grad_norm);
  c.iterations = doc.value("iterations", c.iterations);
  c.num_envs = doc.value("num_envs", c.num_envs);
  c.init.hidden = doc.value("hidden", c.init.hidden);
  c.init.initial_log_std = doc.value("initial_log_std", c.init.initial_log_std);
  c.init.actor_output_scale = doc.value("actor_output_scale", c.init.actor_output_scale);
  if (c.horizon <= 0 || c.epochs < 0 || c.minibatch_size <= 0 || c.num_envs <= 0 ||
      c.iterations < 0 || !(c.clip_epsilon > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "invalid ppo config");
  }
  return c;
}

void FinishBatch(RolloutBatch& batch, double gamma, double lambda) {
  GaeResult gae = ComputeGae(batch.rewards, batch.values, batch.bootstrap_value, gamma,
                             lambda, batch.dones);
  batch.returns = gae.returns;
  const double mean = gae.advantages.mean();
  const double var = (gae.advantages.array() - mean).square().mean();
  batch.advantages = (gae.advantages.array() - mean) / (std::sqrt(var) + 1e-8);
  batch.advantages_ready = true;
}

double ClippedSurrogate(double ratio, double advantage, double epsilon) {
  const double clipped = std::clamp(ratio, 1.0 - epsilon, 1.0 + epsilon);
  return std::min(ratio * advantage, clipped * advantage);
}

LossTerms PpoLoss(const PolicyParams& params, const MatrixXd& obs, const MatrixXd& actions,
                  const VectorXd& old_log_probs, const VectorXd& advantages,
                  const VectorXd& returns, const PpoConfig& config, VectorXd* grad) {
  const Index n = obs.cols();
  const int adim = params.action_dim();
  if (n == 0 || actions.cols() != n || actions.rows() != adim ||
      old_log_probs.size() != n || advantages.size() != n || returns.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "ppo loss inputs must be aligned");
  }
  Mlp::Cache actor_cache;
  Mlp::Cache critic_cache;
  const MatrixXd mean = params.actor.Forward(obs, &actor_cache);
  const MatrixXd value = params.critic.Forward(obs, &critic_cache);
  const VectorXd inv_std = (-params.log_std.array()).exp();

  MatrixXd d_mean(adim, n);
  VectorXd d_log_std = VectorXd::Zero(adim);
  MatrixXd d_value(1, n);
  LossTerms terms;
  const double inv_n = 1.0 / static_cast<double>(n);
  const double eps = config.clip_epsilon;
  int clipped = 0;
  for (Index i = 0; i < n; ++i) {
    double lp = 0.0;
    for (int d = 0; d < adim; ++d) {
      const double z = (actions(d, i) - mean(d, i)) * inv_std[d];
      lp += -0.5 * z * z - params.log_std[d] - 0.5 * std::log(kTwoPi);
    }
    const double log_ratio = lp - old_log_probs[i];
    const double ratio = std::exp(log_ratio);
    const double a = advantages[i];
    const double clipped_ratio = std::clamp(ratio, 1.0 - eps, 1.0 + eps);
    const bool use_unclipped = ratio * a <= clipped_ratio * a;
    terms.policy -= std::min(ratio * a, clipped_ratio * a) * inv_n;
    terms.approx_kl += ((ratio - 1.0) - log_ratio) * inv_n;
    if (std::abs(ratio - 1.0) > eps) ++clipped;
    // dL/dlogp for this sample.
    const double g = use_unclipped ? -ratio * a * inv_n : 0.0;
    for (int d = 0; d < adim; ++d) {
      const double z = (actions(d, i) - mean(d, i)) * inv_std[d];
      d_mean(d, i) = g * z * inv_std[d];
      d_log_std[d] += g * (z * z - 1.0);
    }
    const double err = value(0, i) - returns[i];
    terms.value += err * err * inv_n;
    d_value(0, i) = 2.0 * config.value_coef * err * inv_n;
  }
  terms.entropy = GaussianEntropy(params.log_std);
  terms.clip_fraction = static_cast<double>(clipped) * inv_n;
  terms.total = terms.policy + config.value_coef * terms.value -
                config.entropy_coef * terms.entropy;

  if (grad != nullptr) {
    grad->setZero(params.num_trainable());
    VectorXd actor_grad = VectorXd::Zero(params.actor.num_params());
    params.actor.Backward(actor_cache, d_mean, &actor_grad);
    VectorXd critic_grad = VectorXd::Zero(params.critic.num_params());
    params.critic.Backward(critic_cache, d_value, &critic_grad);
    d_log_std.array() -= config.entropy_coef;
    *grad << actor_grad, d_log_std, critic_grad;
  }
  return terms;
}

UpdateStats PpoUpdate(PolicyParams& params, RolloutBatch& batch, const PpoConfig& config,
                      Adam& optimizer, std::mt19937_64& rng) {
  if (batch.consumed) throw Error(ErrorCode::kNotPermitted, "rollout batch already consumed");
  if (!batch.advantages_ready) {
    throw Error(ErrorCode::kNotPermitted, "rollout batch has no advantages");
  }
  const Index n = batch.size();
  const PolicyParams saved_params = params;
  const Adam saved_optimizer = optimizer;

  UpdateStats stats;
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  const Index mb = std::min<Index>(config.minibatch_size, n);
  VectorXd flat = params.Trainable();
  VectorXd grad;
  for (int epoch = 0; epoch < config.epochs && n > 0; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (Index start = 0; start < n; start += mb) {
      const Index len = std::min(mb, n - start);
      MatrixXd obs(batch.observations.rows(), len);
      MatrixXd act(batch.actions.rows(), len);
      VectorXd old_lp(len), adv(len), ret(len);
      for (Index k = 0; k < len; ++k) {
        const Index j = order[start + k];
        obs.col(k) = batch.observations.col(j);
        act.col(k) = batch.actions.col(j);
        old_lp[k] = batch.log_probs[j];
        adv[k] = batch.advantages[j];
        ret[k] = batch.returns[j];
      }
      stats.last = PpoLoss(params, obs, act, old_lp, adv, ret, config, &grad);
      if (!grad.allFinite() || !std::isfinite(stats.last.total)) {
        params = saved_params;
        optimizer = saved_optimizer;
        throw Error(ErrorCode::kNonFiniteGradient,
                    "non-finite gradient in epoch " + std::to_string(epoch));
      }
      if (config.max_grad_norm > 0.0) {
        const double norm = grad.norm();
        if (norm > config.max_grad_norm) grad *= config.max_grad_norm / norm;
      }
      optimizer.Step(flat, grad);
      params.SetTrainable(flat);
      SnapToFloat(params);
      flat = params.Trainable();
      ++stats.minibatches;
    }
  }
  batch = RolloutBatch{};
  batch.consumed = true;
  return stats;
}

}  // namespace einu::rl
