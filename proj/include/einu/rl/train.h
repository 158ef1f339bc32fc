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

#ifndef EINU_RL_TRAIN_H_
#define EINU_RL_TRAIN_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include <json.hpp>

#include "einu/rl/env.h"
#include "einu/rl/policy.h"
#include "einu/rl/ppo.h"

namespace einu::rl {

struct IterationMetrics {
  int iteration = 0;
  double mean_return = 0.0;
  double mean_episode_len = 0.0;
  double entropy = 0.0;
  int episodes = 0;  // completed during the iteration
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double approx_kl = 0.0;
};

// {iteration, mean_return, mean_episode_len, entropy}
nlohmann::json MetricsToJson(const IterationMetrics& m);

struct TrainHooks {
  // Called after every update; return false to stop early.
  std::function<bool(const IterationMetrics&, const PolicyParams&)> on_iteration;
  // Called for every environment transition during rollouts.
  std::function<void(const StepResult&)> on_step;
};

struct TrainResult {
  PolicyParams params;
  std::vector<IterationMetrics> metrics;
};

using EnvFactory = std::function<std::unique_ptr<Environment>(int worker)>;

// Rollout (horizon steps split over num_envs workers, merged in worker
// order) -> GAE -> PPO update, config.iterations times. Deterministic in
// seed. Errors are rethrown with the iteration index prepended.
TrainResult Train(const EnvFactory& make_env, const PpoConfig& config, std::uint64_t seed,
                  const TrainHooks& hooks = {}, const PolicyParams* initial = nullptr);

// Quadruped task training with checkpoint metadata filled in.
TrainResult TrainTask(const QuadrupedEnvConfig& env_config, const PpoConfig& config,
                      std::uint64_t seed, const TrainHooks& hooks = {});

struct EpisodeResult {
  double total_reward = 0.0;
  int steps = 0;
  bool terminated = false;
};

// Runs the deterministic (mean) policy from the environment's current state
// for at most max_steps transitions, or until it terminates or truncates.
EpisodeResult RunPolicy(Environment& env, const Eigen::VectorXd& first_observation,
                        const PolicyParams& params, int max_steps,
                        const std::function<void(const StepResult&)>& observer = {});

// Mean deterministic return over fixed starts, and its analytic optimum.
double EvaluatePointMass(const PolicyParams& params, const std::vector<double>& starts);
double PointMassOptimum(const std::vector<double>& starts);

}  // namespace einu::rl

#endif  // EINU_RL_TRAIN_H_
