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

#include "einu/rl/train.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "einu/common/error.h"
#include "einu/rl/gae.h"

namespace einu::rl {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

nlohmann::json MetricsToJson(const IterationMetrics& m) {
  return {{"iteration", m.iteration},
          {"mean_return", m.mean_return},
          {"mean_episode_len", m.mean_episode_len},
          {"entropy", m.entropy}};
}

namespace {

std::uint64_t SplitMix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Worker {
  std::unique_ptr<Environment> env;
  std::mt19937_64 episode_rng;
  VectorXd obs;
  double episode_return = 0.0;
  int episode_len = 0;
};

struct Segment {
  RolloutBatch batch;
  MatrixXd raw_obs;
};

}  // namespace

TrainResult Train(const EnvFactory& make_env, const PpoConfig& config, std::uint64_t seed,
                  const TrainHooks& hooks, const PolicyParams* initial) {
  std::vector<Worker> workers(config.num_envs);
  for (int w = 0; w < config.num_envs; ++w) {
    workers[w].env = make_env(w);
    if (!workers[w].env) throw Error(ErrorCode::kInvalidParams, "environment factory failed");
    workers[w].episode_rng.seed(SplitMix(seed ^ (0x1000ULL + w)));
  }
  const int obs_dim = workers[0].env->observation_dim();
  const int act_dim = workers[0].env->action_dim();

  TrainResult result;
  result.params = initial ? *initial : InitPolicy(obs_dim, act_dim, seed, config.init);
  if (result.params.obs_dim() != obs_dim || result.params.action_dim() != act_dim) {
    throw Error(ErrorCode::kDimensionMismatch, "initial policy does not match environment");
  }
  result.params.obs_layout = workers[0].env->observation_layout();
  result.params.hyperparams = PpoConfigToJson(config);
  result.params.seed = seed;
  if (config.iterations == 0) return result;

  PolicyParams& params = result.params;
  std::mt19937_64 action_rng(SplitMix(seed ^ 0xa5a5ULL));
  std::mt19937_64 shuffle_rng(SplitMix(seed ^ 0x5a5aULL));
  std::normal_distribution<double> normal(0.0, 1.0);
  AdamConfig adam_config;
  adam_config.learning_rate = config.learning_rate;
  Adam optimizer(params.num_trainable(), adam_config);

  for (Worker& w : workers) w.obs = w.env->Reset(w.episode_rng());
  const int per_worker = (config.horizon + config.num_envs - 1) / config.num_envs;

  for (int it = 0; it < config.iterations; ++it) {
    try {
      IterationMetrics m;
      m.iteration = it;
      double completed_return = 0.0;
      double completed_len = 0.0;
      const RunningNormalizer norm = params.obs_norm;
      const VectorXd stddev = params.log_std.array().exp();

      std::vector<Segment> segments(workers.size());
      for (size_t wi = 0; wi < workers.size(); ++wi) {
        Worker& w = workers[wi];
        Segment& seg = segments[wi];
        RolloutBatch& b = seg.batch;
        b.observations.resize(obs_dim, per_worker);
        b.actions.resize(act_dim, per_worker);
        b.log_probs.resize(per_worker);
        b.rewards.resize(per_worker);
        b.values.resize(per_worker);
        b.dones.assign(per_worker, 0);
        seg.raw_obs.resize(obs_dim, per_worker);
        for (int t = 0; t < per_worker; ++t) {
          const VectorXd x = norm.Normalize(w.obs);
          const VectorXd mean = params.actor.Forward(x).col(0);
          VectorXd action(act_dim);
          for (int d = 0; d < act_dim; ++d) action[d] = mean[d] + stddev[d] * normal(action_rng);
          b.observations.col(t) = x;
          seg.raw_obs.col(t) = w.obs;
          b.actions.col(t) = action;
          b.log_probs[t] = GaussianLogProb(mean, params.log_std, action);
          b.values[t] = params.critic.Forward(x)(0, 0);

          StepResult step = w.env->Step(action);
          if (hooks.on_step) hooks.on_step(step);
          double reward = step.reward;
          w.episode_return += step.reward;
          ++w.episode_len;
          if (step.truncated && !step.terminated) {
            reward += config.gamma * params.critic.Forward(norm.Normalize(step.observation))(0, 0);
          }
          b.rewards[t] = reward;
          if (step.terminated || step.truncated) {
            b.dones[t] = 1;
            completed_return += w.episode_return;
            completed_len += w.episode_len;
            ++m.episodes;
            w.episode_return = 0.0;
            w.episode_len = 0;
            w.obs = w.env->Reset(w.episode_rng());
          } else {
            w.obs = step.observation;
          }
        }
        b.bootstrap_value = params.critic.Forward(norm.Normalize(w.obs))(0, 0);
      }

      // GAE per worker segment, then merge in worker order.
      RolloutBatch batch;
      const Index total = per_worker * static_cast<Index>(workers.size());
      batch.observations.resize(obs_dim, total);
      batch.actions.resize(act_dim, total);
      batch.log_probs.resize(total);
      batch.rewards.resize(total);
      batch.values.resize(total);
      batch.advantages.resize(total);
      batch.returns.resize(total);
      MatrixXd raw(obs_dim, total);
      for (size_t wi = 0; wi < segments.size(); ++wi) {
        const RolloutBatch& s = segments[wi].batch;
        const GaeResult gae = ComputeGae(s.rewards, s.values, s.bootstrap_value, config.gamma,
                                         config.lambda, s.dones);
        const Index at = static_cast<Index>(wi) * per_worker;
        batch.observations.middleCols(at, per_worker) = s.observations;
        batch.actions.middleCols(at, per_worker) = s.actions;
        batch.log_probs.segment(at, per_worker) = s.log_probs;
        batch.rewards.segment(at, per_worker) = s.rewards;
        batch.values.segment(at, per_worker) = s.values;
        batch.advantages.segment(at, per_worker) = gae.advantages;
        batch.returns.segment(at, per_worker) = gae.returns;
        batch.dones.insert(batch.dones.end(), s.dones.begin(), s.dones.end());
        raw.middleCols(at, per_worker) = segments[wi].raw_obs;
      }
      const double mean_adv = batch.advantages.mean();
      const double std_adv =
          std::sqrt((batch.advantages.array() - mean_adv).square().mean());
      batch.advantages = (batch.advantages.array() - mean_adv) / (std_adv + 1e-8);
      batch.advantages_ready = true;

      const UpdateStats stats = PpoUpdate(params, batch, config, optimizer, shuffle_rng);
      params.obs_norm.Update(raw);
      SnapToFloat(params);
      if (!params.AllFinite()) {
        throw Error(ErrorCode::kNonFiniteGradient, "policy parameters became non-finite");
      }

      if (m.episodes > 0) {
        m.mean_return = completed_return / m.episodes;
        m.mean_episode_len = completed_len / m.episodes;
      } else {
        double partial = 0.0;
        double len = 0.0;
        for (const Worker& w : workers) {
          partial += w.episode_return;
          len += w.episode_len;
        }
        m.mean_return = partial / workers.size();
        m.mean_episode_len = len / workers.size();
      }
      m.entropy = GaussianEntropy(params.log_std);
      m.policy_loss = stats.last.policy;
      m.value_loss = stats.last.value;
      m.approx_kl = stats.last.approx_kl;
      result.metrics.push_back(m);
      if (hooks.on_iteration && !hooks.on_iteration(m, params)) break;
    } catch (const Error& e) {
      throw Error(e.code(), "iteration " + std::to_string(it) + ": " + e.what());
    }
  }
  return result;
}

TrainResult TrainTask(const QuadrupedEnvConfig& env_config, const PpoConfig& config,
                      std::uint64_t seed, const TrainHooks& hooks) {
  EnvFactory factory = [&env_config](int) {
    return std::make_unique<QuadrupedEnv>(env_config);
  };
  TrainResult result = Train(factory, config, seed, hooks);
  result.params.task = std::string(TaskName(env_config.task.task));
  result.params.feedback_lo = env_config.task.feedback_lo;
  result.params.feedback_hi = env_config.task.feedback_hi;
  return result;
}

EpisodeResult RunPolicy(Environment& env, const VectorXd& first_observation,
                        const PolicyParams& params, int max_steps,
                        const std::function<void(const StepResult&)>& observer) {
  EpisodeResult out;
  VectorXd obs = first_observation;
  for (int t = 0; t < max_steps; ++t) {
    const StepResult step = env.Step(params.ActionMean(obs));
    if (observer) observer(step);
    out.total_reward += step.reward;
    ++out.steps;
    if (step.terminated) {
      out.terminated = true;
      break;
    }
    if (step.truncated) break;
    obs = step.observation;
  }
  return out;
}

double EvaluatePointMass(const PolicyParams& params, const std::vector<double>& starts) {
  PointMassEnv env;
  double total = 0.0;
  for (double x0 : starts) {
    const VectorXd obs = env.ResetTo(x0);
    total += RunPolicy(env, obs, params, 1 << 20).total_reward;
  }
  return total / static_cast<double>(starts.size());
}

double PointMassOptimum(const std::vector<double>& starts) {
  PointMassEnv env;
  double total = 0.0;
  for (double x0 : starts) total += env.OptimalReturn(x0);
  return total / static_cast<double>(starts.size());
}

}  // namespace einu::rl
