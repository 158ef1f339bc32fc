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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

#include "einu/common/angles.h"
#include "einu/common/error.h"

namespace einu::rl {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

RunningNormalizer::RunningNormalizer(int dim)
    : mean(VectorXd::Zero(dim)), var(VectorXd::Ones(dim)) {}

void RunningNormalizer::Update(const MatrixXd& batch) {
  if (batch.cols() == 0) return;
  if (batch.rows() != mean.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "normalizer batch dimension");
  }
  const double n = static_cast<double>(batch.cols());
  const VectorXd batch_mean = batch.rowwise().mean();
  const VectorXd batch_var =
      (batch.colwise() - batch_mean).array().square().rowwise().sum() / n;
  if (count == 0.0) {
    mean = batch_mean;
    var = batch_var;
    count = n;
    return;
  }
  const double total = count + n;
  const VectorXd delta = batch_mean - mean;
  mean += delta * (n / total);
  var = (var * count + batch_var * n + delta.array().square().matrix() * (count * n / total)) /
        total;
  count = total;
}

MatrixXd RunningNormalizer::Normalize(const MatrixXd& x) const {
  const VectorXd inv_std = (var.array() + 1e-8).rsqrt();
  MatrixXd out = (x.colwise() - mean).array().colwise() * inv_std.array();
  return out.cwiseMax(-clip).cwiseMin(clip);
}

double GaussianLogProb(const VectorXd& mean, const VectorXd& log_std, const VectorXd& action) {
  double lp = 0.0;
  for (Index i = 0; i < mean.size(); ++i) {
    const double z = (action[i] - mean[i]) * std::exp(-log_std[i]);
    lp += -0.5 * z * z - log_std[i] - 0.5 * std::log(kTwoPi);
  }
  return lp;
}

double GaussianEntropy(const VectorXd& log_std) {
  return log_std.sum() + 0.5 * (1.0 + std::log(kTwoPi)) * log_std.size();
}

Index PolicyParams::num_trainable() const {
  return actor.num_params() + log_std.size() + critic.num_params();
}

VectorXd PolicyParams::Trainable() const {
  VectorXd flat(num_trainable());
  flat << actor.params(), log_std, critic.params();
  return flat;
}

void PolicyParams::SetTrainable(const VectorXd& flat) {
  if (flat.size() != num_trainable()) {
    throw Error(ErrorCode::kDimensionMismatch, "trainable parameter vector size");
  }
  Index at = 0;
  actor.params() = flat.segment(at, actor.num_params());
  at += actor.num_params();
  log_std = flat.segment(at, log_std.size());
  at += log_std.size();
  critic.params() = flat.segment(at, critic.num_params());
}

VectorXd PolicyParams::ActionMean(const VectorXd& raw_obs) const {
  return actor.Forward(obs_norm.Normalize(raw_obs)).col(0);
}

double PolicyParams::Value(const VectorXd& raw_obs) const {
  return critic.Forward(obs_norm.Normalize(raw_obs))(0, 0);
}

bool PolicyParams::AllFinite() const {
  return actor.params().allFinite() && critic.params().allFinite() &&
         log_std.allFinite() && obs_norm.mean.allFinite() && obs_norm.var.allFinite();
}

namespace {

void Snap(VectorXd& v) {
  for (Index i = 0; i < v.size(); ++i) v[i] = static_cast<double>(static_cast<float>(v[i]));
}

bool SameBits(const VectorXd& a, const VectorXd& b) {
  return a.size() == b.size() &&
         (a.size() == 0 || std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0);
}

}  // namespace

PolicyParams InitPolicy(int obs_dim, int action_dim, std::uint64_t seed,
                        const PolicyInit& init) {
  if (obs_dim <= 0 || action_dim <= 0) {
    throw Error(ErrorCode::kInvalidParams, "policy dimensions must be positive");
  }
  std::vector<int> actor_sizes{obs_dim};
  actor_sizes.insert(actor_sizes.end(), init.hidden.begin(), init.hidden.end());
  std::vector<int> critic_sizes = actor_sizes;
  actor_sizes.push_back(action_dim);
  critic_sizes.push_back(1);

  PolicyParams p;
  p.actor = Mlp(actor_sizes);
  p.critic = Mlp(critic_sizes);
  std::mt19937_64 rng(seed);
  p.actor.Initialize(rng, init.actor_output_scale);
  p.critic.Initialize(rng, 1.0);
  p.log_std = VectorXd::Constant(action_dim, init.initial_log_std);
  p.obs_norm = RunningNormalizer(obs_dim);
  p.seed = seed;
  SnapToFloat(p);
  return p;
}

void SnapToFloat(PolicyParams& p) {
  for (Index i = 0; i < p.log_std.size(); ++i) {
    p.log_std[i] = std::clamp(p.log_std[i], kMinLogStd, kMaxLogStd);
  }
  Snap(p.actor.params());
  Snap(p.critic.params());
  Snap(p.log_std);
  Snap(p.obs_norm.mean);
  Snap(p.obs_norm.var);
  p.obs_norm.count = static_cast<double>(static_cast<float>(p.obs_norm.count));
}

bool BitwiseEqual(const PolicyParams& a, const PolicyParams& b) {
  return a.actor.sizes() == b.actor.sizes() && a.critic.sizes() == b.critic.sizes() &&
         SameBits(a.actor.params(), b.actor.params()) &&
         SameBits(a.critic.params(), b.critic.params()) && SameBits(a.log_std, b.log_std) &&
         SameBits(a.obs_norm.mean, b.obs_norm.mean) &&
         SameBits(a.obs_norm.var, b.obs_norm.var) && a.obs_norm.count == b.obs_norm.count;
}

}  // namespace einu::rl
