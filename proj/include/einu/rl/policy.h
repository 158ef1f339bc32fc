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

#ifndef EINU_RL_POLICY_H_
#define EINU_RL_POLICY_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "einu/rl/mlp.h"

namespace einu::rl {

inline constexpr double kMinLogStd = -5.0;
inline constexpr double kMaxLogStd = 2.0;

// Running mean/variance of observations (parallel-merge update).
struct RunningNormalizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd var;
  double count = 0.0;
  double clip = 10.0;

  RunningNormalizer() = default;
  explicit RunningNormalizer(int dim);

  int dim() const { return static_cast<int>(mean.size()); }
  // Columns of batch are raw observations.
  void Update(const Eigen::MatrixXd& batch);
  Eigen::MatrixXd Normalize(const Eigen::MatrixXd& x) const;
};

double GaussianLogProb(const Eigen::VectorXd& mean, const Eigen::VectorXd& log_std,
                       const Eigen::VectorXd& action);
double GaussianEntropy(const Eigen::VectorXd& log_std);

struct PolicyParams {
  Mlp actor;                 // obs -> action mean
  Eigen::VectorXd log_std;   // per action dimension
  Mlp critic;                // obs -> value
  RunningNormalizer obs_norm;

  // Metadata carried in checkpoints.
  std::string task = "walk";
  std::vector<double> feedback_lo;
  std::vector<double> feedback_hi;
  std::vector<std::string> obs_layout;
  nlohmann::json hyperparams = nlohmann::json::object();
  std::uint64_t seed = 0;

  int obs_dim() const { return actor.input_dim(); }
  int action_dim() const { return actor.output_dim(); }

  // Trainable parameters, flattened as actor | log_std | critic.
  Eigen::Index num_trainable() const;
  Eigen::VectorXd Trainable() const;
  void SetTrainable(const Eigen::VectorXd& flat);

  // Deterministic action (mean) and value for one raw observation.
  Eigen::VectorXd ActionMean(const Eigen::VectorXd& raw_obs) const;
  double Value(const Eigen::VectorXd& raw_obs) const;

  bool AllFinite() const;
};

struct PolicyInit {
  std::vector<int> hidden{64, 64};
  double initial_log_std = -1.0;
  double actor_output_scale = 0.01;
};

// Seeded initialization. All values are float-representable so checkpoints
// round-trip exactly.
PolicyParams InitPolicy(int obs_dim, int action_dim, std::uint64_t seed,
                        const PolicyInit& init = {});

// Rounds every stored number to the nearest float and clamps log_std.
void SnapToFloat(PolicyParams& params);

bool BitwiseEqual(const PolicyParams& a, const PolicyParams& b);

}  // namespace einu::rl

#endif  // EINU_RL_POLICY_H_
