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

#ifndef EINU_RL_ENV_H_
#define EINU_RL_ENV_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "einu/rl/gait.h"
#include "einu/rl/reward.h"
#include "einu/sim/world.h"

namespace einu::rl {

struct StepResult {
  Eigen::VectorXd observation;
  double reward = 0.0;
  bool terminated = false;  // fall or other terminal state
  bool truncated = false;   // time limit
  Eigen::VectorXd applied;  // action actually applied after clamping
};

class Environment {
 public:
  virtual ~Environment() = default;
  virtual int observation_dim() const = 0;
  virtual int action_dim() const = 0;
  virtual std::vector<std::string> observation_layout() const = 0;
  virtual Eigen::VectorXd Reset(std::uint64_t seed) = 0;
  virtual StepResult Step(const Eigen::VectorXd& action) = 0;
};

// One-dimensional reach-the-origin task: x0 ~ U[-1, 1],
// x' = x + max_step * clamp(u, -1, 1), reward 1 - |x'|, fixed length.
class PointMassEnv : public Environment {
 public:
  explicit PointMassEnv(int episode_length = 50, double max_step = 0.1);

  int observation_dim() const override { return 1; }
  int action_dim() const override { return 1; }
  std::vector<std::string> observation_layout() const override { return {"x"}; }
  Eigen::VectorXd Reset(std::uint64_t seed) override;
  Eigen::VectorXd ResetTo(double x0);
  StepResult Step(const Eigen::VectorXd& action) override;

  // Best achievable return from x0: sum_t (1 - max(0, |x0| - max_step t)).
  double OptimalReturn(double x0) const;

  double position() const { return x_; }

 private:
  int episode_length_;
  double max_step_;
  double x_ = 0.0;
  int steps_ = 0;
};

// Observation fields, in the order they appear in the vector.
std::vector<std::string> DefaultObservationLayout();
// Every field name the quadruped environment understands.
std::vector<std::string> AvailableObservationFields();

struct QuadrupedEnvConfig {
  TaskSpec task;
  sim::SimConfig sim;
  RewardWeights reward;
  std::vector<sim::TerrainKind> terrains{sim::TerrainKind::kFlat, sim::TerrainKind::kUneven,
                                         sim::TerrainKind::kHilly};
  std::vector<std::string> obs_layout = DefaultObservationLayout();
  bool heading_hold = true;     // steer back to the heading at reset
  double heading_gain = 2.0;
  double max_turn_rate = 1.0;
};

QuadrupedEnvConfig DefaultQuadrupedEnvConfig(Task task);

// Hybrid-policy quadruped task: the action is the feedback pi(o); the gait
// runs on a(t) + clamp(pi(o)). One step is one control period.
class QuadrupedEnv : public Environment {
 public:
  explicit QuadrupedEnv(QuadrupedEnvConfig config);

  int observation_dim() const override { return static_cast<int>(config_.obs_layout.size()); }
  int action_dim() const override { return config_.task.action_dim; }
  std::vector<std::string> observation_layout() const override { return config_.obs_layout; }

  // Draws a terrain kind from the configured list and a terrain seed.
  Eigen::VectorXd Reset(std::uint64_t seed) override;
  // Starts on a given terrain (default task pose when pose is empty).
  Eigen::VectorXd ResetOn(std::shared_ptr<const sim::Terrain> terrain,
                          std::optional<sim::Pose> pose = std::nullopt);
  StepResult Step(const Eigen::VectorXd& action) override;

  Eigen::VectorXd Observe() const;

  void set_heading_target(double yaw) { heading_target_ = yaw; }
  double heading_target() const { return heading_target_; }
  // External steering; disables heading hold until cleared.
  void set_yaw_command(std::optional<double> command) { yaw_override_ = command; }
  // Restarts the gait clock (and its start-up ramp) without touching the world.
  void RestartGait() { controller_.Reset(); }

  const sim::WorldState& world() const { return world_; }
  sim::WorldState& mutable_world() { return world_; }
  const GaitController& controller() const { return controller_; }
  const QuadrupedEnvConfig& config() const { return config_; }
  const Eigen::VectorXd& last_applied() const { return last_applied_; }
  double target_height() const { return target_height_; }
  int steps() const { return steps_; }

 private:
  QuadrupedEnvConfig config_;
  sim::WorldState world_;
  GaitController controller_;
  Eigen::VectorXd last_applied_;
  double heading_target_ = 0.0;
  std::optional<double> yaw_override_;
  double target_height_ = 0.0;
  int steps_ = 0;
};

}  // namespace einu::rl

#endif  // EINU_RL_ENV_H_
