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

#ifndef EINU_RL_REWARD_H_
#define EINU_RL_REWARD_H_

#include <Eigen/Core>

#include "einu/rl/gait.h"
#include "einu/sim/robot.h"

namespace einu::rl {

struct RewardWeights {
  double forward = 1.0;       // w1, per m/s
  double action = 0.005;      // w2, on the applied feedback
  double orientation = 0.5;   // w3, on roll^2 + pitch^2
  double alive = 0.05;
  double fall_penalty = -10.0;
  double pose_orientation = 0.5;
};

struct RewardContext {
  double base_height = 0.0;    // above terrain
  double target_height = 0.0;  // standup / pose
  bool fallen = false;
  double heading = 0.0;        // direction counted as forward (rad)
};

// Forward velocity is the base displacement along the heading over dt.
double Reward(Task task, const RewardWeights& weights, const sim::RobotState& prev,
              const sim::RobotState& state, const Eigen::VectorXd& action, double dt,
              const RewardContext& context);

// Mean hip height over the legs for a joint configuration on flat ground.
double PoseHeight(const sim::RobotConfig& robot, const sim::JointArray& joints);

}  // namespace einu::rl

#endif  // EINU_RL_REWARD_H_
