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

#include "einu/rl/reward.h"

#include <cmath>

namespace einu::rl {

double Reward(Task task, const RewardWeights& w, const sim::RobotState& prev,
              const sim::RobotState& state, const Eigen::VectorXd& action, double dt,
              const RewardContext& context) {
  const double roll = state.base_rpy.x();
  const double pitch = state.base_rpy.y();
  const double tilt = roll * roll + pitch * pitch;
  double r;
  if (task == Task::kWalk || task == Task::kGallop) {
    const Eigen::Vector3d d = state.base_position - prev.base_position;
    const double forward =
        (d.x() * std::cos(context.heading) + d.y() * std::sin(context.heading)) / dt;
    r = w.forward * forward - w.action * action.squaredNorm() - w.orientation * tilt +
        w.alive;
  } else {
    r = -std::abs(context.base_height - context.target_height) - w.pose_orientation * tilt;
  }
  if (context.fallen) r += w.fall_penalty;
  return r;
}

double PoseHeight(const sim::RobotConfig& robot, const sim::JointArray& joints) {
  double sum = 0.0;
  for (int leg = 0; leg < sim::kNumLegs; ++leg) {
    sum -= sim::FootInHipFrame(robot, joints[2 * leg], joints[2 * leg + 1]).z();
  }
  return sum / sim::kNumLegs;
}

}  // namespace einu::rl
