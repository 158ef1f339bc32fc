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

#include "einu/rl/env.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "einu/common/angles.h"
#include "einu/common/error.h"

namespace einu::rl {

using Eigen::VectorXd;

PointMassEnv::PointMassEnv(int episode_length, double max_step)
    : episode_length_(episode_length), max_step_(max_step) {
  if (episode_length <= 0 || !(max_step > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "point mass needs positive length and step");
  }
}

VectorXd PointMassEnv::Reset(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> start(-1.0, 1.0);
  return ResetTo(start(rng));
}

VectorXd PointMassEnv::ResetTo(double x0) {
  x_ = x0;
  steps_ = 0;
  return VectorXd::Constant(1, x_);
}

StepResult PointMassEnv::Step(const VectorXd& action) {
  if (action.size() != 1) throw Error(ErrorCode::kDimensionMismatch, "point mass action");
  StepResult r;
  const double u = std::isnan(action[0]) ? 0.0 : std::clamp(action[0], -1.0, 1.0);
  x_ += max_step_ * u;
  ++steps_;
  r.observation = VectorXd::Constant(1, x_);
  r.reward = 1.0 - std::abs(x_);
  r.truncated = steps_ >= episode_length_;
  r.applied = VectorXd::Constant(1, u);
  return r;
}

double PointMassEnv::OptimalReturn(double x0) const {
  double total = 0.0;
  for (int t = 1; t <= episode_length_; ++t) {
    total += 1.0 - std::max(0.0, std::abs(x0) - max_step_ * t);
  }
  return total;
}

std::vector<std::string> DefaultObservationLayout() {
  std::vector<std::string> layout{"roll", "pitch", "forward_velocity", "phase_sin",
                                  "phase_cos"};
  for (int j = 0; j < sim::kNumJoints; ++j) layout.push_back("joint_angle_" + std::to_string(j));
  for (int j = 0; j < sim::kNumJoints; ++j) {
    layout.push_back("joint_velocity_" + std::to_string(j));
  }
  return layout;
}

std::vector<std::string> AvailableObservationFields() {
  std::vector<std::string> fields = DefaultObservationLayout();
  fields.insert(fields.end(), {"yaw_rate", "base_height", "lateral_velocity", "heading_error"});
  return fields;
}

QuadrupedEnvConfig DefaultQuadrupedEnvConfig(Task task) {
  QuadrupedEnvConfig config;
  config.task = MakeTaskSpec(task, config.sim.robot);
  return config;
}

namespace {

double ControlDt(const sim::SimConfig& sim) { return sim.dt * sim.physics_per_control; }

double ProgramDuration(const PoseProgram& p) {
  return p.first_segment + p.brake + p.second_segment;
}

}  // namespace

QuadrupedEnv::QuadrupedEnv(QuadrupedEnvConfig config)
    : config_(std::move(config)), controller_(config_.task, config_.sim.robot) {
  const std::vector<std::string> known = AvailableObservationFields();
  for (const std::string& field : config_.obs_layout) {
    if (std::find(known.begin(), known.end(), field) == known.end()) {
      throw Error(ErrorCode::kInvalidParams, "unknown observation field '" + field + "'");
    }
  }
  if (config_.terrains.empty()) throw Error(ErrorCode::kInvalidParams, "no training terrains");
  const sim::JointArray target = config_.task.task == Task::kWalk ||
                                         config_.task.task == Task::kGallop
                                     ? config_.sim.robot.StanceAngles()
                                     : config_.task.poses.target;
  target_height_ = PoseHeight(config_.sim.robot, target);
  last_applied_ = VectorXd::Zero(config_.task.action_dim);
}

VectorXd QuadrupedEnv::Reset(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const sim::TerrainKind kind = config_.terrains[rng() % config_.terrains.size()];
  const std::uint64_t terrain_seed = rng();
  auto terrain = std::make_shared<const sim::Terrain>(
      sim::GenerateTerrain(kind, terrain_seed, sim::DefaultTerrainParams(kind)));
  return ResetOn(std::move(terrain));
}

VectorXd QuadrupedEnv::ResetOn(std::shared_ptr<const sim::Terrain> terrain,
                               std::optional<sim::Pose> pose) {
  if (!pose) {
    const Task task = config_.task.task;
    if (task == Task::kStandup || task == Task::kPose) {
      pose = sim::RestingPose(*terrain, config_.sim.robot, config_.task.poses.start);
    } else {
      pose = sim::DefaultPose(*terrain, config_.sim.robot);
    }
  }
  world_ = sim::Reset(std::move(terrain), config_.sim, pose);
  controller_.Reset();
  heading_target_ = world_.robot.base_rpy.z();
  last_applied_.setZero();
  steps_ = 0;
  return Observe();
}

VectorXd QuadrupedEnv::Observe() const {
  const sim::RobotState& s = world_.robot;
  const double yaw = s.base_rpy.z();
  const Eigen::Vector3d& v = s.base_linear_velocity;
  double phi;
  if (config_.task.task == Task::kWalk || config_.task.task == Task::kGallop) {
    phi = kTwoPi * controller_.phase();
  } else {
    phi = kPi * std::min(1.0, controller_.program_time() /
                                  std::max(1e-9, ProgramDuration(config_.task.poses)));
  }
  VectorXd obs(config_.obs_layout.size());
  for (size_t i = 0; i < config_.obs_layout.size(); ++i) {
    const std::string& f = config_.obs_layout[i];
    double value = 0.0;
    if (f == "roll") {
      value = s.base_rpy.x();
    } else if (f == "pitch") {
      value = s.base_rpy.y();
    } else if (f == "forward_velocity") {
      value = v.x() * std::cos(yaw) + v.y() * std::sin(yaw);
    } else if (f == "lateral_velocity") {
      value = -v.x() * std::sin(yaw) + v.y() * std::cos(yaw);
    } else if (f == "yaw_rate") {
      value = s.base_angular_velocity.z();
    } else if (f == "base_height") {
      value = sim::BaseHeightAboveTerrain(world_);
    } else if (f == "heading_error") {
      value = WrapPi(heading_target_ - yaw);
    } else if (f == "phase_sin") {
      value = std::sin(phi);
    } else if (f == "phase_cos") {
      value = std::cos(phi);
    } else if (f.rfind("joint_angle_", 0) == 0) {
      value = s.joint_angles[std::stoi(f.substr(12))];
    } else if (f.rfind("joint_velocity_", 0) == 0) {
      value = s.joint_velocities[std::stoi(f.substr(15))];
    }
    obs[static_cast<Eigen::Index>(i)] = value;
  }
  return obs;
}

StepResult QuadrupedEnv::Step(const VectorXd& action) {
  const TaskSpec& spec = config_.task;
  if (action.size() != spec.action_dim) {
    throw Error(ErrorCode::kDimensionMismatch, "action has " + std::to_string(action.size()) +
                                                   " components, task needs " +
                                                   std::to_string(spec.action_dim));
  }
  last_applied_ = ClampFeedback(action, spec.feedback_lo, spec.feedback_hi);
  const VectorXd parameters = NominalParameters(spec) + last_applied_;
  const double cdt = ControlDt(config_.sim);
  double yaw_command = 0.0;
  if (yaw_override_) {
    yaw_command = *yaw_override_;
  } else if (config_.heading_hold) {
    yaw_command = TurnToHeading(world_.robot.base_rpy.z(), heading_target_,
                                config_.max_turn_rate, cdt, config_.heading_gain);
  }
  const sim::JointTargets targets = controller_.Command(parameters, yaw_command, cdt);
  const sim::RobotState prev = world_.robot;
  for (int k = 0; k < config_.sim.physics_per_control; ++k) {
    sim::Step(world_, targets, config_.sim.dt, config_.sim);
  }
  ++steps_;

  RewardContext context;
  context.base_height = sim::BaseHeightAboveTerrain(world_);
  context.target_height = target_height_;
  context.fallen = sim::CheckFall(world_.robot, context.base_height, config_.sim);
  context.heading = heading_target_;

  StepResult r;
  r.reward = Reward(spec.task, config_.reward, prev, world_.robot, last_applied_, cdt, context);
  r.terminated = context.fallen;
  r.truncated = !r.terminated && steps_ >= spec.episode_length;
  r.observation = Observe();
  r.applied = last_applied_;
  return r;
}

}  // namespace einu::rl
