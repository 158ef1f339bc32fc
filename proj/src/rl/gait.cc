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

#include "einu/rl/gait.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "einu/common/angles.h"
#include "einu/common/error.h"

namespace einu::rl {

std::string_view TaskName(Task task) {
  switch (task) {
    case Task::kWalk: return "walk";
    case Task::kGallop: return "gallop";
    case Task::kStandup: return "standup";
    case Task::kPose: return "pose";
  }
  return "walk";
}

Task ParseTask(std::string_view name) {
  if (name == "walk") return Task::kWalk;
  if (name == "gallop") return Task::kGallop;
  if (name == "standup") return Task::kStandup;
  if (name == "pose") return Task::kPose;
  throw Error(ErrorCode::kInvalidParams, "unknown task '" + std::string(name) + "'");
}

TaskSpec MakeTaskSpec(Task task, const sim::RobotConfig& robot) {
  TaskSpec spec;
  spec.task = task;
  const sim::JointArray stance = robot.StanceAngles();
  switch (task) {
    case Task::kWalk:
      spec.action_dim = 2;
      spec.feedback_lo = {-0.4, -0.4};
      spec.feedback_hi = {0.4, 0.4};
      break;
    case Task::kGallop:
      spec.action_dim = 2;
      spec.feedback_lo = {-0.3, -0.3};
      spec.feedback_hi = {0.3, 0.3};
      spec.gait.stride_amplitude = 0.3;
      spec.gait.duty_factor = 0.75;
      spec.gait.phase_offsets = {0.0, 0.1, 0.5, 0.6};
      break;
    case Task::kStandup:
    case Task::kPose:
      spec.action_dim = 1;
      spec.feedback_lo = {-0.1};
      spec.feedback_hi = {0.1};
      spec.episode_length = 160;
      break;
  }
  if (task == Task::kStandup) {
    sim::JointArray crouch;
    for (int leg = 0; leg < sim::kNumLegs; ++leg) {
      crouch[2 * leg] = 1.2;
      crouch[2 * leg + 1] = -2.4;
    }
    spec.poses.start = crouch;
    for (int j = 0; j < sim::kNumJoints; ++j) {
      spec.poses.halfway[j] = 0.5 * (crouch[j] + stance[j]);
    }
    spec.poses.target = stance;
  } else if (task == Task::kPose) {
    // Sit: hind legs folded, front legs near stance.
    sim::JointArray sit = stance;
    for (int leg : {sim::kHindLeft, sim::kHindRight}) {
      sit[2 * leg] = 1.1;
      sit[2 * leg + 1] = -2.2;
    }
    spec.poses.start = stance;
    spec.poses.halfway = stance;
    spec.poses.target = sit;
    spec.poses.first_segment = 1.5;
    spec.poses.brake = 0.0;
    spec.poses.second_segment = 0.0;
  }
  return spec;
}

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double GaitEnvelope(const GaitParams& gait, double t) {
  const double up = Sigmoid(gait.ramp_rate * (t - gait.ramp_center));
  if (!std::isfinite(gait.stop_time)) return up;
  const double down =
      Sigmoid(gait.ramp_rate * ((gait.stop_time - gait.ramp_center) - t));
  return up * down;
}

sim::JointArray GaitTargets(const TaskSpec& spec, const sim::RobotConfig& robot,
                            double envelope, double phase_cycles, double left_scale,
                            double right_scale) {
  const GaitParams& g = spec.gait;
  sim::JointArray q = robot.StanceAngles();
  const double beta = g.duty_factor;
  for (int leg = 0; leg < sim::kNumLegs; ++leg) {
    const bool left = leg == sim::kFrontLeft || leg == sim::kHindLeft;
    const double amp = g.stride_amplitude * envelope * (left ? left_scale : right_scale);
    const double x = phase_cycles + g.phase_offsets[leg];
    const double u = x - std::floor(x);
    double hip_offset;
    double knee_offset = 0.0;
    if (u < beta) {
      hip_offset = amp * std::cos(kPi * u / beta);
    } else {
      const double s = (u - beta) / (1.0 - beta);
      hip_offset = -amp * std::cos(kPi * s);
      knee_offset = -g.knee_lift * envelope * std::sin(kPi * s);
    }
    q[2 * leg] += hip_offset;
    q[2 * leg + 1] += knee_offset;
  }
  return q;
}

namespace {

double SegmentBlend(double t, double begin, double end, double rate) {
  if (t <= begin) return 0.0;
  if (t >= end) return 1.0;
  const double mid = 0.5 * (begin + end);
  const double lo = Sigmoid(rate * (begin - mid));
  const double hi = Sigmoid(rate * (end - mid));
  return (Sigmoid(rate * (t - mid)) - lo) / (hi - lo);
}

sim::JointArray Lerp(const sim::JointArray& a, const sim::JointArray& b, double w) {
  sim::JointArray out;
  for (int j = 0; j < sim::kNumJoints; ++j) out[j] = a[j] + w * (b[j] - a[j]);
  return out;
}

}  // namespace

sim::JointArray PoseTargets(const PoseProgram& p, Task task, double tau) {
  if (task == Task::kPose) {
    if (tau >= p.first_segment) return p.target;
    return Lerp(p.start, p.target, SegmentBlend(tau, 0.0, p.first_segment, p.ramp_rate));
  }
  const double brake_begin = p.first_segment;
  const double brake_end = p.first_segment + p.brake;
  if (tau < brake_begin) {
    return Lerp(p.start, p.halfway, SegmentBlend(tau, 0.0, brake_begin, p.ramp_rate));
  }
  if (tau <= brake_end) return p.halfway;
  const double finish = brake_end + p.second_segment;
  if (tau >= finish) return p.target;
  return Lerp(p.halfway, p.target, SegmentBlend(tau, brake_end, finish, p.ramp_rate));
}

sim::JointTargets OpenLoopSignal(const TaskSpec& spec, const sim::RobotConfig& robot,
                                 double t) {
  if (spec.task == Task::kStandup || spec.task == Task::kPose) {
    return sim::JointTargets(PoseTargets(spec.poses, spec.task, t), robot.limits);
  }
  return sim::JointTargets(GaitTargets(spec, robot, GaitEnvelope(spec.gait, t),
                                       spec.gait.frequency * t, 1.0, 1.0),
                           robot.limits);
}

Eigen::VectorXd NominalParameters(const TaskSpec& spec) {
  return Eigen::VectorXd::Ones(spec.action_dim);
}

Eigen::VectorXd ClampFeedback(const Eigen::VectorXd& feedback,
                              const std::vector<double>& lo,
                              const std::vector<double>& hi) {
  if (static_cast<size_t>(feedback.size()) != lo.size() || lo.size() != hi.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feedback has " + std::to_string(feedback.size()) +
                    " components, bounds have " + std::to_string(lo.size()));
  }
  Eigen::VectorXd out(feedback.size());
  for (Eigen::Index i = 0; i < feedback.size(); ++i) {
    // NaN feedback contributes nothing rather than poisoning the gait.
    const double f = std::isnan(feedback[i]) ? 0.0 : feedback[i];
    out[i] = std::clamp(f, lo[i], hi[i]);
  }
  return out;
}

Eigen::VectorXd HybridAction(const Eigen::VectorXd& nominal, const Eigen::VectorXd& feedback,
                             const std::vector<double>& lo,
                             const std::vector<double>& hi) {
  if (nominal.size() != feedback.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "a(t) has " + std::to_string(nominal.size()) + " components, feedback " +
                    std::to_string(feedback.size()));
  }
  return nominal + ClampFeedback(feedback, lo, hi);
}

double TurnToHeading(double current_yaw, double target_azimuth, double max_turn_rate,
                     double dt, double gain) {
  const double error = WrapPi(target_azimuth - current_yaw);
  double limit = std::abs(max_turn_rate);
  if (dt > 0.0) limit = std::min(limit, std::abs(error) / dt);
  return std::clamp(gain * error, -limit, limit);
}

GaitController::GaitController(TaskSpec spec, sim::RobotConfig robot)
    : spec_(std::move(spec)), robot_(std::move(robot)) {}

void GaitController::Reset() {
  time_ = 0.0;
  gait_clock_ = 0.0;
  program_time_ = 0.0;
}

sim::JointTargets GaitController::Command(const Eigen::VectorXd& parameters,
                                          double yaw_command, double dt) {
  if (parameters.size() != spec_.action_dim) {
    throw Error(ErrorCode::kDimensionMismatch, "gait parameter vector size");
  }
  sim::JointArray q;
  if (spec_.task == Task::kStandup || spec_.task == Task::kPose) {
    q = PoseTargets(spec_.poses, spec_.task, program_time_);
    program_time_ += std::max(0.0, parameters[0]) * dt;
  } else {
    // Skid steering: shorten the stride on the inner side of the turn.
    const double turn = spec_.gait.turn_gain * std::clamp(yaw_command, -1.0, 1.0);
    const double left = 1.0 - std::max(0.0, turn);
    const double right = 1.0 + std::min(0.0, turn);
    q = GaitTargets(spec_, robot_, GaitEnvelope(spec_.gait, time_),
                    spec_.gait.frequency * gait_clock_, parameters[0] * left,
                    parameters[0] * right);
    gait_clock_ += std::max(0.0, parameters[1]) * dt;
  }
  time_ += dt;
  return sim::JointTargets(q, robot_.limits);
}

}  // namespace einu::rl
