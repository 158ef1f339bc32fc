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

#ifndef EINU_RL_GAIT_H_
#define EINU_RL_GAIT_H_

#include <array>
#include <limits>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "einu/sim/robot.h"

namespace einu::rl {

enum class Task { kWalk, kGallop, kStandup, kPose };

std::string_view TaskName(Task task);
Task ParseTask(std::string_view name);

struct GaitParams {
  double frequency = 2.5;         // Hz
  double stride_amplitude = 0.25; // rad, hip excursion about the stance angle
  double knee_lift = 0.6;         // rad, extra knee flexion mid-swing
  double duty_factor = 0.85;      // fraction of the cycle in stance
  std::array<double, sim::kNumLegs> phase_offsets{0.0, 0.5, 0.75, 0.25};
  double ramp_rate = 8.0;         // k of the start/stop sigmoid (1/s)
  double ramp_center = 0.5;       // t0 (s)
  double stop_time = std::numeric_limits<double>::infinity();
  double turn_gain = 2.0;         // inner-side stride reduction at full yaw command
};

// Timed pose program used by standup (crouch -> brake at halfway -> stand)
// and pose (stance -> target, then hold).
struct PoseProgram {
  sim::JointArray start{};
  sim::JointArray halfway{};
  sim::JointArray target{};
  double first_segment = 1.0;   // s, start -> halfway
  double brake = 0.6;           // s, hold at halfway
  double second_segment = 1.0;  // s, halfway -> target
  double ramp_rate = 8.0;

  double HalfwayTime() const { return first_segment + 0.5 * brake; }
};

struct TaskSpec {
  Task task = Task::kWalk;
  int action_dim = 2;
  std::vector<double> feedback_lo;
  std::vector<double> feedback_hi;
  int episode_length = 400;  // control steps
  GaitParams gait;
  PoseProgram poses;
};

// Per-task defaults: walk/gallop two-dimensional with bounds 0.4 / 0.3,
// standup/pose one-dimensional with bounds 0.1.
TaskSpec MakeTaskSpec(Task task, const sim::RobotConfig& robot);

double Sigmoid(double x);

// Amplitude envelope: sigmoid ramp-up around ramp_center, mirrored ramp-down
// ending at stop_time.
double GaitEnvelope(const GaitParams& gait, double t);

// Pure open-loop targets a(t) at the nominal parameters.
sim::JointTargets OpenLoopSignal(const TaskSpec& spec, const sim::RobotConfig& robot,
                                 double t);

// Joint targets for a gait at an explicit phase (cycles) and per-side
// amplitude scales.
sim::JointArray GaitTargets(const TaskSpec& spec, const sim::RobotConfig& robot,
                            double envelope, double phase_cycles, double left_scale,
                            double right_scale);

// Pose program evaluated at program time tau.
sim::JointArray PoseTargets(const PoseProgram& program, Task task, double tau);

// Open-loop parameter vector a(t) in normalized units: every component is 1
// (amplitude scale, frequency scale; or timing rate).
Eigen::VectorXd NominalParameters(const TaskSpec& spec);

// a_t + clamp(feedback, lo, hi), componentwise. Throws DimensionMismatch.
Eigen::VectorXd HybridAction(const Eigen::VectorXd& nominal, const Eigen::VectorXd& feedback,
                             const std::vector<double>& lo, const std::vector<double>& hi);

// Clamped feedback alone (the contribution added to a_t).
Eigen::VectorXd ClampFeedback(const Eigen::VectorXd& feedback,
                              const std::vector<double>& lo,
                              const std::vector<double>& hi);

// Yaw command steering toward target: clamp(gain * wrap(target - yaw),
// +-max_turn_rate), never asking for more than the remaining error in dt.
double TurnToHeading(double current_yaw, double target_azimuth, double max_turn_rate,
                     double dt, double gain = 2.0);

// Stateful generator that integrates the modulated phase / program clock.
class GaitController {
 public:
  GaitController(TaskSpec spec, sim::RobotConfig robot);

  // Joint targets for the current instant given the hybrid parameter vector
  // and a yaw command (clamped to [-1, 1], positive turns left), then
  // advances the clocks by dt.
  sim::JointTargets Command(const Eigen::VectorXd& parameters, double yaw_command,
                            double dt);

  void Reset();
  double time() const { return time_; }
  double phase() const { return spec_.gait.frequency * gait_clock_; }
  double program_time() const { return program_time_; }
  const TaskSpec& spec() const { return spec_; }

 private:
  TaskSpec spec_;
  sim::RobotConfig robot_;
  double time_ = 0.0;
  // Frequency-scaled clock (s); equals time_ while the frequency scale is 1.
  double gait_clock_ = 0.0;
  double program_time_ = 0.0;  // s, pose tasks
};

}  // namespace einu::rl

#endif  // EINU_RL_GAIT_H_
