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
#include <array>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "einu/common/angles.h"
#include "einu/common/error.h"

namespace einu::rl {
namespace {

using Eigen::VectorXd;

TEST(GaitTest, TaskDimensionsAndBounds) {
  const sim::RobotConfig robot;
  struct Expect {
    Task task;
    int dim;
    double bound;
  };
  for (const Expect& e : {Expect{Task::kWalk, 2, 0.4}, Expect{Task::kGallop, 2, 0.3},
                          Expect{Task::kStandup, 1, 0.1}, Expect{Task::kPose, 1, 0.1}}) {
    const TaskSpec spec = MakeTaskSpec(e.task, robot);
    EXPECT_EQ(spec.action_dim, e.dim) << TaskName(e.task);
    ASSERT_EQ(spec.feedback_lo.size(), static_cast<size_t>(e.dim));
    for (int i = 0; i < e.dim; ++i) {
      EXPECT_EQ(spec.feedback_lo[i], -e.bound);
      EXPECT_EQ(spec.feedback_hi[i], e.bound);
    }
    EXPECT_EQ(ParseTask(TaskName(e.task)), e.task);
  }
  EXPECT_THROW(ParseTask("trot"), Error);
}

TEST(GaitTest, PhaseOffsets) {
  const sim::RobotConfig robot;
  const TaskSpec walk = MakeTaskSpec(Task::kWalk, robot);
  const TaskSpec gallop = MakeTaskSpec(Task::kGallop, robot);
  std::array<double, 4> w = walk.gait.phase_offsets;
  std::sort(w.begin(), w.end());
  EXPECT_EQ(w, (std::array<double, 4>{0.0, 0.25, 0.5, 0.75}));
  EXPECT_EQ(gallop.gait.phase_offsets, (std::array<double, 4>{0.0, 0.1, 0.5, 0.6}));
}

TEST(GaitTest, StartsNearStance) {
  const sim::RobotConfig robot;
  const TaskSpec spec = MakeTaskSpec(Task::kWalk, robot);
  EXPECT_NEAR(GaitEnvelope(spec.gait, 0.0), 1.0 / (1.0 + std::exp(4.0)), 1e-15);
  const sim::JointArray q = OpenLoopSignal(spec, robot, 0.0).angles();
  const sim::JointArray stance = robot.StanceAngles();
  for (int j = 0; j < sim::kNumJoints; ++j) {
    EXPECT_LE(std::abs(q[j] - stance[j]), 0.02 * std::abs(stance[j])) << j;
  }
}

TEST(GaitTest, PeriodicAfterRamp) {
  const sim::RobotConfig robot;
  for (Task task : {Task::kWalk, Task::kGallop}) {
    const TaskSpec spec = MakeTaskSpec(task, robot);
    const double period = 1.0 / spec.gait.frequency;
    for (double t : {6.0, 7.13, 9.9}) {
      const sim::JointArray a = OpenLoopSignal(spec, robot, t).angles();
      const sim::JointArray b = OpenLoopSignal(spec, robot, t + period).angles();
      for (int j = 0; j < sim::kNumJoints; ++j) EXPECT_NEAR(a[j], b[j], 1e-12);
    }
  }
}

TEST(GaitTest, StopRampReturnsToStance) {
  const sim::RobotConfig robot;
  TaskSpec spec = MakeTaskSpec(Task::kWalk, robot);
  spec.gait.stop_time = 5.0;
  EXPECT_NEAR(GaitEnvelope(spec.gait, 2.5), 1.0, 1e-6);
  EXPECT_NEAR(GaitEnvelope(spec.gait, 5.0), GaitEnvelope(spec.gait, 0.0), 1e-12);
  const sim::JointArray q = OpenLoopSignal(spec, robot, 6.0).angles();
  const sim::JointArray stance = robot.StanceAngles();
  for (int j = 0; j < sim::kNumJoints; ++j) EXPECT_NEAR(q[j], stance[j], 1e-4);
}

TEST(GaitTest, SwingLiftsKnee) {
  const sim::RobotConfig robot;
  const TaskSpec spec = MakeTaskSpec(Task::kWalk, robot);
  // Leg 0 has offset 0, so phase (1 + duty) / 2 is mid-swing.
  const double mid_swing = 0.5 * (1.0 + spec.gait.duty_factor);
  const sim::JointArray q = GaitTargets(spec, robot, 1.0, mid_swing, 1.0, 1.0);
  EXPECT_NEAR(q[1], robot.stance_knee - spec.gait.knee_lift, 1e-12);
  EXPECT_NEAR(q[0], robot.stance_hip, 1e-12);
  // Touchdown: foot forward by the full stride amplitude.
  const sim::JointArray td = GaitTargets(spec, robot, 1.0, 0.0, 1.0, 1.0);
  EXPECT_NEAR(td[0], robot.stance_hip + spec.gait.stride_amplitude, 1e-12);
  EXPECT_NEAR(td[1], robot.stance_knee, 1e-12);
}

TEST(GaitTest, StandupBrakesAtHalfwayPose) {
  const sim::RobotConfig robot;
  const TaskSpec spec = MakeTaskSpec(Task::kStandup, robot);
  const double t = spec.poses.HalfwayTime();
  const sim::JointArray q = OpenLoopSignal(spec, robot, t).angles();
  for (int j = 0; j < sim::kNumJoints; ++j) EXPECT_EQ(q[j], spec.poses.halfway[j]);
  // The whole brake interval holds the same pose.
  const sim::JointArray early = PoseTargets(spec.poses, Task::kStandup, spec.poses.first_segment);
  EXPECT_EQ(early, spec.poses.halfway);
  // Beginning and end of the program.
  EXPECT_EQ(PoseTargets(spec.poses, Task::kStandup, 0.0), spec.poses.start);
  EXPECT_EQ(PoseTargets(spec.poses, Task::kStandup, 10.0), spec.poses.target);
}

TEST(GaitTest, PoseProgramSmoothAndMonotone) {
  const sim::RobotConfig robot;
  const TaskSpec spec = MakeTaskSpec(Task::kPose, robot);
  double prev = PoseTargets(spec.poses, Task::kPose, 0.0)[4];
  for (double t = 0.01; t <= 2.0; t += 0.01) {
    const double q = PoseTargets(spec.poses, Task::kPose, t)[4];
    EXPECT_GE(q, prev - 1e-15);
    EXPECT_LT(q - prev, 0.1);
    prev = q;
  }
  EXPECT_EQ(PoseTargets(spec.poses, Task::kPose, 3.0), spec.poses.target);
}

TEST(GaitTest, HybridActionClamps) {
  const VectorXd nominal = VectorXd::Ones(2);
  const std::vector<double> lo{-0.4, -0.4};
  const std::vector<double> hi{0.4, 0.4};
  const VectorXd out = HybridAction(nominal, VectorXd::Constant(2, 0.9), lo, hi);
  EXPECT_DOUBLE_EQ(out[0] - 1.0, 0.4);
  EXPECT_EQ(HybridAction(nominal, VectorXd::Zero(2), lo, hi), nominal);
  EXPECT_EQ(HybridAction(nominal, VectorXd::Constant(2, -3.0), lo, hi)[1], 1.0 - 0.4);
  EXPECT_THROW(HybridAction(nominal, VectorXd::Zero(3), lo, hi), Error);
  EXPECT_THROW(ClampFeedback(VectorXd::Zero(1), lo, hi), Error);
}

TEST(GaitTest, ZeroBoundsGiveOpenLoop) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 5.0);
  const VectorXd nominal = VectorXd::Constant(2, 1.0);
  const std::vector<double> zero{0.0, 0.0};
  for (int i = 0; i < 100; ++i) {
    const VectorXd fb = VectorXd::NullaryExpr(2, [&] { return noise(rng); });
    const VectorXd a = HybridAction(nominal, fb, zero, zero);
    EXPECT_EQ(a, nominal);
  }
}

TEST(GaitTest, ControllerAtNominalMatchesOpenLoop) {
  const sim::RobotConfig robot;
  for (Task task : {Task::kWalk, Task::kGallop, Task::kStandup, Task::kPose}) {
    const TaskSpec spec = MakeTaskSpec(task, robot);
    GaitController controller(spec, robot);
    const VectorXd p = NominalParameters(spec);
    for (int k = 0; k < 200; ++k) {
      const double t = controller.time();
      const sim::JointTargets a = controller.Command(p, 0.0, 0.025);
      EXPECT_EQ(a.angles(), OpenLoopSignal(spec, robot, t).angles()) << TaskName(task) << " " << k;
    }
  }
}

TEST(GaitTest, FrequencyScaleSlowsPhase) {
  const sim::RobotConfig robot;
  const TaskSpec spec = MakeTaskSpec(Task::kWalk, robot);
  GaitController controller(spec, robot);
  VectorXd p(2);
  p << 1.0, 0.5;
  for (int k = 0; k < 40; ++k) controller.Command(p, 0.0, 0.025);
  EXPECT_NEAR(controller.phase(), 0.5 * spec.gait.frequency * 1.0, 1e-12);
  p[1] = -1.0;  // negative rates freeze the clock
  controller.Command(p, 0.0, 0.025);
  EXPECT_NEAR(controller.phase(), 0.5 * spec.gait.frequency * 1.0, 1e-12);
}

TEST(GaitTest, YawCommandShortensInnerSide) {
  const sim::RobotConfig robot;
  const TaskSpec spec = MakeTaskSpec(Task::kWalk, robot);
  const VectorXd p = NominalParameters(spec);
  // Compare well after the start ramp.
  GaitController straight(spec, robot);
  GaitController left(spec, robot);
  sim::JointTargets s(robot.StanceAngles(), robot.limits);
  sim::JointTargets l = s;
  for (int k = 0; k < 200; ++k) {
    s = straight.Command(p, 0.0, 0.025);
    l = left.Command(p, 0.25, 0.025);
  }
  const double stance_hip = robot.stance_hip;
  // Left legs (0, 2) move with half the excursion, right legs unchanged.
  EXPECT_NEAR(l.angles()[0] - stance_hip, 0.5 * (s.angles()[0] - stance_hip), 1e-12);
  EXPECT_NEAR(l.angles()[4] - stance_hip, 0.5 * (s.angles()[4] - stance_hip), 1e-12);
  EXPECT_EQ(l.angles()[2], s.angles()[2]);
  EXPECT_EQ(l.angles()[6], s.angles()[6]);
}

TEST(GaitTest, TurnToHeading) {
  EXPECT_EQ(TurnToHeading(0.7, 0.7, 1.0, 0.025), 0.0);
  const double c = TurnToHeading(3.1, -3.1, 1.0, 0.025);
  EXPECT_GT(c, 0.0);
  EXPECT_NEAR(c, 2.0 * (kTwoPi - 6.2), 1e-12);
  EXPECT_EQ(TurnToHeading(0.0, kPi, 0.5, 0.025), 0.5);
  EXPECT_EQ(TurnToHeading(0.0, -1.0, 0.5, 0.025), -0.5);
}

TEST(GaitTest, ControllerRejectsWrongDimension) {
  const sim::RobotConfig robot;
  GaitController controller(MakeTaskSpec(Task::kWalk, robot), robot);
  EXPECT_THROW(controller.Command(VectorXd::Ones(1), 0.0, 0.025), Error);
}

}  // namespace
}  // namespace einu::rl
