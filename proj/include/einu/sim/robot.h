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

#ifndef EINU_SIM_ROBOT_H_
#define EINU_SIM_ROBOT_H_

#include <array>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace einu::sim {

inline constexpr int kNumLegs = 4;
inline constexpr int kNumJoints = 8;

// Leg order: front-left, front-right, hind-left, hind-right. Joint 2*leg is
// the hip pitch, 2*leg + 1 the knee.
enum Leg { kFrontLeft = 0, kFrontRight = 1, kHindLeft = 2, kHindRight = 3 };

using JointArray = std::array<double, kNumJoints>;

struct JointLimits {
  double hip_min = -1.5;
  double hip_max = 1.5;
  double knee_min = -2.7;
  double knee_max = -0.05;

  double Lower(int joint) const { return joint % 2 == 0 ? hip_min : knee_min; }
  double Upper(int joint) const { return joint % 2 == 0 ? hip_max : knee_max; }
};

// Single rigid trunk with four massless two-link sagittal legs. Joint
// coordinates carry a reflected rotor inertia so PD servos have dynamics.
struct RobotConfig {
  double trunk_mass = 5.0;      // kg
  double body_length = 0.4;     // m, hip-to-hip along x
  double body_width = 0.4;      // m, hip-to-hip along y
  double body_height = 0.08;    // m, trunk box height
  double thigh_length = 0.15;   // m
  double shank_length = 0.15;   // m
  double rotor_inertia = 0.01;  // kg m^2 per joint
  double kp = 40.0;             // N m / rad
  double kd = 1.0;              // N m s / rad
  double torque_limit = 8.0;    // N m
  JointLimits limits;
  double stance_hip = 0.6;      // rad
  double stance_knee = -1.2;    // rad

  Eigen::Vector3d HipOffset(int leg) const;
  Eigen::Matrix3d TrunkInertia() const;
  JointArray StanceAngles() const;
  // Hip height above flat ground in the stance pose.
  double NominalHeight() const;
};

// Foot position relative to its hip, in the body frame, and its Jacobian
// with respect to (hip, knee).
Eigen::Vector3d FootInHipFrame(const RobotConfig& config, double hip, double knee);
Eigen::Vector3d KneeInHipFrame(const RobotConfig& config, double hip);
Eigen::Matrix<double, 3, 2> FootJacobian(const RobotConfig& config, double hip,
                                         double knee);

struct RobotState {
  Eigen::Vector3d base_position = Eigen::Vector3d::Zero();
  // Roll, pitch, yaw (ZYX convention), each in (-pi, pi]; derived from
  // `orientation`, which is what the integrator advances.
  Eigen::Vector3d base_rpy = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
  Eigen::Vector3d base_linear_velocity = Eigen::Vector3d::Zero();
  Eigen::Vector3d base_angular_velocity = Eigen::Vector3d::Zero();  // world
  JointArray joint_angles{};
  JointArray joint_velocities{};
  std::array<bool, kNumLegs> foot_contact{};

  Eigen::Vector3d FootWorld(const RobotConfig& config, int leg) const;
};

Eigen::Quaterniond QuaternionFromRpy(const Eigen::Vector3d& rpy);
Eigen::Vector3d RpyFromQuaternion(const Eigen::Quaterniond& q);

// PD setpoints, clamped into the mechanical limits on construction.
class JointTargets {
 public:
  JointTargets(const JointArray& angles, const JointLimits& limits);

  const JointArray& angles() const { return angles_; }
  double operator[](int i) const { return angles_[i]; }

 private:
  JointArray angles_;
};

}  // namespace einu::sim

#endif  // EINU_SIM_ROBOT_H_
