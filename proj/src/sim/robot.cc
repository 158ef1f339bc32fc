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

#include "einu/sim/robot.h"

#include <algorithm>
#include <cmath>

#include "einu/common/angles.h"

namespace einu::sim {

Eigen::Vector3d RobotConfig::HipOffset(int leg) const {
  const double x = (leg == kFrontLeft || leg == kFrontRight) ? 0.5 * body_length
                                                             : -0.5 * body_length;
  const double y = (leg == kFrontLeft || leg == kHindLeft) ? 0.5 * body_width
                                                           : -0.5 * body_width;
  return {x, y, 0.0};
}

Eigen::Matrix3d RobotConfig::TrunkInertia() const {
  const double l2 = body_length * body_length;
  const double w2 = body_width * body_width;
  const double h2 = body_height * body_height;
  return Eigen::Vector3d(trunk_mass * (w2 + h2) / 12.0,
                         trunk_mass * (l2 + h2) / 12.0,
                         trunk_mass * (l2 + w2) / 12.0)
      .asDiagonal();
}

JointArray RobotConfig::StanceAngles() const {
  JointArray q;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    q[2 * leg] = stance_hip;
    q[2 * leg + 1] = stance_knee;
  }
  return q;
}

double RobotConfig::NominalHeight() const {
  return -FootInHipFrame(*this, stance_hip, stance_knee).z();
}

Eigen::Vector3d FootInHipFrame(const RobotConfig& c, double hip, double knee) {
  return {c.thigh_length * std::sin(hip) + c.shank_length * std::sin(hip + knee),
          0.0,
          -c.thigh_length * std::cos(hip) - c.shank_length * std::cos(hip + knee)};
}

Eigen::Vector3d KneeInHipFrame(const RobotConfig& c, double hip) {
  return {c.thigh_length * std::sin(hip), 0.0, -c.thigh_length * std::cos(hip)};
}

Eigen::Matrix<double, 3, 2> FootJacobian(const RobotConfig& c, double hip,
                                         double knee) {
  const double c1 = std::cos(hip);
  const double s1 = std::sin(hip);
  const double c12 = std::cos(hip + knee);
  const double s12 = std::sin(hip + knee);
  Eigen::Matrix<double, 3, 2> j;
  j << c.thigh_length * c1 + c.shank_length * c12, c.shank_length * c12,
       0.0, 0.0,
       c.thigh_length * s1 + c.shank_length * s12, c.shank_length * s12;
  return j;
}

Eigen::Vector3d RobotState::FootWorld(const RobotConfig& config, int leg) const {
  const Eigen::Vector3d local =
      config.HipOffset(leg) +
      FootInHipFrame(config, joint_angles[2 * leg], joint_angles[2 * leg + 1]);
  return base_position + orientation * local;
}

Eigen::Quaterniond QuaternionFromRpy(const Eigen::Vector3d& rpy) {
  return Eigen::Quaterniond(Eigen::AngleAxisd(rpy.z(), Eigen::Vector3d::UnitZ()) *
                            Eigen::AngleAxisd(rpy.y(), Eigen::Vector3d::UnitY()) *
                            Eigen::AngleAxisd(rpy.x(), Eigen::Vector3d::UnitX()));
}

Eigen::Vector3d RpyFromQuaternion(const Eigen::Quaterniond& q) {
  const Eigen::Matrix3d r = q.toRotationMatrix();
  const double roll = std::atan2(r(2, 1), r(2, 2));
  const double pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  const double yaw = std::atan2(r(1, 0), r(0, 0));
  return {WrapPi(roll), WrapPi(pitch), WrapPi(yaw)};
}

JointTargets::JointTargets(const JointArray& angles, const JointLimits& limits) {
  for (int i = 0; i < kNumJoints; ++i) {
    angles_[i] = std::clamp(angles[i], limits.Lower(i), limits.Upper(i));
  }
}

}  // namespace einu::sim
