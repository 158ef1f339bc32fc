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

#include "einu/sim/world.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "einu/common/angles.h"
#include "einu/common/error.h"

namespace einu::sim {

namespace {

std::array<Eigen::Vector3d, 8> TrunkCorners(const RobotConfig& c) {
  std::array<Eigen::Vector3d, 8> corners;
  int k = 0;
  for (double sx : {-0.5, 0.5}) {
    for (double sy : {-0.5, 0.5}) {
      for (double sz : {-0.5, 0.5}) {
        corners[k++] = {sx * c.body_length, sy * c.body_width, sz * c.body_height};
      }
    }
  }
  return corners;
}

// Spring-damper normal force with regularized Coulomb friction. Never pulls.
Eigen::Vector3d ContactForce(const Terrain& terrain, const Eigen::Vector3d& point,
                             const Eigen::Vector3d& velocity,
                             const ContactConfig& config) {
  const TerrainContact tc = terrain.Contact(point);
  if (tc.depth <= 0.0) return Eigen::Vector3d::Zero();
  const double vn = velocity.dot(tc.normal);
  const double fn = std::max(0.0, config.stiffness * tc.depth - config.damping * vn);
  Eigen::Vector3d force = fn * tc.normal;
  const Eigen::Vector3d vt = velocity - vn * tc.normal;
  const double speed = vt.norm();
  if (speed > 0.0 && config.friction > 0.0) {
    const double ft = std::min(config.friction * fn, config.tangential_damping * speed);
    force -= (ft / speed) * vt;
  }
  return force;
}

bool AllFinite(const RobotState& s) {
  if (!s.base_position.allFinite() || !s.base_linear_velocity.allFinite() ||
      !s.base_angular_velocity.allFinite() || !s.orientation.coeffs().allFinite()) {
    return false;
  }
  for (int i = 0; i < kNumJoints; ++i) {
    if (!std::isfinite(s.joint_angles[i]) || !std::isfinite(s.joint_velocities[i])) {
      return false;
    }
  }
  return true;
}

void UpdateContactFlags(RobotState& s, const Terrain& terrain,
                        const SimConfig& config) {
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const Eigen::Vector3d foot = s.FootWorld(config.robot, leg);
    s.foot_contact[leg] =
        foot.z() <= terrain.HeightAt(foot.x(), foot.y()) + config.contact.contact_tolerance;
  }
}

}  // namespace

Pose RestingPose(const Terrain& terrain, const RobotConfig& config,
                 const JointArray& joints, double x, double y) {
  Pose pose;
  double clearance = -1e300;  // base z needed so every foot clears the ground
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const Eigen::Vector3d foot =
        config.HipOffset(leg) +
        FootInHipFrame(config, joints[2 * leg], joints[2 * leg + 1]);
    clearance = std::max(clearance, terrain.HeightAt(x + foot.x(), y + foot.y()) - foot.z());
  }
  pose.position = {x, y, clearance};
  pose.joints = joints;
  return pose;
}

Pose DefaultPose(const Terrain& terrain, const RobotConfig& config) {
  Pose pose = RestingPose(terrain, config, config.StanceAngles());
  pose.joints.reset();
  return pose;
}

std::vector<Eigen::Vector3d> BodyPoints(const RobotState& s, const RobotConfig& c) {
  std::vector<Eigen::Vector3d> points;
  points.reserve(16);
  for (const Eigen::Vector3d& corner : TrunkCorners(c)) {
    points.push_back(s.base_position + s.orientation * corner);
  }
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const Eigen::Vector3d hip = c.HipOffset(leg);
    points.push_back(s.base_position +
                     s.orientation * (hip + KneeInHipFrame(c, s.joint_angles[2 * leg])));
    points.push_back(s.FootWorld(c, leg));
  }
  return points;
}

WorldState Reset(std::shared_ptr<const Terrain> terrain, const SimConfig& config,
                 std::optional<Pose> pose, std::uint64_t seed) {
  if (!terrain) throw Error(ErrorCode::kInvalidParams, "reset without terrain");
  const Pose p = pose.value_or(DefaultPose(*terrain, config.robot));
  if (!p.position.allFinite() || !p.rpy.allFinite()) {
    throw Error(ErrorCode::kInvalidParams, "pose must be finite");
  }
  WorldState world;
  world.terrain = std::move(terrain);
  world.rng.seed(seed);
  RobotState& r = world.robot;
  r.base_position = p.position;
  r.base_rpy = {WrapPi(p.rpy.x()), WrapPi(p.rpy.y()), WrapPi(p.rpy.z())};
  r.orientation = QuaternionFromRpy(r.base_rpy);
  r.joint_angles = p.joints.value_or(config.robot.StanceAngles());
  r.joint_velocities.fill(0.0);
  for (const Eigen::Vector3d& point : BodyPoints(r, config.robot)) {
    const double h = world.terrain->HeightAt(point.x(), point.y());
    if (point.z() < h - 1e-9) {
      throw Error(ErrorCode::kPoseUnderTerrain,
                  "body point at z=" + std::to_string(point.z()) +
                      " below terrain height " + std::to_string(h));
    }
  }
  UpdateContactFlags(r, *world.terrain, config);
  return world;
}

namespace {

void Drift(RobotState& s, double h) {
  s.base_position += h * s.base_linear_velocity;
  const Eigen::Vector3d rotvec = h * s.base_angular_velocity;
  const double angle = rotvec.norm();
  if (angle > 0.0) {
    s.orientation = Eigen::Quaterniond(Eigen::AngleAxisd(angle, rotvec / angle)) *
                    s.orientation;
    s.orientation.normalize();
  }
  for (int j = 0; j < kNumJoints; ++j) s.joint_angles[j] += h * s.joint_velocities[j];
}

}  // namespace

// Drift-kick-drift (position Verlet): half position update, forces at the
// midpoint, full velocity update, second half position update.
void Step(WorldState& world, const JointTargets& targets, double dt,
          const SimConfig& config) {
  if (!(dt > 0.0) || dt > 5e-3 + 1e-15) {
    throw Error(ErrorCode::kInvalidParams, "dt must lie in (0, 5 ms]");
  }
  const RobotConfig& rc = config.robot;
  const Terrain& terrain = *world.terrain;
  RobotState& s = world.robot;
  if (!AllFinite(s)) {
    throw Error(ErrorCode::kNonFiniteState,
                "non-finite state entering tick " + std::to_string(world.tick));
  }
  const bool moving = !s.base_angular_velocity.isZero(0.0);

  Drift(s, 0.5 * dt);
  const Eigen::Matrix3d rot = s.orientation.toRotationMatrix();

  Eigen::Vector3d force(0.0, 0.0, -config.gravity * rc.trunk_mass);
  Eigen::Vector3d torque = Eigen::Vector3d::Zero();
  JointArray joint_torque{};

  for (int leg = 0; leg < kNumLegs; ++leg) {
    const int hj = 2 * leg;
    const int kj = hj + 1;
    const double hip = s.joint_angles[hj];
    const double knee = s.joint_angles[kj];
    const Eigen::Matrix<double, 3, 2> jac = FootJacobian(rc, hip, knee);
    const Eigen::Vector3d local = rc.HipOffset(leg) + FootInHipFrame(rc, hip, knee);
    const Eigen::Vector3d arm = rot * local;
    const Eigen::Vector2d qdot(s.joint_velocities[hj], s.joint_velocities[kj]);
    const Eigen::Vector3d velocity = s.base_linear_velocity +
                                     s.base_angular_velocity.cross(arm) +
                                     rot * (jac * qdot);
    const Eigen::Vector3d f =
        ContactForce(terrain, s.base_position + arm, velocity, config.contact);
    force += f;
    torque += arm.cross(f);
    const Eigen::Vector2d generalized = jac.transpose() * (rot.transpose() * f);
    joint_torque[hj] += generalized.x();
    joint_torque[kj] += generalized.y();
  }
  if (config.trunk_contacts) {
    for (const Eigen::Vector3d& corner : TrunkCorners(rc)) {
      const Eigen::Vector3d arm = rot * corner;
      const Eigen::Vector3d velocity =
          s.base_linear_velocity + s.base_angular_velocity.cross(arm);
      const Eigen::Vector3d f =
          ContactForce(terrain, s.base_position + arm, velocity, config.contact);
      force += f;
      torque += arm.cross(f);
    }
  }

  for (int j = 0; j < kNumJoints; ++j) {
    const double pd = rc.kp * (targets[j] - s.joint_angles[j]) -
                      rc.kd * s.joint_velocities[j];
    joint_torque[j] += std::clamp(pd, -rc.torque_limit, rc.torque_limit);
    s.joint_velocities[j] += dt * joint_torque[j] / rc.rotor_inertia;
  }

  const Eigen::Matrix3d inertia = rot * rc.TrunkInertia() * rot.transpose();
  const Eigen::Vector3d omega = s.base_angular_velocity;
  const Eigen::Vector3d alpha =
      inertia.ldlt().solve(torque - omega.cross(inertia * omega));
  s.base_linear_velocity += dt * force / rc.trunk_mass;
  s.base_angular_velocity += dt * alpha;

  Drift(s, 0.5 * dt);
  for (int j = 0; j < kNumJoints; ++j) {
    const double lo = rc.limits.Lower(j);
    const double hi = rc.limits.Upper(j);
    if (s.joint_angles[j] < lo) {
      s.joint_angles[j] = lo;
      s.joint_velocities[j] = std::max(0.0, s.joint_velocities[j]);
    } else if (s.joint_angles[j] > hi) {
      s.joint_angles[j] = hi;
      s.joint_velocities[j] = std::min(0.0, s.joint_velocities[j]);
    }
  }

  if (!AllFinite(s)) {
    throw Error(ErrorCode::kNonFiniteState,
                "integration blow-up at tick " + std::to_string(world.tick));
  }
  if (moving || !s.base_angular_velocity.isZero(0.0)) {
    s.base_rpy = RpyFromQuaternion(s.orientation);
  }
  UpdateContactFlags(s, terrain, config);
  ++world.tick;
  world.time = static_cast<double>(world.tick) * dt;
}

double BaseHeightAboveTerrain(const WorldState& world) {
  const Eigen::Vector3d& p = world.robot.base_position;
  return p.z() - world.terrain->HeightAt(p.x(), p.y());
}

bool CheckFall(const WorldState& world, const SimConfig& config) {
  return CheckFall(world.robot, BaseHeightAboveTerrain(world), config);
}

bool CheckFall(const RobotState& state, double base_height, const SimConfig& config) {
  const FallConfig& f = config.fall;
  return base_height < f.height_fraction * config.robot.NominalHeight() ||
         std::abs(state.base_rpy.x()) > f.roll_limit ||
         std::abs(state.base_rpy.y()) > f.pitch_limit;
}

double MechanicalEnergy(const WorldState& world, const SimConfig& config) {
  const RobotConfig& rc = config.robot;
  const RobotState& s = world.robot;
  const Eigen::Matrix3d rot = s.orientation.toRotationMatrix();
  const Eigen::Matrix3d inertia = rot * rc.TrunkInertia() * rot.transpose();
  double energy = 0.5 * rc.trunk_mass * s.base_linear_velocity.squaredNorm() +
                  0.5 * s.base_angular_velocity.dot(inertia * s.base_angular_velocity) +
                  rc.trunk_mass * config.gravity * s.base_position.z();
  for (double v : s.joint_velocities) energy += 0.5 * rc.rotor_inertia * v * v;
  std::vector<Eigen::Vector3d> points;
  for (int leg = 0; leg < kNumLegs; ++leg) points.push_back(s.FootWorld(rc, leg));
  if (config.trunk_contacts) {
    for (const Eigen::Vector3d& c : TrunkCorners(rc)) {
      points.push_back(s.base_position + rot * c);
    }
  }
  for (const Eigen::Vector3d& p : points) {
    const double depth = world.terrain->Contact(p).depth;
    if (depth > 0.0) energy += 0.5 * config.contact.stiffness * depth * depth;
  }
  return energy;
}

}  // namespace einu::sim
