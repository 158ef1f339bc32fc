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

#ifndef EINU_SIM_WORLD_H_
#define EINU_SIM_WORLD_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "einu/sim/robot.h"
#include "einu/sim/terrain.h"

namespace einu::sim {

struct ContactConfig {
  double stiffness = 50000.0;          // N/m
  double damping = 300.0;              // N s/m
  double friction = 0.8;               // Coulomb coefficient
  double tangential_damping = 100.0;   // N s/m, viscous regularization of stiction
  double contact_tolerance = 1e-3;     // m, foot_contact flag band
};

struct FallConfig {
  double height_fraction = 0.4;
  double roll_limit = 0.8;
  double pitch_limit = 0.8;
};

struct SimConfig {
  RobotConfig robot;
  ContactConfig contact;
  FallConfig fall;
  double gravity = 9.81;
  double dt = 1e-3;              // physics step (s)
  int physics_per_control = 25;  // control at 40 Hz
  bool trunk_contacts = true;    // trunk box corners collide with terrain
};

struct WorldState {
  RobotState robot;
  std::shared_ptr<const Terrain> terrain;
  double time = 0.0;
  std::int64_t tick = 0;
  std::mt19937_64 rng;
};

// Base pose handed to Reset; joints start at the stance pose unless given.
struct Pose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d rpy = Eigen::Vector3d::Zero();
  std::optional<JointArray> joints;
};

// Nominal stance centered on the terrain origin, feet resting on the surface.
Pose DefaultPose(const Terrain& terrain, const RobotConfig& config);
// Same, for an arbitrary symmetric joint configuration (feet on the ground).
Pose RestingPose(const Terrain& terrain, const RobotConfig& config,
                 const JointArray& joints, double x = 0.0, double y = 0.0);

// Throws PoseUnderTerrain if any body point (trunk corners, knees, feet)
// starts below the heightfield.
WorldState Reset(std::shared_ptr<const Terrain> terrain, const SimConfig& config,
                 std::optional<Pose> pose = std::nullopt, std::uint64_t seed = 0);

// Advances one semi-implicit Euler step in place. Throws NonFiniteState.
void Step(WorldState& world, const JointTargets& targets, double dt,
          const SimConfig& config);

inline WorldState Stepped(WorldState world, const JointTargets& targets, double dt,
                          const SimConfig& config) {
  Step(world, targets, dt, config);
  return world;
}

// True iff the base is below height_fraction x nominal height above the
// terrain, or |roll| / |pitch| exceed their limits.
bool CheckFall(const RobotState& state, double base_height, const SimConfig& config);
bool CheckFall(const WorldState& world, const SimConfig& config);

// Every collision point of the robot in world coordinates.
std::vector<Eigen::Vector3d> BodyPoints(const RobotState& state,
                                        const RobotConfig& config);

// Height of the base above the terrain directly beneath it.
double BaseHeightAboveTerrain(const WorldState& world);

// Kinetic + gravitational + contact-spring energy (J).
double MechanicalEnergy(const WorldState& world, const SimConfig& config);

}  // namespace einu::sim

#endif  // EINU_SIM_WORLD_H_
