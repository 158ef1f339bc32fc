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

#ifndef EINU_RL_EVALUATE_H_
#define EINU_RL_EVALUATE_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "einu/rl/env.h"
#include "einu/rl/policy.h"
#include "einu/sim/terrain.h"

namespace einu::rl {

struct LocomotionTrial {
  sim::TerrainKind terrain = sim::TerrainKind::kFlat;
  std::uint64_t seed = 0;
  double duration = 0.0;      // sim seconds actually run
  bool fell = false;
  double forward = 0.0;       // progress along the initial heading (m)
  double displacement = 0.0;  // net planar displacement (m)
  // Maze only: straight-line distance from the base to the goal cell center.
  double goal_distance_start = 0.0;
  double goal_distance_end = 0.0;
};

nlohmann::json LocomotionTrialToJson(const LocomotionTrial& t);

// Shortest 4-connected route through the maze's floor blocks, start to goal
// inclusive. Throws InvalidParams for non-maze terrain or an unreachable goal.
std::vector<sim::GridIndex> MazeRoute(const sim::Terrain& terrain);

// Runs the deterministic policy for `seconds` of sim time from the default
// pose on GenerateTerrain(kind, seed), stopping at a fall. On mazes the
// heading target follows MazeRoute waypoints.
LocomotionTrial EvaluateLocomotion(const QuadrupedEnvConfig& config, const PolicyParams& params,
                                   sim::TerrainKind kind, std::uint64_t seed, double seconds);

}  // namespace einu::rl

#endif  // EINU_RL_EVALUATE_H_
