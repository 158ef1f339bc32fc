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

#include "einu/rl/evaluate.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>

#include "einu/common/error.h"

namespace einu::rl {

using nlohmann::json;

json LocomotionTrialToJson(const LocomotionTrial& t) {
  json doc = {{"terrain", sim::TerrainKindName(t.terrain)},
              {"seed", t.seed},
              {"duration", t.duration},
              {"fell", t.fell},
              {"forward", t.forward},
              {"displacement", t.displacement}};
  if (t.terrain == sim::TerrainKind::kMaze) {
    doc["goal_distance_start"] = t.goal_distance_start;
    doc["goal_distance_end"] = t.goal_distance_end;
  }
  return doc;
}

std::vector<sim::GridIndex> MazeRoute(const sim::Terrain& terrain) {
  if (terrain.kind() != sim::TerrainKind::kMaze) {
    throw Error(ErrorCode::kInvalidParams, "maze route requested on non-maze terrain");
  }
  const int rows = terrain.rows(), cols = terrain.cols();
  const auto id = [cols](sim::GridIndex g) { return g.row * cols + g.col; };
  const sim::GridIndex start = terrain.maze_start(), goal = terrain.maze_goal();
  std::vector<int> prev(rows * cols, -1);
  std::queue<sim::GridIndex> frontier;
  prev[id(start)] = id(start);
  frontier.push(start);
  while (!frontier.empty()) {
    const sim::GridIndex c = frontier.front();
    frontier.pop();
    if (c == goal) break;
    constexpr int kDr[4] = {1, -1, 0, 0};
    constexpr int kDc[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const sim::GridIndex n{c.row + kDr[k], c.col + kDc[k]};
      if (n.row < 0 || n.col < 0 || n.row >= rows || n.col >= cols) continue;
      if (terrain.At(n.row, n.col) > 0.0 || prev[id(n)] >= 0) continue;
      prev[id(n)] = id(c);
      frontier.push(n);
    }
  }
  if (prev[id(goal)] < 0) throw Error(ErrorCode::kInvalidParams, "maze goal unreachable");
  std::vector<sim::GridIndex> route;
  for (int c = id(goal);; c = prev[c]) {
    route.push_back({c / cols, c % cols});
    if (c == id(start)) break;
  }
  std::reverse(route.begin(), route.end());
  return route;
}

LocomotionTrial EvaluateLocomotion(const QuadrupedEnvConfig& config, const PolicyParams& params,
                                   sim::TerrainKind kind, std::uint64_t seed, double seconds) {
  QuadrupedEnvConfig cfg = config;
  cfg.heading_hold = true;
  QuadrupedEnv env(cfg);
  auto terrain = std::make_shared<const sim::Terrain>(
      sim::GenerateTerrain(kind, seed, sim::DefaultTerrainParams(kind)));
  Eigen::VectorXd obs = env.ResetOn(terrain);

  const bool maze = kind == sim::TerrainKind::kMaze;
  std::vector<sim::GridIndex> route;
  Eigen::Vector2d goal = Eigen::Vector2d::Zero();
  if (maze) {
    route = MazeRoute(*terrain);
    goal = terrain->BlockCenter(terrain->maze_goal());
  }
  const auto planar = [&] { return Eigen::Vector2d(env.world().robot.base_position.head<2>()); };
  const Eigen::Vector2d p0 = planar();
  const double yaw0 = env.world().robot.base_rpy.z();

  LocomotionTrial trial;
  trial.terrain = kind;
  trial.seed = seed;
  trial.goal_distance_start = maze ? (p0 - goal).norm() : 0.0;

  const double control_dt = cfg.sim.dt * cfg.sim.physics_per_control;
  const int steps = static_cast<int>(std::lround(seconds / control_dt));
  std::size_t waypoint = 1;
  for (int k = 0; k < steps; ++k) {
    if (maze && route.size() > 1) {
      const Eigen::Vector2d p = planar();
      // A block counts as reached within a quarter corridor of its center.
      const double reach = terrain->params().maze_cell_width / 4.0;
      while (waypoint + 1 < route.size() &&
             (terrain->BlockCenter(route[waypoint]) - p).norm() < reach) {
        ++waypoint;
      }
      const Eigen::Vector2d d = terrain->BlockCenter(route[waypoint]) - p;
      env.set_heading_target(std::atan2(d.y(), d.x()));
      obs = env.Observe();
    }
    const StepResult r = env.Step(params.ActionMean(obs));
    obs = r.observation;
    if (r.terminated) {
      trial.fell = true;
      break;
    }
  }
  trial.duration = env.world().time;
  const Eigen::Vector2d moved = planar() - p0;
  trial.forward = moved.dot(Eigen::Vector2d(std::cos(yaw0), std::sin(yaw0)));
  trial.displacement = moved.norm();
  trial.goal_distance_end = maze ? (planar() - goal).norm() : 0.0;
  return trial;
}

}  // namespace einu::rl
