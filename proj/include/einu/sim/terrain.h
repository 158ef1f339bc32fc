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

#ifndef EINU_SIM_TERRAIN_H_
#define EINU_SIM_TERRAIN_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

namespace einu::sim {

enum class TerrainKind { kFlat, kUneven, kHilly, kMaze };

std::string_view TerrainKindName(TerrainKind kind);
TerrainKind ParseTerrainKind(std::string_view name);

struct TerrainParams {
  double extent = 20.0;     // side of the square grid (m); unused for mazes
  double cell_size = 0.1;   // m
  double amplitude = 0.02;  // uneven: max |h|; hilly: max bump height
  int hill_count = 14;
  double hill_sigma = 1.5;  // m
  int maze_rows = 9;
  int maze_cols = 9;
  double maze_cell_width = 1.2;  // m, corridor width
  double wall_height = 0.5;      // m
};

struct GridIndex {
  int row = 0;
  int col = 0;
  bool operator==(const GridIndex&) const = default;
};

// Contact query result; depth > 0 means the point is inside the terrain.
struct TerrainContact {
  double depth = 0.0;
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
};

// Row-major heightfield. Smooth kinds interpolate bilinearly between vertex
// samples; mazes are column blocks (each cell is a box of its height).
class Terrain {
 public:
  Terrain() = default;

  TerrainKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double cell_size() const { return cell_size_; }
  double origin_x() const { return origin_x_; }
  double origin_y() const { return origin_y_; }
  const std::vector<double>& heights() const { return heights_; }
  const TerrainParams& params() const { return params_; }
  bool blocky() const { return kind_ == TerrainKind::kMaze; }

  double At(int row, int col) const { return heights_[row * cols_ + col]; }

  double HeightAt(double x, double y) const;
  TerrainContact Contact(const Eigen::Vector3d& point) const;

  // Maze metadata: block indices and world centers of start and goal cells.
  GridIndex maze_start() const { return maze_start_; }
  GridIndex maze_goal() const { return maze_goal_; }
  Eigen::Vector2d BlockCenter(GridIndex index) const;
  GridIndex BlockOf(double x, double y) const;

  nlohmann::json ToJson() const;
  static Terrain FromJson(const nlohmann::json& doc);

  friend Terrain GenerateTerrain(TerrainKind, std::uint64_t, const TerrainParams&);

 private:
  TerrainKind kind_ = TerrainKind::kFlat;
  std::uint64_t seed_ = 0;
  TerrainParams params_;
  int rows_ = 0;
  int cols_ = 0;
  double cell_size_ = 0.1;
  double origin_x_ = 0.0;
  double origin_y_ = 0.0;
  std::vector<double> heights_;
  GridIndex maze_start_;
  GridIndex maze_goal_;
};

// Shipped per-kind defaults (uneven: 2 cm noise; hilly: 15 cm bumps).
TerrainParams DefaultTerrainParams(TerrainKind kind);

// Deterministic in (kind, seed, params). Throws InvalidParams.
Terrain GenerateTerrain(TerrainKind kind, std::uint64_t seed,
                        const TerrainParams& params = {});

}  // namespace einu::sim

#endif  // EINU_SIM_TERRAIN_H_
