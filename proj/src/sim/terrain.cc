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

#include "einu/sim/terrain.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "einu/common/error.h"

namespace einu::sim {

std::string_view TerrainKindName(TerrainKind kind) {
  switch (kind) {
    case TerrainKind::kFlat: return "flat";
    case TerrainKind::kUneven: return "uneven";
    case TerrainKind::kHilly: return "hilly";
    case TerrainKind::kMaze: return "maze";
  }
  return "flat";
}

TerrainKind ParseTerrainKind(std::string_view name) {
  if (name == "flat") return TerrainKind::kFlat;
  if (name == "uneven") return TerrainKind::kUneven;
  if (name == "hilly") return TerrainKind::kHilly;
  if (name == "maze") return TerrainKind::kMaze;
  throw Error(ErrorCode::kInvalidParams,
              "unknown terrain kind '" + std::string(name) + "'");
}

TerrainParams DefaultTerrainParams(TerrainKind kind) {
  TerrainParams p;
  switch (kind) {
    case TerrainKind::kFlat: p.amplitude = 0.0; break;
    case TerrainKind::kUneven:
      p.amplitude = 0.02;
      p.cell_size = 0.3;
      break;
    case TerrainKind::kHilly: p.amplitude = 0.15; break;
    case TerrainKind::kMaze: break;
  }
  return p;
}

namespace {

void InitSmoothGrid(double extent, double cell, int& rows, int& cols,
                    double& ox, double& oy) {
  const int n = static_cast<int>(std::lround(extent / cell)) + 1;
  rows = cols = n;
  ox = oy = -0.5 * cell * (n - 1);
}

// Recursive backtracker over rows x cols cells rendered into a
// (2 rows + 1) x (2 cols + 1) block grid; true marks floor.
std::vector<bool> CarveMaze(int rows, int cols, std::mt19937_64& rng) {
  const int brows = 2 * rows + 1;
  const int bcols = 2 * cols + 1;
  std::vector<bool> floor(brows * bcols, false);
  std::vector<bool> visited(rows * cols, false);
  std::vector<std::pair<int, int>> stack;
  stack.emplace_back(0, 0);
  visited[0] = true;
  floor[1 * bcols + 1] = true;
  constexpr int kDr[4] = {-1, 1, 0, 0};
  constexpr int kDc[4] = {0, 0, -1, 1};
  while (!stack.empty()) {
    auto [r, c] = stack.back();
    int options[4];
    int n = 0;
    for (int k = 0; k < 4; ++k) {
      const int nr = r + kDr[k];
      const int nc = c + kDc[k];
      if (nr < 0 || nc < 0 || nr >= rows || nc >= cols) continue;
      if (!visited[nr * cols + nc]) options[n++] = k;
    }
    if (n == 0) {
      stack.pop_back();
      continue;
    }
    const int k = options[std::uniform_int_distribution<int>(0, n - 1)(rng)];
    const int nr = r + kDr[k];
    const int nc = c + kDc[k];
    visited[nr * cols + nc] = true;
    floor[(2 * r + 1 + kDr[k]) * bcols + (2 * c + 1 + kDc[k])] = true;
    floor[(2 * nr + 1) * bcols + (2 * nc + 1)] = true;
    stack.emplace_back(nr, nc);
  }
  return floor;
}

}  // namespace

Terrain GenerateTerrain(TerrainKind kind, std::uint64_t seed,
                        const TerrainParams& params) {
  if (!(params.cell_size > 0.0) || !std::isfinite(params.cell_size)) {
    throw Error(ErrorCode::kInvalidParams, "cell_size must be positive");
  }
  if (params.amplitude < 0.0 || !std::isfinite(params.amplitude)) {
    throw Error(ErrorCode::kInvalidParams, "amplitude must be >= 0");
  }
  Terrain t;
  t.kind_ = kind;
  t.seed_ = seed;
  t.params_ = params;
  t.cell_size_ = params.cell_size;
  std::mt19937_64 rng(seed);

  switch (kind) {
    case TerrainKind::kFlat:
    case TerrainKind::kUneven:
    case TerrainKind::kHilly: {
      if (!(params.extent > params.cell_size)) {
        throw Error(ErrorCode::kInvalidParams, "extent must exceed cell_size");
      }
      InitSmoothGrid(params.extent, params.cell_size, t.rows_, t.cols_,
                     t.origin_x_, t.origin_y_);
      t.heights_.assign(static_cast<size_t>(t.rows_) * t.cols_, 0.0);
      if (kind == TerrainKind::kUneven) {
        std::uniform_real_distribution<double> noise(-params.amplitude,
                                                     params.amplitude);
        for (double& h : t.heights_) h = noise(rng);
      } else if (kind == TerrainKind::kHilly) {
        if (params.hill_count < 0 || !(params.hill_sigma > 0.0)) {
          throw Error(ErrorCode::kInvalidParams, "bad hill parameters");
        }
        const double half = 0.5 * params.extent;
        std::uniform_real_distribution<double> center(-half, half);
        std::uniform_real_distribution<double> height(0.3, 1.0);
        std::uniform_real_distribution<double> spread(0.6, 1.4);
        struct Bump { double x, y, h, s; };
        std::vector<Bump> bumps;
        for (int i = 0; i < params.hill_count; ++i) {
          bumps.push_back({center(rng), center(rng),
                           params.amplitude * height(rng),
                           params.hill_sigma * spread(rng)});
        }
        // Coarse value noise (bilinear over a 2 m lattice) breaks up the
        // symmetry of the bumps.
        const int lattice = static_cast<int>(params.extent / 2.0) + 2;
        std::uniform_real_distribution<double> value(0.0, 0.15 * params.amplitude);
        std::vector<double> lat(lattice * lattice);
        for (double& v : lat) v = value(rng);
        for (int r = 0; r < t.rows_; ++r) {
          const double y = t.origin_y_ + r * t.cell_size_;
          for (int c = 0; c < t.cols_; ++c) {
            const double x = t.origin_x_ + c * t.cell_size_;
            double h = 0.0;
            for (const Bump& b : bumps) {
              const double d2 = (x - b.x) * (x - b.x) + (y - b.y) * (y - b.y);
              h += b.h * std::exp(-0.5 * d2 / (b.s * b.s));
            }
            const double lx = (x + half) / 2.0;
            const double ly = (y + half) / 2.0;
            const int ix = std::clamp(static_cast<int>(lx), 0, lattice - 2);
            const int iy = std::clamp(static_cast<int>(ly), 0, lattice - 2);
            const double fx = std::clamp(lx - ix, 0.0, 1.0);
            const double fy = std::clamp(ly - iy, 0.0, 1.0);
            const double v00 = lat[iy * lattice + ix];
            const double v01 = lat[iy * lattice + ix + 1];
            const double v10 = lat[(iy + 1) * lattice + ix];
            const double v11 = lat[(iy + 1) * lattice + ix + 1];
            h += (1 - fy) * ((1 - fx) * v00 + fx * v01) +
                 fy * ((1 - fx) * v10 + fx * v11);
            t.heights_[r * t.cols_ + c] = std::min(h, params.amplitude);
          }
        }
      }
      break;
    }
    case TerrainKind::kMaze: {
      if (params.maze_rows < 3 || params.maze_cols < 3) {
        throw Error(ErrorCode::kInvalidParams, "maze must be at least 3x3 cells");
      }
      if (!(params.maze_cell_width > 0.0) || params.wall_height < 0.0) {
        throw Error(ErrorCode::kInvalidParams, "bad maze cell width / wall height");
      }
      const std::vector<bool> floor =
          CarveMaze(params.maze_rows, params.maze_cols, rng);
      t.rows_ = 2 * params.maze_rows + 1;
      t.cols_ = 2 * params.maze_cols + 1;
      t.cell_size_ = params.maze_cell_width;
      // Start block (1, 1) is centered on the world origin.
      t.origin_x_ = -1.5 * t.cell_size_;
      t.origin_y_ = -1.5 * t.cell_size_;
      t.heights_.resize(floor.size());
      for (size_t i = 0; i < floor.size(); ++i) {
        t.heights_[i] = floor[i] ? 0.0 : params.wall_height;
      }
      t.maze_start_ = {1, 1};
      t.maze_goal_ = {t.rows_ - 2, t.cols_ - 2};
      break;
    }
  }
  return t;
}

Eigen::Vector2d Terrain::BlockCenter(GridIndex index) const {
  return {origin_x_ + (index.col + 0.5) * cell_size_,
          origin_y_ + (index.row + 0.5) * cell_size_};
}

GridIndex Terrain::BlockOf(double x, double y) const {
  const int c = static_cast<int>(std::floor((x - origin_x_) / cell_size_));
  const int r = static_cast<int>(std::floor((y - origin_y_) / cell_size_));
  return {std::clamp(r, 0, rows_ - 1), std::clamp(c, 0, cols_ - 1)};
}

double Terrain::HeightAt(double x, double y) const {
  if (heights_.empty()) return 0.0;
  if (!std::isfinite(x) || !std::isfinite(y)) return 0.0;
  if (blocky()) {
    const GridIndex b = BlockOf(x, y);
    return At(b.row, b.col);
  }
  const double gx = std::clamp((x - origin_x_) / cell_size_, 0.0, cols_ - 1.0);
  const double gy = std::clamp((y - origin_y_) / cell_size_, 0.0, rows_ - 1.0);
  const int c = std::min(static_cast<int>(gx), cols_ - 2);
  const int r = std::min(static_cast<int>(gy), rows_ - 2);
  const double fx = gx - c;
  const double fy = gy - r;
  return (1 - fy) * ((1 - fx) * At(r, c) + fx * At(r, c + 1)) +
         fy * ((1 - fx) * At(r + 1, c) + fx * At(r + 1, c + 1));
}

TerrainContact Terrain::Contact(const Eigen::Vector3d& p) const {
  TerrainContact out;
  if (!p.allFinite()) return out;
  if (heights_.empty()) {
    out.depth = -p.z();
    return out;
  }
  if (!blocky()) {
    const double h = HeightAt(p.x(), p.y());
    const double gx = std::clamp((p.x() - origin_x_) / cell_size_, 0.0, cols_ - 1.0);
    const double gy = std::clamp((p.y() - origin_y_) / cell_size_, 0.0, rows_ - 1.0);
    const int c = std::min(static_cast<int>(gx), cols_ - 2);
    const int r = std::min(static_cast<int>(gy), rows_ - 2);
    const double fx = gx - c;
    const double fy = gy - r;
    const double dhdx = ((1 - fy) * (At(r, c + 1) - At(r, c)) +
                         fy * (At(r + 1, c + 1) - At(r + 1, c))) / cell_size_;
    const double dhdy = ((1 - fx) * (At(r + 1, c) - At(r, c)) +
                         fx * (At(r + 1, c + 1) - At(r, c + 1))) / cell_size_;
    out.normal = Eigen::Vector3d(-dhdx, -dhdy, 1.0).normalized();
    out.depth = (h - p.z()) * out.normal.z();
    return out;
  }
  const GridIndex b = BlockOf(p.x(), p.y());
  const double h = At(b.row, b.col);
  out.depth = h - p.z();
  if (out.depth <= 0.0) return out;
  // Inside a column: push out through the nearest face that borders free
  // space at this height.
  const double x0 = origin_x_ + b.col * cell_size_;
  const double y0 = origin_y_ + b.row * cell_size_;
  struct Face { int dr, dc; double dist; Eigen::Vector3d n; };
  const Face faces[4] = {
      {0, -1, p.x() - x0, -Eigen::Vector3d::UnitX()},
      {0, 1, x0 + cell_size_ - p.x(), Eigen::Vector3d::UnitX()},
      {-1, 0, p.y() - y0, -Eigen::Vector3d::UnitY()},
      {1, 0, y0 + cell_size_ - p.y(), Eigen::Vector3d::UnitY()},
  };
  for (const Face& f : faces) {
    const int nr = b.row + f.dr;
    const int nc = b.col + f.dc;
    if (nr < 0 || nc < 0 || nr >= rows_ || nc >= cols_) continue;
    if (At(nr, nc) > p.z()) continue;
    const double dist = std::max(f.dist, 0.0);
    if (dist < out.depth) {
      out.depth = dist;
      out.normal = f.n;
    }
  }
  return out;
}

nlohmann::json Terrain::ToJson() const {
  nlohmann::json doc;
  doc["kind"] = TerrainKindName(kind_);
  doc["seed"] = seed_;
  doc["cell_size"] = cell_size_;
  doc["rows"] = rows_;
  doc["cols"] = cols_;
  doc["origin"] = {origin_x_, origin_y_};
  doc["heights"] = heights_;
  if (blocky()) {
    doc["maze_start"] = {maze_start_.row, maze_start_.col};
    doc["maze_goal"] = {maze_goal_.row, maze_goal_.col};
  }
  return doc;
}

Terrain Terrain::FromJson(const nlohmann::json& doc) {
  Terrain t;
  try {
    t.kind_ = ParseTerrainKind(doc.at("kind").get<std::string>());
    t.seed_ = doc.at("seed").get<std::uint64_t>();
    t.cell_size_ = doc.at("cell_size").get<double>();
    t.heights_ = doc.at("heights").get<std::vector<double>>();
    if (doc.contains("rows")) {
      t.rows_ = doc.at("rows").get<int>();
      t.cols_ = doc.at("cols").get<int>();
    } else {
      t.rows_ = t.cols_ = static_cast<int>(std::lround(std::sqrt(t.heights_.size())));
    }
    if (doc.contains("origin")) {
      t.origin_x_ = doc.at("origin").at(0).get<double>();
      t.origin_y_ = doc.at("origin").at(1).get<double>();
    } else {
      t.origin_x_ = -0.5 * t.cell_size_ * (t.cols_ - (t.blocky() ? 0 : 1));
      t.origin_y_ = -0.5 * t.cell_size_ * (t.rows_ - (t.blocky() ? 0 : 1));
    }
    if (t.blocky()) {
      t.maze_start_ = {doc.at("maze_start").at(0).get<int>(),
                       doc.at("maze_start").at(1).get<int>()};
      t.maze_goal_ = {doc.at("maze_goal").at(0).get<int>(),
                      doc.at("maze_goal").at(1).get<int>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedFile, std::string("terrain document: ") + e.what());
  }
  if (t.rows_ < 2 || t.cols_ < 2 ||
      static_cast<size_t>(t.rows_) * t.cols_ != t.heights_.size() ||
      !(t.cell_size_ > 0.0)) {
    throw Error(ErrorCode::kMalformedFile, "terrain grid dimensions inconsistent");
  }
  t.params_.cell_size = t.cell_size_;
  return t;
}

}  // namespace einu::sim
