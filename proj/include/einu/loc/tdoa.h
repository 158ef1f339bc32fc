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

#ifndef EINU_LOC_TDOA_H_
#define EINU_LOC_TDOA_H_

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

namespace einu::loc {

inline constexpr int kNumMics = 4;

// Cross array in the robot frame: mic 0 at (+d/2, 0), 1 at (-d/2, 0),
// 2 at (0, +d/2), 3 at (0, -d/2).
struct MicArray {
  double spacing = 0.1;           // d, m
  double speed_of_sound = 343.0;  // v, m/s

  Eigen::Vector2d Mic(int i) const;
  // Largest physically possible |dt| for one pair.
  double MaxDelay() const { return spacing / speed_of_sound; }
};

void ValidateArray(const MicArray& array);
nlohmann::json MicArrayToJson(const MicArray& array);
MicArray MicArrayFromJson(const nlohmann::json& doc);

struct ArrivalSet {
  std::array<double, kNumMics> times{};  // s

  // Positive when the +axis mic hears first.
  double dt_x() const { return times[1] - times[0]; }
  double dt_y() const { return times[3] - times[2]; }
};

struct Bearing {
  double azimuth = 0.0;     // [0, 2 pi)
  double confidence = 0.0;  // 0 flags the degenerate symmetric case
};

// Exact continuous-time arrivals t_i = emission + |source - mic_i| / v.
ArrivalSet SimulateArrivals(const Eigen::Vector2d& source, double emission_time,
                            const MicArray& array);

// theta = arccos(clamp(dt v / d, -1, 1)), in [0, pi].
double PairBearing(double dt, double spacing, double speed_of_sound);

// Far-field direction cosines from both pairs; azimuth = atan2(u_y, u_x).
Bearing AzimuthFromCross(double dt_x, double dt_y, const MicArray& array);
inline Bearing AzimuthFromArrivals(const ArrivalSet& a, const MicArray& array) {
  return AzimuthFromCross(a.dt_x(), a.dt_y(), array);
}

struct MultilaterationResult {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  int iterations = 0;
  bool converged = false;
  double residual_norm = 0.0;  // m
};

struct MultilaterationOptions {
  double initial_range_factor = 5.0;  // start at this many d along the bearing
  double step_tolerance = 1e-9;       // m
  int max_iterations = 50;
};

// Gauss-Newton on range-difference residuals against mic 0. Throws
// Degenerate when every delay is ~0. Without convergence the best iterate is
// returned with converged = false.
MultilaterationResult Multilaterate(const ArrivalSet& arrivals, const MicArray& array,
                                    std::optional<Bearing> init = std::nullopt,
                                    const MultilaterationOptions& options = {});

// First sample with |s| >= threshold on every stream, in seconds. Throws
// NoSignal if some stream never crosses, InvalidParams on unequal lengths.
ArrivalSet DetectOnsets(const std::array<std::vector<double>, kNumMics>& streams,
                        double sample_rate, double threshold);

// Per-mic recordings of a waveform (sampled at waveform_rate) emitted from
// source at emission_time, at the output rate. Before its arrival a mic sees
// silence; the waveform is linearly interpolated afterwards. Optional white
// noise with the given standard deviation.
std::array<std::vector<double>, kNumMics> SynthesizeStreams(
    const Eigen::Vector2d& source, double emission_time, const MicArray& array,
    const std::vector<double>& waveform, double waveform_rate, double sample_rate,
    int num_samples, double noise_stddev = 0.0, unsigned long long seed = 0);

}  // namespace einu::loc

#endif  // EINU_LOC_TDOA_H_
