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

#include "einu/loc/tdoa.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "einu/common/angles.h"
#include "einu/common/error.h"

namespace einu::loc {

using Eigen::Vector2d;

Vector2d MicArray::Mic(int i) const {
  const double h = 0.5 * spacing;
  switch (i) {
    case 0: return {h, 0.0};
    case 1: return {-h, 0.0};
    case 2: return {0.0, h};
    case 3: return {0.0, -h};
    default: throw Error(ErrorCode::kInvalidParams, "mic index " + std::to_string(i));
  }
}

void ValidateArray(const MicArray& array) {
  if (!(array.spacing > 0.0) || !(array.speed_of_sound > 0.0) || !std::isfinite(array.spacing) ||
      !std::isfinite(array.speed_of_sound)) {
    throw Error(ErrorCode::kInvalidParams, "mic spacing and speed of sound must be positive");
  }
}

nlohmann::json MicArrayToJson(const MicArray& a) {
  return {{"spacing", a.spacing}, {"speed_of_sound", a.speed_of_sound}};
}

MicArray MicArrayFromJson(const nlohmann::json& doc) {
  MicArray a;
  a.spacing = doc.value("spacing", a.spacing);
  a.speed_of_sound = doc.value("speed_of_sound", a.speed_of_sound);
  ValidateArray(a);
  return a;
}

ArrivalSet SimulateArrivals(const Vector2d& source, double emission_time, const MicArray& array) {
  ValidateArray(array);
  if (!source.allFinite()) throw Error(ErrorCode::kInvalidParams, "source position not finite");
  ArrivalSet out;
  for (int i = 0; i < kNumMics; ++i) {
    out.times[i] = emission_time + (source - array.Mic(i)).norm() / array.speed_of_sound;
  }
  return out;
}

double PairBearing(double dt, double spacing, double speed_of_sound) {
  return std::acos(std::clamp(dt * speed_of_sound / spacing, -1.0, 1.0));
}

Bearing AzimuthFromCross(double dt_x, double dt_y, const MicArray& array) {
  const double ux = std::clamp(dt_x * array.speed_of_sound / array.spacing, -1.0, 1.0);
  const double uy = std::clamp(dt_y * array.speed_of_sound / array.spacing, -1.0, 1.0);
  const double m = ux * ux + uy * uy;
  Bearing b;
  b.azimuth = WrapTwoPi(std::atan2(uy, ux));
  b.confidence = m < 1e-6 ? 0.0 : std::min(1.0, m);
  return b;
}

MultilaterationResult Multilaterate(const ArrivalSet& arrivals, const MicArray& array,
                                    std::optional<Bearing> init,
                                    const MultilaterationOptions& options) {
  ValidateArray(array);
  const double v = array.speed_of_sound;
  double spread = 0.0;
  for (int i = 1; i < kNumMics; ++i) {
    spread = std::max(spread, std::abs(arrivals.times[i] - arrivals.times[0]));
  }
  if (spread * v < 1e-9 * array.spacing) {
    throw Error(ErrorCode::kDegenerate, "all arrival delays are zero; position unobservable");
  }
  const Bearing start = init ? *init : AzimuthFromArrivals(arrivals, array);
  const double r0 = options.initial_range_factor * array.spacing;
  Vector2d p(r0 * std::cos(start.azimuth), r0 * std::sin(start.azimuth));

  std::array<Vector2d, kNumMics> mics;
  for (int i = 0; i < kNumMics; ++i) mics[i] = array.Mic(i);
  auto residuals = [&](const Vector2d& q, Eigen::Matrix<double, kNumMics - 1, 2>* jac) {
    Eigen::Matrix<double, kNumMics - 1, 1> r;
    const Vector2d d0 = q - mics[0];
    const double n0 = std::max(d0.norm(), 1e-12);
    for (int i = 1; i < kNumMics; ++i) {
      const Vector2d di = q - mics[i];
      const double ni = std::max(di.norm(), 1e-12);
      r[i - 1] = (ni - n0) - v * (arrivals.times[i] - arrivals.times[0]);
      if (jac) jac->row(i - 1) = (di / ni - d0 / n0).transpose();
    }
    return r;
  };

  MultilaterationResult out;
  double cost = residuals(p, nullptr).squaredNorm();
  for (int it = 1; it <= options.max_iterations; ++it) {
    Eigen::Matrix<double, kNumMics - 1, 2> jac;
    const auto r = residuals(p, &jac);
    const Vector2d step = jac.colPivHouseholderQr().solve(-r);
    if (!step.allFinite()) break;
    // Halve until the cost stops increasing; full steps near the solution.
    double scale = 1.0;
    Vector2d next = p + step;
    double next_cost = residuals(next, nullptr).squaredNorm();
    while (next_cost > cost && scale > 1e-4) {
      scale *= 0.5;
      next = p + scale * step;
      next_cost = residuals(next, nullptr).squaredNorm();
    }
    p = next;
    cost = next_cost;
    out.iterations = it;
    if ((scale * step).norm() < options.step_tolerance) {
      out.converged = true;
      break;
    }
  }
  out.position = p;
  out.residual_norm = std::sqrt(cost);
  return out;
}

ArrivalSet DetectOnsets(const std::array<std::vector<double>, kNumMics>& streams,
                        double sample_rate, double threshold) {
  if (!(sample_rate > 0.0)) throw Error(ErrorCode::kInvalidParams, "sample rate must be positive");
  for (int i = 1; i < kNumMics; ++i) {
    if (streams[i].size() != streams[0].size()) {
      throw Error(ErrorCode::kInvalidParams, "mic streams differ in length");
    }
  }
  ArrivalSet out;
  for (int i = 0; i < kNumMics; ++i) {
    const auto& s = streams[i];
    const auto it =
        std::find_if(s.begin(), s.end(), [&](double x) { return std::abs(x) >= threshold; });
    if (it == s.end()) {
      throw Error(ErrorCode::kNoSignal, "mic " + std::to_string(i) + " never crosses threshold");
    }
    out.times[i] = static_cast<double>(it - s.begin()) / sample_rate;
  }
  return out;
}

std::array<std::vector<double>, kNumMics> SynthesizeStreams(
    const Vector2d& source, double emission_time, const MicArray& array,
    const std::vector<double>& waveform, double waveform_rate, double sample_rate,
    int num_samples, double noise_stddev, unsigned long long seed) {
  if (waveform.empty() || !(waveform_rate > 0.0) || !(sample_rate > 0.0) || num_samples <= 0) {
    throw Error(ErrorCode::kInvalidParams, "bad stream synthesis parameters");
  }
  const ArrivalSet arrivals = SimulateArrivals(source, emission_time, array);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, noise_stddev > 0.0 ? noise_stddev : 1.0);
  std::array<std::vector<double>, kNumMics> out;
  const auto last = static_cast<double>(waveform.size() - 1);
  for (int i = 0; i < kNumMics; ++i) {
    out[i].assign(num_samples, 0.0);
    for (int n = 0; n < num_samples; ++n) {
      const double tau = (n / sample_rate - arrivals.times[i]) * waveform_rate;
      double s = 0.0;
      if (tau >= 0.0 && tau <= last) {
        const auto k = static_cast<std::size_t>(tau);
        const double frac = tau - static_cast<double>(k);
        s = k + 1 < waveform.size() ? waveform[k] + frac * (waveform[k + 1] - waveform[k])
                                    : waveform[k];
      }
      if (noise_stddev > 0.0) s += noise(rng);
      out[i][n] = s;
    }
  }
  return out;
}

}  // namespace einu::loc
