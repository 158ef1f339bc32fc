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

#include "einu/audio/mfcc.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "einu/common/error.h"

namespace einu::audio {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<double> Spectrum(std::span<const double> frame, const std::vector<double>& window,
                             const MfccConfig& c) {
  if (static_cast<int>(frame.size()) != c.frame_length) {
    throw Error(ErrorCode::kBadFrameLength, "frame has " + std::to_string(frame.size()) +
                                                " samples, expected " +
                                                std::to_string(c.frame_length));
  }
  std::vector<std::complex<double>> x(c.fft_size);
  double prev = 0.0;
  for (int n = 0; n < c.frame_length; ++n) {
    x[n] = (frame[n] - c.preemphasis * prev) * window[n];
    prev = frame[n];
  }
  Fft(x);
  std::vector<double> power(c.num_bins());
  for (int k = 0; k < c.num_bins(); ++k) power[k] = std::norm(x[k]) / c.fft_size;
  return power;
}

void Validate(const MfccConfig& c) {
  if (c.sample_rate <= 0 || c.frame_length <= 0 || c.hop <= 0 ||
      !IsPowerOfTwo(static_cast<std::size_t>(c.fft_size)) || c.fft_size < c.frame_length ||
      c.num_coefficients <= 0 || c.num_coefficients > c.num_filters || !(c.log_floor > 0.0) ||
      !(c.f_hi > c.f_lo) || c.f_lo < 0.0 || c.f_hi > 0.5 * c.sample_rate) {
    throw Error(ErrorCode::kInvalidParams, "inconsistent MFCC configuration");
  }
}

}  // namespace

nlohmann::json MfccConfigToJson(const MfccConfig& c) {
  return {{"sample_rate", c.sample_rate}, {"frame_length", c.frame_length},
          {"hop", c.hop},                 {"fft_size", c.fft_size},
          {"num_filters", c.num_filters}, {"f_lo", c.f_lo},
          {"f_hi", c.f_hi},               {"num_coefficients", c.num_coefficients},
          {"preemphasis", c.preemphasis}, {"log_floor", c.log_floor}};
}

MfccConfig MfccConfigFromJson(const nlohmann::json& doc) {
  MfccConfig c;
  c.sample_rate = doc.value("sample_rate", c.sample_rate);
  c.frame_length = doc.value("frame_length", c.frame_length);
  c.hop = doc.value("hop", c.hop);
  c.fft_size = doc.value("fft_size", c.fft_size);
  c.num_filters = doc.value("num_filters", c.num_filters);
  c.f_lo = doc.value("f_lo", c.f_lo);
  c.f_hi = doc.value("f_hi", c.f_hi);
  c.num_coefficients = doc.value("num_coefficients", c.num_coefficients);
  c.preemphasis = doc.value("preemphasis", c.preemphasis);
  c.log_floor = doc.value("log_floor", c.log_floor);
  return c;
}

void Fft(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  if (!IsPowerOfTwo(n)) throw Error(ErrorCode::kInvalidParams, "FFT size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::size_t half = len / 2;
    for (std::size_t k = 0; k < half; ++k) {
      // Twiddles evaluated directly, not by recurrence, to keep rounding flat.
      const std::complex<double> w = std::polar(1.0, angle * static_cast<double>(k));
      for (std::size_t i = k; i < n; i += len) {
        const std::complex<double> u = a[i];
        const std::complex<double> v = a[i + half] * w;
        a[i] = u + v;
        a[i + half] = u - v;
      }
    }
  }
}

std::vector<double> HammingWindow(int length) {
  std::vector<double> w(length, 1.0);
  if (length == 1) return w;
  for (int n = 0; n < length; ++n) {
    w[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / (length - 1));
  }
  return w;
}

std::vector<double> PowerSpectrum(std::span<const double> frame, const MfccConfig& config) {
  return Spectrum(frame, HammingWindow(config.frame_length), config);
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

std::vector<double> MelCenters(int num_filters, double f_lo, double f_hi) {
  const double lo = HzToMel(f_lo);
  const double step = (HzToMel(f_hi) - lo) / (num_filters + 1);
  std::vector<double> centers(num_filters);
  for (int m = 0; m < num_filters; ++m) centers[m] = MelToHz(lo + (m + 1) * step);
  return centers;
}

MatrixXd MelFilterbank(int num_filters, double f_lo, double f_hi, int num_bins, int sample_rate) {
  if (num_filters < 40) {
    throw Error(ErrorCode::kTooFewFilters,
                std::to_string(num_filters) + " filters cannot support 40 coefficients");
  }
  if (num_bins < 2 || !(f_hi > f_lo)) throw Error(ErrorCode::kInvalidParams, "bad filterbank range");
  const double lo = HzToMel(f_lo);
  const double step = (HzToMel(f_hi) - lo) / (num_filters + 1);
  std::vector<double> edges(num_filters + 2);
  for (int i = 0; i < num_filters + 2; ++i) edges[i] = MelToHz(lo + i * step);
  const double bin_hz = 0.5 * sample_rate / (num_bins - 1);
  MatrixXd fb = MatrixXd::Zero(num_filters, num_bins);
  for (int m = 0; m < num_filters; ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    for (int k = 0; k < num_bins; ++k) {
      const double f = k * bin_hz;
      if (f > left && f <= center) {
        fb(m, k) = (f - left) / (center - left);
      } else if (f > center && f < right) {
        fb(m, k) = (right - f) / (right - center);
      }
    }
  }
  return fb;
}

MatrixXd DctMatrix(int num_out, int num_in) {
  MatrixXd d(num_out, num_in);
  for (int k = 0; k < num_out; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / num_in);
    for (int n = 0; n < num_in; ++n) {
      d(k, n) = scale * std::cos(std::numbers::pi * k * (2 * n + 1) / (2.0 * num_in));
    }
  }
  return d;
}

nlohmann::json MfccToJson(const MfccSequence& mfcc) {
  nlohmann::json frames = nlohmann::json::array();
  for (Eigen::Index t = 0; t < mfcc.frames.rows(); ++t) {
    std::vector<double> row(mfcc.frames.cols());
    for (Eigen::Index k = 0; k < mfcc.frames.cols(); ++k) row[k] = mfcc.frames(t, k);
    frames.push_back(row);
  }
  return {{"sample_rate", mfcc.sample_rate}, {"hop", mfcc.hop}, {"frames", frames}};
}

MfccSequence MfccFromJson(const nlohmann::json& doc) {
  MfccSequence out;
  try {
    out.sample_rate = doc.at("sample_rate").get<int>();
    out.hop = doc.at("hop").get<int>();
    const auto& frames = doc.at("frames");
    const Eigen::Index cols = frames.empty() ? 0 : static_cast<Eigen::Index>(frames[0].size());
    out.frames.resize(static_cast<Eigen::Index>(frames.size()), cols);
    for (std::size_t t = 0; t < frames.size(); ++t) {
      if (static_cast<Eigen::Index>(frames[t].size()) != cols) {
        throw Error(ErrorCode::kBadFeatureDim, "ragged MFCC frames");
      }
      for (Eigen::Index k = 0; k < cols; ++k) out.frames(t, k) = frames[t][k].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedFile, std::string("MFCC JSON: ") + e.what());
  }
  return out;
}

int NumFrames(int num_samples, const MfccConfig& c) {
  return num_samples < c.frame_length ? 0 : (num_samples - c.frame_length) / c.hop + 1;
}

MfccExtractor::MfccExtractor(MfccConfig config) : config_(std::move(config)) {
  Validate(config_);
  window_ = HammingWindow(config_.frame_length);
  filterbank_ = MelFilterbank(config_.num_filters, config_.f_lo, config_.f_hi, config_.num_bins(),
                              config_.sample_rate);
  dct_ = DctMatrix(config_.num_coefficients, config_.num_filters);
}

VectorXd MfccExtractor::Frame(std::span<const double> frame) const {
  const std::vector<double> power = Spectrum(frame, window_, config_);
  const VectorXd energies =
      filterbank_ * Eigen::Map<const VectorXd>(power.data(), static_cast<Eigen::Index>(power.size()));
  const VectorXd logs = energies.array().max(config_.log_floor).log();
  return dct_ * logs;
}

MfccSequence MfccExtractor::Compute(const SampleBuffer& buffer) const {
  ValidateBuffer(buffer);
  if (buffer.sample_rate != config_.sample_rate) {
    throw Error(ErrorCode::kInvalidParams, "buffer is " + std::to_string(buffer.sample_rate) +
                                               " Hz, extractor expects " +
                                               std::to_string(config_.sample_rate));
  }
  const int n = static_cast<int>(buffer.samples.size());
  if (n < config_.frame_length) {
    throw Error(ErrorCode::kTooShort, std::to_string(n) + " samples, need at least " +
                                          std::to_string(config_.frame_length));
  }
  MfccSequence out;
  out.sample_rate = config_.sample_rate;
  out.hop = config_.hop;
  const int frames = NumFrames(n, config_);
  out.frames.resize(frames, config_.num_coefficients);
  const std::span<const double> all(buffer.samples);
  for (int t = 0; t < frames; ++t) {
    out.frames.row(t) = Frame(all.subspan(static_cast<std::size_t>(t) * config_.hop,
                                          config_.frame_length))
                            .transpose();
  }
  return out;
}

MfccSequence ComputeMfcc(const SampleBuffer& buffer, const MfccConfig& config) {
  return MfccExtractor(config).Compute(buffer);
}

}  // namespace einu::audio
