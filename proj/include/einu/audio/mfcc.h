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

#ifndef EINU_AUDIO_MFCC_H_
#define EINU_AUDIO_MFCC_H_

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "einu/audio/wav.h"

namespace einu::audio {

struct MfccConfig {
  int sample_rate = kSampleRate;
  int frame_length = 400;  // 25 ms
  int hop = 160;           // 10 ms
  int fft_size = 512;
  int num_filters = 64;
  double f_lo = 0.0;
  double f_hi = 8000.0;
  int num_coefficients = 40;
  double preemphasis = 0.97;
  double log_floor = 1e-10;

  int num_bins() const { return fft_size / 2 + 1; }
};

nlohmann::json MfccConfigToJson(const MfccConfig& config);
MfccConfig MfccConfigFromJson(const nlohmann::json& doc);

// In-place iterative radix-2 transform, X_k = sum_n x_n exp(-2 pi i k n / N).
// Size must be a power of two.
void Fft(std::vector<std::complex<double>>& data);

// Pre-emphasis (within the frame, x[-1] = 0), Hamming window, zero pad, and
// |X_k|^2 / fft_size for k = 0..fft_size/2. Throws BadFrameLength.
std::vector<double> PowerSpectrum(std::span<const double> frame, const MfccConfig& config = {});

// Symmetric Hamming window, 0.54 - 0.46 cos(2 pi n / (N - 1)).
std::vector<double> HammingWindow(int length);

double HzToMel(double hz);
double MelToHz(double mel);

// num_filters x num_bins triangles with unit peaks, centers equally spaced
// in mel between f_lo and f_hi. Throws TooFewFilters below 40 filters.
Eigen::MatrixXd MelFilterbank(int num_filters, double f_lo, double f_hi, int num_bins,
                              int sample_rate);
// Center frequencies (Hz) of the filters above.
std::vector<double> MelCenters(int num_filters, double f_lo, double f_hi);

// Orthonormal type-II DCT rows 0..num_out-1 for inputs of length num_in.
Eigen::MatrixXd DctMatrix(int num_out, int num_in);

struct MfccSequence {
  Eigen::MatrixXd frames;  // T x num_coefficients
  int sample_rate = kSampleRate;
  int hop = 160;

  int num_frames() const { return static_cast<int>(frames.rows()); }
};

// {sample_rate, hop, frames: [[...], ...]}
nlohmann::json MfccToJson(const MfccSequence& mfcc);
MfccSequence MfccFromJson(const nlohmann::json& doc);

int NumFrames(int num_samples, const MfccConfig& config = {});

// Holds the window, filterbank and DCT so repeated calls share them.
class MfccExtractor {
 public:
  explicit MfccExtractor(MfccConfig config = {});

  const MfccConfig& config() const { return config_; }
  const Eigen::MatrixXd& filterbank() const { return filterbank_; }

  // Throws TooShort below one frame, InvalidParams on a rate mismatch or
  // invalid samples.
  MfccSequence Compute(const SampleBuffer& buffer) const;
  Eigen::VectorXd Frame(std::span<const double> frame) const;

 private:
  MfccConfig config_;
  std::vector<double> window_;
  Eigen::MatrixXd filterbank_;
  Eigen::MatrixXd dct_;
};

MfccSequence ComputeMfcc(const SampleBuffer& buffer, const MfccConfig& config = {});

}  // namespace einu::audio

#endif  // EINU_AUDIO_MFCC_H_
