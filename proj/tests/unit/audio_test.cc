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

#include <cmath>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "einu/audio/mfcc.h"
#include "einu/audio/wav.h"
#include "einu/common/error.h"
#include "oracle/mfcc_oracle.h"

namespace einu::audio {
namespace {

std::vector<std::uint8_t> HandBuiltWav(const std::vector<std::int16_t>& samples, int channels,
                                       int rate = 16000, int format = 1, int bits = 16) {
  std::vector<std::uint8_t> b;
  auto u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  auto u16 = [&](std::uint16_t v) {
    b.push_back(static_cast<std::uint8_t>(v));
    b.push_back(static_cast<std::uint8_t>(v >> 8));
  };
  const auto data = static_cast<std::uint32_t>(samples.size() * 2);
  b.insert(b.end(), {'R', 'I', 'F', 'F'});
  u32(36 + data);
  b.insert(b.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  u32(16);
  u16(static_cast<std::uint16_t>(format));
  u16(static_cast<std::uint16_t>(channels));
  u32(static_cast<std::uint32_t>(rate));
  u32(static_cast<std::uint32_t>(rate * channels * bits / 8));
  u16(static_cast<std::uint16_t>(channels * bits / 8));
  u16(static_cast<std::uint16_t>(bits));
  b.insert(b.end(), {'d', 'a', 't', 'a'});
  u32(data);
  for (std::int16_t s : samples) u16(static_cast<std::uint16_t>(s));
  return b;
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidParams;
}

TEST(WavTest, HandBuiltMonoFile) {
  const auto bytes = HandBuiltWav({0, 16384, -16384, 32767}, 1);
  ASSERT_EQ(bytes.size(), 44u + 8u);
  const SampleBuffer b = ReadWav(bytes);
  EXPECT_EQ(b.sample_rate, 16000);
  ASSERT_EQ(b.samples.size(), 4u);
  EXPECT_EQ(b.samples[0], 0.0);
  EXPECT_EQ(b.samples[1], 0.5);
  EXPECT_EQ(b.samples[2], -0.5);
  EXPECT_NEAR(b.samples[3], 0.99997, 1e-5);
}

TEST(WavTest, StereoWithEqualChannelsMatchesMono) {
  const std::vector<std::int16_t> mono{12, -300, 32767, -32768, 5};
  std::vector<std::int16_t> stereo;
  for (auto s : mono) stereo.insert(stereo.end(), {s, s});
  EXPECT_EQ(ReadWav(HandBuiltWav(stereo, 2)).samples, ReadWav(HandBuiltWav(mono, 1)).samples);
  const SampleBuffer mixed = ReadWav(HandBuiltWav({16384, 0}, 2));
  EXPECT_EQ(mixed.samples[0], 0.25);
}

TEST(WavTest, Errors) {
  const auto good = HandBuiltWav({1, 2, 3}, 1);
  EXPECT_EQ(CodeOf([&] { ReadWav({good.begin(), good.begin() + 20}); }),
            ErrorCode::kMalformedFile);
  EXPECT_EQ(CodeOf([&] { ReadWav({good.begin(), good.end() - 1}); }), ErrorCode::kMalformedFile);
  auto bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_EQ(CodeOf([&] { ReadWav(bad_magic); }), ErrorCode::kMalformedFile);
  EXPECT_EQ(CodeOf([&] { ReadWav(HandBuiltWav({1, 2}, 1, 16000, 3)); }),
            ErrorCode::kUnsupportedEncoding);
  EXPECT_EQ(CodeOf([&] { ReadWav(HandBuiltWav({1, 2}, 1, 16000, 1, 24)); }),
            ErrorCode::kUnsupportedEncoding);
}

TEST(WavTest, ResamplesToSixteenKilohertz) {
  const SampleBuffer b = ReadWav(HandBuiltWav({0, 8192, 16384}, 1, 8000));
  EXPECT_EQ(b.sample_rate, 16000);
  ASSERT_EQ(b.samples.size(), 5u);
  const std::vector<double> expected{0.0, 0.125, 0.25, 0.375, 0.5};
  for (int i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(b.samples[i], expected[i]);
}

TEST(WavTest, EncodeRoundTrip) {
  SampleBuffer b;
  for (int i = 0; i < 100; ++i) b.samples.push_back(std::round(1000.0 * std::sin(0.1 * i)) / 32768.0);
  EXPECT_EQ(ReadWav(EncodeWav(b)).samples, b.samples);
  EXPECT_EQ(ReadWav(EncodeWav(b, 2)).samples, b.samples);
}

TEST(FftTest, MatchesNaiveDft) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::complex<double>> x(64);
  for (auto& v : x) v = {g(rng), g(rng)};
  std::vector<std::complex<double>> y = x;
  Fft(y);
  for (int k = 0; k < 64; ++k) {
    std::complex<double> s = 0.0;
    for (int n = 0; n < 64; ++n) s += x[n] * std::polar(1.0, -2.0 * std::numbers::pi * k * n / 64);
    EXPECT_NEAR(std::abs(y[k] - s), 0.0, 1e-12);
  }
  std::vector<std::complex<double>> odd(6);
  EXPECT_THROW(Fft(odd), Error);
}

TEST(PowerSpectrumTest, ZeroFrame) {
  const std::vector<double> zero(400, 0.0);
  const std::vector<double> p = PowerSpectrum(zero);
  ASSERT_EQ(p.size(), 257u);
  for (double v : p) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(CodeOf([] { PowerSpectrum(std::vector<double>(399, 0.0)); }),
            ErrorCode::kBadFrameLength);
}

TEST(PowerSpectrumTest, SineAtBinConcentrates) {
  std::vector<double> frame(400);
  const double f = 32.0 * 16000.0 / 512.0;
  for (int n = 0; n < 400; ++n) frame[n] = 0.5 * std::sin(2.0 * std::numbers::pi * f * n / 16000.0);
  const std::vector<double> p = PowerSpectrum(frame);
  double total = 0.0;
  for (double v : p) total += v;
  EXPECT_GE((p[31] + p[32] + p[33]) / total, 0.99);
}

TEST(PowerSpectrumTest, MatchesNaiveDftAndParseval) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const MfccConfig c;
  const std::vector<double> w = HammingWindow(400);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> frame(400);
    for (double& v : frame) v = u(rng);
    const std::vector<double> fast = PowerSpectrum(frame);
    const std::vector<double> slow = oracle::NaivePowerSpectrum(frame, c);
    for (int k = 0; k < 257; ++k) {
      EXPECT_LE(std::abs(fast[k] - slow[k]), 1e-9 * std::max(slow[k], 1e-12)) << k;
    }
    double energy = 0.0;
    for (int n = 0; n < 400; ++n) {
      const double y = (frame[n] - 0.97 * (n ? frame[n - 1] : 0.0)) * w[n];
      energy += y * y;
    }
    double weighted = fast[0] + fast[256];
    for (int k = 1; k < 256; ++k) weighted += 2.0 * fast[k];
    EXPECT_NEAR(weighted, energy, 1e-9 * energy);
  }
}

TEST(MelTest, Scale) {
  EXPECT_EQ(HzToMel(0.0), 0.0);
  EXPECT_NEAR(HzToMel(1000.0), 999.99, 0.01);
  EXPECT_NEAR(MelToHz(HzToMel(3210.0)), 3210.0, 1e-9);
}

TEST(MelTest, Filterbank) {
  const Eigen::MatrixXd fb = MelFilterbank(64, 0.0, 8000.0, 257, 16000);
  ASSERT_EQ(fb.rows(), 64);
  ASSERT_EQ(fb.cols(), 257);
  EXPECT_GE(fb.minCoeff(), 0.0);
  EXPECT_LE(fb.maxCoeff(), 1.0);
  for (int m = 0; m < 64; ++m) EXPECT_GT(fb.row(m).sum(), 0.0) << m;
  const std::vector<double> centers = MelCenters(64, 0.0, 8000.0);
  for (int m = 1; m < 64; ++m) EXPECT_GT(centers[m], centers[m - 1]);
  EXPECT_EQ(CodeOf([] { MelFilterbank(39, 0.0, 8000.0, 257, 16000); }),
            ErrorCode::kTooFewFilters);
}

TEST(DctTest, Orthonormal) {
  const Eigen::MatrixXd d = DctMatrix(64, 64);
  EXPECT_TRUE((d * d.transpose()).isIdentity(1e-12));
}

SampleBuffer Noise(std::uint64_t seed, int n, double scale = 0.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  SampleBuffer b;
  b.samples.resize(n);
  for (double& v : b.samples) v = u(rng);
  return b;
}

TEST(MfccTest, OneSecondGivesNinetyEightFrames) {
  EXPECT_EQ(NumFrames(16000), 98);
  const MfccSequence m = ComputeMfcc(Noise(1, 16000));
  EXPECT_EQ(m.num_frames(), 98);
  EXPECT_EQ(m.frames.cols(), 40);
  EXPECT_TRUE(m.frames.allFinite());
  EXPECT_EQ(ComputeMfcc(Noise(1, 400)).num_frames(), 1);
  EXPECT_EQ(CodeOf([] { ComputeMfcc(Noise(1, 399)); }), ErrorCode::kTooShort);
}

TEST(MfccTest, GainOnlyMovesCoefficientZero) {
  const SampleBuffer a = Noise(2, 4000, 0.3);
  SampleBuffer b = a;
  for (double& v : b.samples) v *= 2.0;
  const MfccSequence ma = ComputeMfcc(a);
  const MfccSequence mb = ComputeMfcc(b);
  for (int t = 0; t < ma.num_frames(); ++t) {
    EXPECT_NEAR(mb.frames(t, 0) - ma.frames(t, 0), 8.0 * std::log(4.0), 1e-9);
    for (int k = 1; k < 40; ++k) EXPECT_NEAR(mb.frames(t, k), ma.frames(t, k), 1e-6);
  }
}

TEST(MfccTest, SilenceHitsFloor) {
  SampleBuffer zero;
  zero.samples.assign(2000, 0.0);
  const MfccSequence m = ComputeMfcc(zero);
  for (int t = 0; t < m.num_frames(); ++t) {
    EXPECT_NEAR(m.frames(t, 0), 8.0 * std::log(1e-10), 1e-9);
    for (int k = 1; k < 40; ++k) EXPECT_NEAR(m.frames(t, k), 0.0, 1e-9);
    EXPECT_EQ(m.frames.row(t), m.frames.row(0));
  }
}

TEST(MfccTest, HopDelayShiftsFramesByOne) {
  const SampleBuffer a = Noise(3, 8000);
  SampleBuffer delayed;
  delayed.samples.assign(160, 0.0);
  delayed.samples.insert(delayed.samples.end(), a.samples.begin(), a.samples.end() - 160);
  const MfccSequence ma = ComputeMfcc(a);
  const MfccSequence md = ComputeMfcc(delayed);
  ASSERT_EQ(ma.num_frames(), md.num_frames());
  for (int t = 1; t < md.num_frames(); ++t) {
    EXPECT_EQ(md.frames.row(t), ma.frames.row(t - 1)) << t;
  }
}

TEST(MfccTest, MatchesStraightLineOracle) {
  const MfccConfig c;
  const MfccExtractor extractor(c);
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    const SampleBuffer b = Noise(seed, 6000);
    const MfccSequence m = extractor.Compute(b);
    const auto ref = oracle::NaiveMfcc(b.samples, c);
    ASSERT_EQ(static_cast<int>(ref.size()), m.num_frames());
    for (int t = 0; t < m.num_frames(); ++t) {
      double err = 0.0, mag = 0.0;
      for (int k = 0; k < 40; ++k) {
        err = std::max(err, std::abs(m.frames(t, k) - ref[t][k]));
        mag = std::max(mag, std::abs(ref[t][k]));
      }
      ASSERT_LE(err, 1e-6 * mag) << "seed " << seed << " frame " << t;
    }
  }
}

TEST(MfccTest, JsonRoundTrip) {
  const MfccSequence m = ComputeMfcc(Noise(4, 1000));
  const nlohmann::json j = MfccToJson(m);
  EXPECT_EQ(j.at("hop"), 160);
  EXPECT_EQ(j.at("frames").size(), static_cast<std::size_t>(m.num_frames()));
  EXPECT_EQ(j.at("frames")[0].size(), 40u);
  EXPECT_EQ(MfccFromJson(j).frames, m.frames);
}

TEST(MfccTest, RejectsInvalidBuffers) {
  SampleBuffer b = Noise(5, 1000);
  b.samples[3] = std::nan("");
  EXPECT_THROW(ComputeMfcc(b), Error);
  SampleBuffer loud = Noise(5, 1000);
  loud.samples[0] = 1.5;
  EXPECT_THROW(ComputeMfcc(loud), Error);
  SampleBuffer slow = Noise(5, 1000);
  slow.sample_rate = 8000;
  EXPECT_THROW(ComputeMfcc(slow), Error);
}

}  // namespace
}  // namespace einu::audio
