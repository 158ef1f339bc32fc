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

#include <cmath>
#include <random>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "einu/common/angles.h"
#include "einu/common/error.h"

namespace einu::loc {
namespace {

using Eigen::Vector2d;

TEST(ArrayTest, CrossGeometry) {
  const MicArray a;
  EXPECT_EQ(a.Mic(0), Vector2d(0.05, 0.0));
  EXPECT_EQ(a.Mic(1), Vector2d(-0.05, 0.0));
  EXPECT_EQ(a.Mic(2), Vector2d(0.0, 0.05));
  EXPECT_EQ(a.Mic(3), Vector2d(0.0, -0.05));
  EXPECT_EQ((a.Mic(0) - a.Mic(1)).dot(a.Mic(2) - a.Mic(3)), 0.0);
  MicArray bad;
  bad.spacing = 0.0;
  EXPECT_THROW(ValidateArray(bad), Error);
}

TEST(ArrivalTest, Simulation) {
  const MicArray a;
  const ArrivalSet at_mic = SimulateArrivals(a.Mic(1), 0.25, a);
  EXPECT_EQ(at_mic.times[1], 0.25);
  const ArrivalSet center = SimulateArrivals(Vector2d::Zero(), 0.0, a);
  for (int i = 1; i < 4; ++i) EXPECT_EQ(center.times[i], center.times[0]);
  const ArrivalSet far = SimulateArrivals(Vector2d(100 * a.spacing, 0.0), 0.0, a);
  EXPECT_NEAR(far.dt_x() / a.MaxDelay(), 1.0, 1e-4);
  EXPECT_GT(far.dt_x(), 0.0);  // +x mic hears first
}

TEST(PairBearingTest, EdgeCases) {
  const double d = 0.1, v = 343.0;
  EXPECT_DOUBLE_EQ(PairBearing(0.0, d, v), kPi / 2);
  // d / v * v / d rounds just below 1, and arccos is steep there.
  EXPECT_NEAR(PairBearing(d / v, d, v), 0.0, 1e-7);
  EXPECT_EQ(PairBearing((1.0 + 1e-9) * d / v, d, v), 0.0);
  EXPECT_EQ(PairBearing(-(1.0 + 1e-9) * d / v, d, v), kPi);
}

TEST(PairBearingTest, CosineIsClampedRatio) {
  const double d = 0.1, v = 343.0;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.2 * d / v, 1.2 * d / v);
  for (int i = 0; i < 1000; ++i) {
    const double dt = u(rng);
    const double theta = PairBearing(dt, d, v);
    EXPECT_NEAR(theta, std::acos(std::clamp(dt * v / d, -1.0, 1.0)), 1e-12);
    EXPECT_NEAR(std::cos(theta), std::clamp(dt * v / d, -1.0, 1.0), 1e-12);
  }
}

TEST(AzimuthTest, AxisCases) {
  const MicArray a;
  EXPECT_EQ(AzimuthFromCross(a.MaxDelay(), 0.0, a).azimuth, 0.0);
  EXPECT_DOUBLE_EQ(AzimuthFromCross(0.0, -a.MaxDelay(), a).azimuth, 1.5 * kPi);
  EXPECT_EQ(AzimuthFromCross(0.0, 0.0, a).confidence, 0.0);
  EXPECT_NEAR(AzimuthFromCross(a.MaxDelay(), 0.0, a).confidence, 1.0, 1e-12);
}

TEST(AzimuthTest, FarFieldSweep) {
  const MicArray a;
  for (int k = 0; k < 36; ++k) {
    const double az = k * kTwoPi / 36;
    const Vector2d s = 100 * a.spacing * Vector2d(std::cos(az), std::sin(az));
    const Bearing b = AzimuthFromArrivals(SimulateArrivals(s, 0.0, a), a);
    EXPECT_LT(std::abs(WrapPi(b.azimuth - az)), 0.5 * kPi / 180) << k;
    EXPECT_GE(b.azimuth, 0.0);
    EXPECT_LT(b.azimuth, kTwoPi);
  }
}

TEST(AzimuthTest, MirrorSymmetry) {
  const MicArray a;
  for (double az : {0.3, 1.1, 2.5, 4.0}) {
    const Vector2d s(0.6 * std::cos(az), 0.6 * std::sin(az));
    const ArrivalSet p = SimulateArrivals(s, 0.0, a);
    const ArrivalSet m = SimulateArrivals(Vector2d(s.x(), -s.y()), 0.0, a);
    EXPECT_EQ(m.dt_x(), p.dt_x());
    EXPECT_NEAR(m.dt_y(), -p.dt_y(), 1e-18);
    EXPECT_NEAR(AzimuthFromArrivals(m, a).azimuth, kTwoPi - AzimuthFromArrivals(p, a).azimuth,
                1e-12);
  }
}

TEST(AzimuthTest, RotatingSourceAndArrayKeepsDelays) {
  const MicArray a;
  const Vector2d s(0.7, 0.3);
  const ArrivalSet orig = SimulateArrivals(s, 0.0, a);
  for (double phi : {0.4, 1.7, -2.2}) {
    const Eigen::Rotation2Dd rot(phi);
    ArrivalSet turned;
    for (int i = 0; i < kNumMics; ++i) {
      turned.times[i] = (rot * s - rot * a.Mic(i)).norm() / a.speed_of_sound;
    }
    EXPECT_NEAR(turned.dt_x(), orig.dt_x(), 1e-15);
    EXPECT_NEAR(turned.dt_y(), orig.dt_y(), 1e-15);
  }
}

TEST(MultilaterationTest, RecoversKnownSource) {
  const MicArray a;
  const Vector2d p(0.35, 0.20);
  const MultilaterationResult r = Multilaterate(SimulateArrivals(p, 0.0, a), a);
  EXPECT_TRUE(r.converged);
  EXPECT_LT((r.position - p).norm(), 1e-6);
}

TEST(MultilaterationTest, GridConvergesQuickly) {
  const MicArray a;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const Vector2d p = a.spacing * Vector2d(2.0 + 2.0 * i, 2.0 + 2.0 * j);
      const MultilaterationResult r = Multilaterate(SimulateArrivals(p, 1.0, a), a);
      EXPECT_TRUE(r.converged);
      EXPECT_LE(r.iterations, 20);
      EXPECT_LT((r.position - p).norm(), 1e-6) << i << "," << j;
    }
  }
}

TEST(MultilaterationTest, RoundTripOverRanges) {
  const MicArray a;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> range(2.0 * a.spacing, 20.0 * a.spacing);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int k = 0; k < 200; ++k) {
    const double az = angle(rng);
    const Vector2d p = range(rng) * Vector2d(std::cos(az), std::sin(az));
    const MultilaterationResult r = Multilaterate(SimulateArrivals(p, 0.0, a), a);
    EXPECT_LT((r.position - p).norm(), 1e-6) << p.transpose();
  }
}

TEST(MultilaterationTest, DegenerateWhenAllEqual) {
  const MicArray a;
  ArrivalSet equal;
  equal.times = {0.1, 0.1, 0.1, 0.1};
  try {
    Multilaterate(equal, a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerate);
  }
}

TEST(MultilaterationTest, IterationCapReportsNonConvergence) {
  const MicArray a;
  MultilaterationOptions opt;
  opt.max_iterations = 1;
  const MultilaterationResult r =
      Multilaterate(SimulateArrivals(Vector2d(0.9, -0.4), 0.0, a), a, std::nullopt, opt);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_TRUE(r.position.allFinite());
}

TEST(OnsetTest, ConstructedImpulses) {
  std::array<std::vector<double>, kNumMics> s;
  const std::array<int, 4> at{100, 104, 102, 102};
  for (int i = 0; i < 4; ++i) {
    s[i].assign(300, 0.0);
    s[i][at[i]] = 1.0;
  }
  const ArrivalSet a = DetectOnsets(s, 48000.0, 0.5);
  EXPECT_NEAR(a.dt_x(), 4.0 / 48000.0, 1e-15);
  EXPECT_EQ(a.dt_y(), 0.0);
}

TEST(OnsetTest, NoSignal) {
  std::array<std::vector<double>, kNumMics> s;
  for (auto& v : s) v.assign(100, 0.0);
  EXPECT_THROW(DetectOnsets(s, 48000.0, 0.1), Error);
  for (auto& v : s) v[50] = 0.3;
  EXPECT_THROW(DetectOnsets(s, 48000.0, 0.31), Error);
  EXPECT_NO_THROW(DetectOnsets(s, 48000.0, 0.3));
}

TEST(OnsetTest, QuantizedSweepStaysWithinFiveDegrees) {
  const MicArray a;
  const double fs = 48000.0;
  const std::vector<double> click(200, 0.8);
  for (int k = 0; k < 36; ++k) {
    const double az = k * kTwoPi / 36;
    const Vector2d s = 100 * a.spacing * Vector2d(std::cos(az), std::sin(az));
    const auto streams = SynthesizeStreams(s, 0.001, a, click, fs, fs, 3000);
    const ArrivalSet q = DetectOnsets(streams, fs, 0.5);
    const ArrivalSet exact = SimulateArrivals(s, 0.001, a);
    EXPECT_LE(std::abs(q.dt_x() - exact.dt_x()), 2.0 / fs);
    EXPECT_LT(std::abs(WrapPi(AzimuthFromArrivals(q, a).azimuth - az)), 5.0 * kPi / 180) << k;
  }
}

}  // namespace
}  // namespace einu::loc
