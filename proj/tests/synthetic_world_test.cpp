// Copyright 2026 The groundseg Authors
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

#include "groundseg/synthetic_world.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "groundseg/encoder.hpp"

namespace groundseg {
namespace {

TEST(SyntheticWorld, ShapeAndOrder) {
  const auto frame = generate_synthetic_frame(SyntheticWorldConfig{}, 1);
  ASSERT_EQ(frame.cloud.size(), 64U * 1875U);
  ASSERT_EQ(frame.truth.size(), frame.cloud.size());
  for (std::size_t i = 0; i < frame.cloud.size(); ++i) EXPECT_EQ(frame.cloud.points[i].ring, i / 1875);
}

TEST(SyntheticWorld, SeedIsReproducible) {
  const auto a = generate_synthetic_frame(SyntheticWorldConfig{}, 7);
  const auto b = generate_synthetic_frame(SyntheticWorldConfig{}, 7);
  EXPECT_EQ(a.cloud, b.cloud);
  EXPECT_EQ(a.truth, b.truth);
  EXPECT_NE(generate_synthetic_frame(SyntheticWorldConfig{}, 8).cloud, a.cloud);
}

TEST(SyntheticWorld, GroundPointsLieNearSensorHeight) {
  SyntheticWorldConfig cfg;
  cfg.tilted_fraction = 0.0;
  const auto frame = generate_synthetic_frame(cfg, 3);
  std::size_t ground = 0;
  for (std::size_t i = 0; i < frame.cloud.size(); ++i) {
    if (frame.truth.labels[i] != Label::kGround) continue;
    ++ground;
    const auto& p = frame.cloud.points[i];
    EXPECT_NEAR(p.up, -cfg.sensor_height, 0.06) << i;
  }
  EXPECT_GT(ground, frame.cloud.size() / 3);
  EXPECT_LT(ground, frame.cloud.size());
}

TEST(SyntheticWorld, RingsDeriveFromAcquisitionOrder) {
  auto frame = generate_synthetic_frame(SyntheticWorldConfig{}, 4);
  auto stripped = frame.cloud;
  for (auto& p : stripped.points) p.ring = kUnassignedRing;
  EXPECT_EQ(derive_rings(stripped), frame.cloud);
}

TEST(SyntheticWorld, EncodesToFullyOccupiedRows) {
  const auto frame = generate_synthetic_frame(SyntheticWorldConfig{}, 5);
  const auto encoded = encode_frame(frame.cloud, EncoderConfig{});
  for (std::size_t r = 0; r < 64; ++r) {
    for (std::size_t c = 0; c < 360; ++c) EXPECT_TRUE(encoded.frame.occupied(r, c));
  }
}

TEST(RingElevations, DescendingAndInRange) {
  const auto e = ring_elevations_deg(64);
  EXPECT_DOUBLE_EQ(e.front(), 2.0);
  EXPECT_NEAR(e.back(), -24.33, 1e-9);
  for (std::size_t i = 1; i < e.size(); ++i) EXPECT_LT(e[i], e[i - 1]);
}

}  // namespace
}  // namespace groundseg
