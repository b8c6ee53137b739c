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

// Simulated 64-beam rotating LiDAR scans with exact per-point ground labels.
//
// Each scene is a flat or tilted ground plane with boxes and vertical
// cylinders standing on it, enclosed by a distant circular wall so that every
// beam returns. Points are emitted ring by ring, each ring sweeping the
// azimuth once, which is the acquisition order ring derivation expects.

#ifndef GROUNDSEG_SYNTHETIC_WORLD_HPP_
#define GROUNDSEG_SYNTHETIC_WORLD_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "groundseg/cloud_io.hpp"
#include "groundseg/labels.hpp"

namespace groundseg {

struct SyntheticWorldConfig {
  std::uint32_t num_rings = kDefaultNumRings;
  std::size_t points_per_ring = 1875;  // 120k points per frame
  double sensor_height = 1.73;
  double max_slope = 0.03;             // rise over run of tilted planes
  double tilted_fraction = 0.5;        // share of scenes with a tilted plane
  std::size_t min_obstacles = 12;
  std::size_t max_obstacles = 24;
  double min_obstacle_distance = 4.0;
  double max_obstacle_distance = 40.0;
  double wall_radius_min = 40.0;
  double wall_radius_max = 70.0;
  double range_noise = 0.01;           // meters, 1 sigma
};

/// Beam elevations in degrees, ring 0 first (highest).
std::vector<double> ring_elevations_deg(std::uint32_t num_rings);

struct SyntheticFrame {
  PointCloud cloud;   // rings assigned
  PointLabels truth;  // GROUND or NON_GROUND, never UNLABELED
};

SyntheticFrame generate_synthetic_frame(const SyntheticWorldConfig& cfg, std::uint64_t seed);

}  // namespace groundseg

#endif  // GROUNDSEG_SYNTHETIC_WORLD_HPP_
