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

// Seed-flood ground annotation.
//
// A human marks a few seed cells on the ground. From each seed the label
// spreads along the seed's ring, in both directions around the circle, and
// stops in front of the first breakpoint: a cell whose height differs from
// its predecessor by more than t1, or from the seed by more than t2. Empty
// cells stop the walk too.

#ifndef GROUNDSEG_FLOOD_HPP_
#define GROUNDSEG_FLOOD_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "groundseg/encoder.hpp"
#include "groundseg/labels.hpp"

namespace groundseg {

struct FloodConfig {
  double t1 = 0.03;  // step threshold, meters
  double t2 = 0.07;  // seed threshold, meters

  /// Throws kConfig unless 0 < t1 <= t2.
  void validate() const;
};

struct SeedPoint {
  std::size_t ring = 0;
  std::size_t column = 0;
  friend bool operator==(const SeedPoint&, const SeedPoint&) = default;
};

/// Flooded columns of one circular ring, ascending. Throws kInvalidSeed if
/// the seed cell is unoccupied and kIndex if it is out of range.
std::vector<std::size_t> flood_ring(std::span<const double> heights,
                                    std::span<const std::uint8_t> occupied, std::size_t seed_col,
                                    const FloodConfig& cfg);

/// Marks every point of every flooded cell as ground in a copy of `base`.
/// `frame` must be unnormalized so the height channel is in meters.
PointLabels apply_seeds(const BinGrid& grid, const DenseFrame& frame,
                        std::span<const SeedPoint> seeds, const FloodConfig& cfg,
                        const PointLabels& base);

PointLabels toggle_points(const PointLabels& labels, std::span<const std::size_t> indices, Label value);

}  // namespace groundseg

#endif  // GROUNDSEG_FLOOD_HPP_
