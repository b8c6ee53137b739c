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

#include "groundseg/flood.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "groundseg/error.hpp"

namespace groundseg {

void FloodConfig::validate() const {
  if (!(t1 > 0.0) || !(t1 <= t2)) {
    throw Error(ErrorKind::kConfig, "flood thresholds need 0 < t1 <= t2 (t1=" + std::to_string(t1) +
                                        ", t2=" + std::to_string(t2) + ")");
  }
}

std::vector<std::size_t> flood_ring(std::span<const double> heights,
                                    std::span<const std::uint8_t> occupied, std::size_t seed_col,
                                    const FloodConfig& cfg) {
  cfg.validate();
  const std::size_t n = heights.size();
  if (occupied.size() != n) throw Error(ErrorKind::kShape, "height and occupancy rows differ in length");
  if (seed_col >= n) {
    throw Error(ErrorKind::kIndex, "seed column " + std::to_string(seed_col) + " outside ring of " +
                                       std::to_string(n));
  }
  if (occupied[seed_col] == 0) {
    throw Error(ErrorKind::kInvalidSeed, "seed column " + std::to_string(seed_col) + " is unoccupied");
  }

  const double seed_height = heights[seed_col];
  std::vector<std::uint8_t> flooded(n, 0);
  flooded[seed_col] = 1;

  // Walks one direction; returns the number of cells it claimed.
  auto walk = [&](std::ptrdiff_t direction, std::size_t budget) {
    std::size_t taken = 0;
    double previous = seed_height;
    auto col = static_cast<std::ptrdiff_t>(seed_col);
    const auto size = static_cast<std::ptrdiff_t>(n);
    while (taken < budget) {
      col = ((col + direction) % size + size) % size;
      const auto c = static_cast<std::size_t>(col);
      if (occupied[c] == 0) break;
      const double h = heights[c];
      if (std::abs(h - previous) > cfg.t1 || std::abs(h - seed_height) > cfg.t2) break;
      flooded[c] = 1;
      previous = h;
      ++taken;
    }
    return taken;
  };

  const std::size_t forward = walk(+1, n - 1);
  walk(-1, n - 1 - forward);

  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < n; ++c) {
    if (flooded[c]) out.push_back(c);
  }
  return out;
}

PointLabels apply_seeds(const BinGrid& grid, const DenseFrame& frame,
                        std::span<const SeedPoint> seeds, const FloodConfig& cfg,
                        const PointLabels& base) {
  if (frame.normalized()) {
    throw Error(ErrorKind::kState, "flooding needs raw heights; got a normalized frame");
  }
  if (frame.rows() != grid.rows() || frame.cols() != grid.cols()) {
    throw Error(ErrorKind::kShape, "frame and bin grid shapes differ");
  }
  if (base.size() != grid.point_count()) {
    throw Error(ErrorKind::kShape, "label count " + std::to_string(base.size()) +
                                       " != point count " + std::to_string(grid.point_count()));
  }
  for (const auto& seed : seeds) {
    if (seed.ring >= grid.rows() || seed.column >= grid.cols()) {
      throw Error(ErrorKind::kIndex, "seed (" + std::to_string(seed.ring) + ", " +
                                         std::to_string(seed.column) + ") out of bounds");
    }
  }

  PointLabels out = base;
  const std::size_t cols = frame.cols();
  std::vector<double> heights(cols);
  for (const auto& seed : seeds) {
    for (std::size_t c = 0; c < cols; ++c) heights[c] = frame.at(kHeight, seed.ring, c);
    const std::span<const std::uint8_t> occupied(frame.occupancy().data().data() + seed.ring * cols, cols);
    for (auto c : flood_ring(heights, occupied, seed.column, cfg)) {
      for (auto idx : grid.cell(seed.ring, c)) out.labels[idx] = Label::kGround;
    }
  }
  return out;
}

PointLabels toggle_points(const PointLabels& labels, std::span<const std::size_t> indices, Label value) {
  for (auto idx : indices) {
    if (idx >= labels.size()) {
      throw Error(ErrorKind::kIndex, "point index " + std::to_string(idx) + " >= " +
                                         std::to_string(labels.size()));
    }
  }
  PointLabels out = labels;
  for (auto idx : indices) out.labels[idx] = value;
  return out;
}

}  // namespace groundseg
