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

#include "groundseg/auto_labeler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "groundseg/error.hpp"

namespace groundseg {

void AutoLabelConfig::validate() const {
  if (!(cell_size > 0.0) || !(max_height_spread > 0.0) || !(max_height_stddev > 0.0)) {
    throw Error(ErrorKind::kConfig, "cell size, spread and stddev thresholds must be positive");
  }
}

namespace {

struct CellStats {
  std::size_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
};

std::uint64_t cell_key(double forward, double left, double cell_size) {
  const auto i = static_cast<std::int64_t>(std::floor(forward / cell_size));
  const auto j = static_cast<std::int64_t>(std::floor(left / cell_size));
  return (static_cast<std::uint64_t>(i) << 32) ^ (static_cast<std::uint64_t>(j) & 0xFFFFFFFFull);
}

}  // namespace

PointLabels auto_label(const PointCloud& cloud, const AutoLabelConfig& cfg) {
  cfg.validate();
  if (cloud.empty()) throw Error(ErrorKind::kEmptyInput, "cannot auto-label an empty cloud");

  std::vector<std::uint64_t> keys(cloud.size());
  std::unordered_map<std::uint64_t, CellStats> cells;
  cells.reserve(cloud.size() / 4 + 1);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point& p = cloud.points[i];
    keys[i] = cell_key(p.forward, p.left, cfg.cell_size);
    auto& s = cells[keys[i]];
    const double h = p.up;
    ++s.count;
    s.sum += h;
    s.sum_sq += h * h;
    s.min = std::min(s.min, h);
    s.max = std::max(s.max, h);
  }

  std::unordered_map<std::uint64_t, bool> is_ground;
  is_ground.reserve(cells.size());
  for (const auto& [key, s] : cells) {
    const auto n = static_cast<double>(s.count);
    const double mean = s.sum / n;
    const double variance = std::max(0.0, s.sum_sq / n - mean * mean);
    is_ground[key] = mean <= cfg.max_height_mean && (s.max - s.min) <= cfg.max_height_spread &&
                     std::sqrt(variance) <= cfg.max_height_stddev;
  }

  PointLabels out(cloud.size(), Label::kNonGround, cloud.frame_id);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (is_ground[keys[i]]) out.labels[i] = Label::kGround;
  }
  return out;
}

}  // namespace groundseg
