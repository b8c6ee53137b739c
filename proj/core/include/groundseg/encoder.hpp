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

// Sparse point cloud -> dense rings x azimuth-columns matrix.
//
// Points are binned by (ring, azimuth column); every occupied bin becomes
// one cell holding the mean (height, horizontal range, intensity) of its
// points. Empty cells are filled by linear interpolation, then the frame is
// normalized for the network: height / H and ln(depth).

#ifndef GROUNDSEG_ENCODER_HPP_
#define GROUNDSEG_ENCODER_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "groundseg/cloud_io.hpp"
#include "groundseg/grid.hpp"
#include "groundseg/labels.hpp"

namespace groundseg {

struct EncoderConfig {
  double bin_width_deg = 1.0;
  std::uint32_t num_rings = kDefaultNumRings;
  double height_norm = 3.0;
  /// Evaluation-time range limit in meters; nullopt means unlimited.
  std::optional<double> max_range = 60.0;

  /// Throws kConfig unless 360 / bin_width_deg is integral and height_norm > 0.
  void validate() const;
  std::size_t num_columns() const;
};

inline constexpr double kDepthFloor = 0.01;

enum Channel : std::size_t { kHeight = 0, kDepth = 1, kIntensity = 2 };
inline constexpr std::size_t kNumChannels = 3;

/// Points grouped by (ring, column), stored compressed: cell k owns
/// point_indices[offsets[k] .. offsets[k + 1]).
class BinGrid {
 public:
  static constexpr std::int32_t kSkipped = -1;

  BinGrid() = default;
  BinGrid(std::size_t rows, std::size_t cols, std::span<const std::int32_t> cell_of_point);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t point_count() const noexcept { return cell_of_point_.size(); }
  std::size_t skipped_count() const noexcept { return skipped_; }

  std::span<const std::uint32_t> cell(std::size_t r, std::size_t c) const;
  /// Flat cell index (r * cols + c) or kSkipped for points that were not binned.
  std::int32_t cell_of_point(std::size_t point) const { return cell_of_point_[point]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t skipped_ = 0;
  std::vector<std::int32_t> cell_of_point_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> point_indices_;
};

class DenseFrame {
 public:
  DenseFrame() = default;
  DenseFrame(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& at(std::size_t channel, std::size_t r, std::size_t c) {
    return values_[(channel * rows_ + r) * cols_ + c];
  }
  double at(std::size_t channel, std::size_t r, std::size_t c) const {
    return values_[(channel * rows_ + r) * cols_ + c];
  }

  /// Channel-major values: kNumChannels x rows x cols.
  std::vector<double>& values() noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }

  Grid<std::uint8_t>& occupancy() noexcept { return occupancy_; }
  const Grid<std::uint8_t>& occupancy() const noexcept { return occupancy_; }
  bool occupied(std::size_t r, std::size_t c) const { return occupancy_(r, c) != 0; }

  bool normalized() const noexcept { return normalized_; }
  void set_normalized(bool value) noexcept { normalized_ = value; }

  friend bool operator==(const DenseFrame&, const DenseFrame&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
  Grid<std::uint8_t> occupancy_;
  bool normalized_ = false;
};

struct EncodedFrame {
  DenseFrame frame;
  BinGrid grid;
};

/// Azimuth column of a point. Throws kDegeneratePoint when forward == left == 0.
std::size_t polar_cone(const Point& p, const EncoderConfig& cfg);

/// Throws kMissingRing for points without a ring, kRingOverflow for rings
/// outside the configured count.
BinGrid bin_points(const PointCloud& cloud, const EncoderConfig& cfg);

/// Per-bin means with empty cells interpolated. Not normalized.
EncodedFrame encode_frame(const PointCloud& cloud, const EncoderConfig& cfg);

/// Fills unoccupied cells from occupied ones: along each (circular) row
/// first, then down each column for rows without any occupied cell.
DenseFrame interpolate_empty(const DenseFrame& frame);

DenseFrame normalize(const DenseFrame& frame, const EncoderConfig& cfg);

/// Majority vote of labeled points per cell; ties go to non-ground. Cells
/// without labeled points are masked out.
LabelGrid labels_to_grid(const PointLabels& labels, const BinGrid& grid);

/// Cell probability for each point; points skipped at binning get 0.
std::vector<double> grid_to_point_probs(const ProbabilityMap& probs, const BinGrid& grid,
                                        const PointCloud& cloud);

// `.gsf`: "GSF1", u32 rows, u32 cols, u32 channels, float32 values
// (channel-major), rows x cols occupancy bytes, 1 normalized byte.
std::vector<std::byte> encode_frame_file(const DenseFrame& frame);
DenseFrame decode_frame_file(std::span<const std::byte> bytes);
void save_frame(const DenseFrame& frame, const std::filesystem::path& path);
DenseFrame load_frame(const std::filesystem::path& path);

}  // namespace groundseg

#endif  // GROUNDSEG_ENCODER_HPP_
