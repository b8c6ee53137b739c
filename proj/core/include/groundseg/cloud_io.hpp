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

#ifndef GROUNDSEG_CLOUD_IO_HPP_
#define GROUNDSEG_CLOUD_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace groundseg {

inline constexpr std::uint32_t kUnassignedRing = 0xFFFFFFFFu;
inline constexpr std::uint32_t kDefaultNumRings = 64;

/// One LiDAR return in the sensor frame. `up` is the height above the sensor
/// origin, (forward, left) span the horizontal plane.
struct Point {
  float forward = 0.0F;
  float left = 0.0F;
  float up = 0.0F;
  float intensity = 0.0F;
  std::uint32_t ring = kUnassignedRing;

  bool has_ring() const noexcept { return ring != kUnassignedRing; }
  friend bool operator==(const Point&, const Point&) = default;
};

/// Points in acquisition order. Ring derivation depends on that order.
struct PointCloud {
  std::vector<Point> points;
  std::uint32_t num_rings = kDefaultNumRings;
  std::string frame_id;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  friend bool operator==(const PointCloud&, const PointCloud&) = default;
};

enum class BinLayout {
  kXYZI,   // 4 x float32, 16-byte stride
  kXYZIR,  // 5 x float32, 20-byte stride, ring stored as float
};

std::size_t record_stride(BinLayout layout) noexcept;

struct LoadStats {
  std::size_t dropped_non_finite = 0;
  std::size_t clamped_intensity = 0;
};

/// Decodes a KITTI-style little-endian float record stream. Non-finite
/// records are dropped and counted; intensity is clamped to [0, 1].
PointCloud parse_kitti_bin(std::span<const std::byte> bytes, BinLayout layout,
                           LoadStats* stats = nullptr);

PointCloud load_kitti_bin(const std::filesystem::path& path, BinLayout layout,
                          LoadStats* stats = nullptr);

/// XYZIR encoding of the cloud. Unassigned rings are written as -1.
std::vector<std::byte> serialize_xyzir(const PointCloud& cloud);
std::vector<std::byte> serialize_xyzi(const PointCloud& cloud);

void save_kitti_bin(const PointCloud& cloud, const std::filesystem::path& path,
                    BinLayout layout);

/// Assigns ring indices to points lacking one by counting azimuth wraps
/// (a jump of more than 180 degrees between consecutive points) in
/// acquisition order. Throws kRingOverflow if the count reaches num_rings.
PointCloud derive_rings(const PointCloud& cloud);

/// Distance from the sensor's vertical axis.
double horizontal_range(const Point& p) noexcept;

/// Azimuth atan2(left, forward) in degrees, (-180, 180].
double azimuth_deg(const Point& p) noexcept;

}  // namespace groundseg

#endif  // GROUNDSEG_CLOUD_IO_HPP_
