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

#include "groundseg/cloud_io.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

#include "byte_io.hpp"
#include "groundseg/error.hpp"

namespace groundseg {

std::size_t record_stride(BinLayout layout) noexcept {
  return layout == BinLayout::kXYZI ? 16 : 20;
}

PointCloud parse_kitti_bin(std::span<const std::byte> bytes, BinLayout layout, LoadStats* stats) {
  const std::size_t stride = record_stride(layout);
  if (bytes.size() % stride != 0) {
    throw Error(ErrorKind::kMalformedFile,
                std::to_string(bytes.size()) + " bytes is not a multiple of the " +
                    std::to_string(stride) + "-byte record stride");
  }
  LoadStats local;
  PointCloud cloud;
  cloud.points.reserve(bytes.size() / stride);
  detail::ByteReader reader(bytes);
  while (reader.remaining() > 0) {
    Point p;
    p.forward = reader.get<float>();
    p.left = reader.get<float>();
    p.up = reader.get<float>();
    p.intensity = reader.get<float>();
    float ring = -1.0F;
    if (layout == BinLayout::kXYZIR) ring = reader.get<float>();

    if (!std::isfinite(p.forward) || !std::isfinite(p.left) || !std::isfinite(p.up) ||
        !std::isfinite(p.intensity)) {
      ++local.dropped_non_finite;
      continue;
    }
    if (p.intensity < 0.0F || p.intensity > 1.0F) {
      p.intensity = std::clamp(p.intensity, 0.0F, 1.0F);
      ++local.clamped_intensity;
    }
    if (layout == BinLayout::kXYZIR && std::isfinite(ring) && ring >= 0.0F) {
      p.ring = static_cast<std::uint32_t>(ring);
    }
    cloud.points.push_back(p);
  }
  if (stats != nullptr) *stats = local;
  return cloud;
}

PointCloud load_kitti_bin(const std::filesystem::path& path, BinLayout layout, LoadStats* stats) {
  LoadStats local;
  auto bytes = detail::read_file(path);
  PointCloud cloud;
  try {
    cloud = parse_kitti_bin(bytes, layout, &local);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
  cloud.frame_id = path.stem().string();
  if (local.dropped_non_finite > 0) {
    std::cerr << "warning: " << path.string() << ": dropped " << local.dropped_non_finite
              << " non-finite point(s)\n";
  }
  if (stats != nullptr) *stats = local;
  return cloud;
}

std::vector<std::byte> serialize_xyzir(const PointCloud& cloud) {
  detail::ByteWriter out;
  out.bytes().reserve(cloud.size() * 20);
  for (const auto& p : cloud.points) {
    out.put(p.forward);
    out.put(p.left);
    out.put(p.up);
    out.put(p.intensity);
    out.put(p.has_ring() ? static_cast<float>(p.ring) : -1.0F);
  }
  return out.release();
}

std::vector<std::byte> serialize_xyzi(const PointCloud& cloud) {
  detail::ByteWriter out;
  out.bytes().reserve(cloud.size() * 16);
  for (const auto& p : cloud.points) {
    out.put(p.forward);
    out.put(p.left);
    out.put(p.up);
    out.put(p.intensity);
  }
  return out.release();
}

void save_kitti_bin(const PointCloud& cloud, const std::filesystem::path& path, BinLayout layout) {
  const auto bytes = layout == BinLayout::kXYZI ? serialize_xyzi(cloud) : serialize_xyzir(cloud);
  detail::write_file_atomic(path, bytes);
}

double horizontal_range(const Point& p) noexcept {
  return std::hypot(static_cast<double>(p.forward), static_cast<double>(p.left));
}

double azimuth_deg(const Point& p) noexcept {
  return std::atan2(static_cast<double>(p.left), static_cast<double>(p.forward)) * 180.0 /
         std::numbers::pi;
}

PointCloud derive_rings(const PointCloud& cloud) {
  PointCloud out = cloud;
  std::uint32_t ring = 0;
  bool have_previous = false;
  double previous_azimuth = 0.0;
  for (auto& p : out.points) {
    if (p.forward != 0.0F || p.left != 0.0F) {
      const double azimuth = azimuth_deg(p);
      if (have_previous && std::abs(azimuth - previous_azimuth) > 180.0) ++ring;
      previous_azimuth = azimuth;
      have_previous = true;
    }
    if (p.has_ring()) continue;
    if (ring >= out.num_rings) {
      throw Error(ErrorKind::kRingOverflow,
                  "azimuth wrap count exceeds " + std::to_string(out.num_rings) +
                      " rings; is the file ordered by acquisition?");
    }
    p.ring = ring;
  }
  return out;
}

}  // namespace groundseg
