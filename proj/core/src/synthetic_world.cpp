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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "groundseg/error.hpp"

namespace groundseg {
namespace {

constexpr double kNoHit = std::numeric_limits<double>::infinity();

struct Vec3 {
  double x, y, z;
};

// Portable distributions: the standard ones are implementation-defined and
// frames must be reproducible from their seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
  }
  double normal() {
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

// up = base + slope_x * forward + slope_y * left
struct Plane {
  double base, slope_x, slope_y;
  double height_at(double x, double y) const { return base + slope_x * x + slope_y * y; }
  double intersect(const Vec3& d) const {
    const double denom = d.z - slope_x * d.x - slope_y * d.y;
    if (denom >= 0.0) return kNoHit;
    return base / denom;
  }
};

struct Box {
  Vec3 lo, hi;
  double intersect(const Vec3& d) const {
    double t0 = 0.0;
    double t1 = kNoHit;
    const double o[3] = {0.0, 0.0, 0.0};
    const double dir[3] = {d.x, d.y, d.z};
    const double lo3[3] = {lo.x, lo.y, lo.z};
    const double hi3[3] = {hi.x, hi.y, hi.z};
    for (int a = 0; a < 3; ++a) {
      if (std::abs(dir[a]) < 1e-12) {
        if (o[a] < lo3[a] || o[a] > hi3[a]) return kNoHit;
        continue;
      }
      double near = (lo3[a] - o[a]) / dir[a];
      double far = (hi3[a] - o[a]) / dir[a];
      if (near > far) std::swap(near, far);
      t0 = std::max(t0, near);
      t1 = std::min(t1, far);
      if (t0 > t1) return kNoHit;
    }
    return t0 > 0.0 ? t0 : kNoHit;
  }
};

struct Cylinder {
  double cx, cy, radius, bottom, top;
  double intersect(const Vec3& d) const {
    double best = kNoHit;
    const double a = d.x * d.x + d.y * d.y;
    const double b = -2.0 * (cx * d.x + cy * d.y);
    const double c = cx * cx + cy * cy - radius * radius;
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0 && a > 0.0) {
      const double t = (-b - std::sqrt(disc)) / (2.0 * a);
      if (t > 0.0) {
        const double z = t * d.z;
        if (z >= bottom && z <= top) best = t;
      }
    }
    if (d.z < 0.0 && top < 0.0) {
      const double t = top / d.z;
      const double x = t * d.x - cx;
      const double y = t * d.y - cy;
      if (x * x + y * y <= radius * radius) best = std::min(best, t);
    }
    return best;
  }
};

enum class Surface { kGround, kObstacle, kWall };

}  // namespace

std::vector<double> ring_elevations_deg(std::uint32_t num_rings) {
  // Two blocks, denser above, the way a 64-beam head spreads its lasers.
  std::vector<double> out(num_rings);
  if (num_rings == 1) return {-10.0};
  const std::uint32_t upper = num_rings / 2;
  const std::uint32_t lower = num_rings - upper;
  for (std::uint32_t i = 0; i < upper; ++i) {
    out[i] = 2.0 - (upper > 1 ? 10.33 * i / (upper - 1) : 0.0);
  }
  for (std::uint32_t j = 0; j < lower; ++j) {
    out[upper + j] = -8.83 - (lower > 1 ? 15.5 * j / (lower - 1) : 0.0);
  }
  return out;
}

SyntheticFrame generate_synthetic_frame(const SyntheticWorldConfig& cfg, std::uint64_t seed) {
  if (cfg.num_rings == 0 || cfg.points_per_ring == 0) {
    throw Error(ErrorKind::kConfig, "synthetic world needs rings and points");
  }
  Rng rng(seed);

  Plane ground{-cfg.sensor_height, 0.0, 0.0};
  if (rng.uniform() < cfg.tilted_fraction) {
    const double slope = rng.uniform(0.0, cfg.max_slope);
    const double heading = rng.uniform(-std::numbers::pi, std::numbers::pi);
    ground.slope_x = slope * std::cos(heading);
    ground.slope_y = slope * std::sin(heading);
  }
  const double wall_radius = rng.uniform(cfg.wall_radius_min, cfg.wall_radius_max);

  std::vector<Box> boxes;
  std::vector<Cylinder> cylinders;
  const std::size_t obstacles = rng.index(cfg.min_obstacles, cfg.max_obstacles);
  for (std::size_t k = 0; k < obstacles; ++k) {
    const double distance = rng.uniform(cfg.min_obstacle_distance, cfg.max_obstacle_distance);
    const double bearing = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const double cx = distance * std::cos(bearing);
    const double cy = distance * std::sin(bearing);
    const double base = ground.height_at(cx, cy) - 0.2;
    const double height = rng.uniform(0.5, 3.0);
    if (rng.uniform() < 0.6) {
      const double hx = rng.uniform(0.25, 2.0);
      const double hy = rng.uniform(0.25, 2.0);
      boxes.push_back({{cx - hx, cy - hy, base}, {cx + hx, cy + hy, base + 0.2 + height}});
    } else {
      cylinders.push_back({cx, cy, rng.uniform(0.15, 1.0), base, base + 0.2 + height});
    }
  }

  const auto elevations = ring_elevations_deg(cfg.num_rings);
  SyntheticFrame frame;
  frame.cloud.num_rings = cfg.num_rings;
  frame.cloud.frame_id = "synthetic_" + std::to_string(seed);
  frame.cloud.points.reserve(cfg.num_rings * cfg.points_per_ring);
  frame.truth.labels.reserve(cfg.num_rings * cfg.points_per_ring);
  frame.truth.frame_id = frame.cloud.frame_id;

  const double step = 360.0 / static_cast<double>(cfg.points_per_ring);
  for (std::uint32_t ring = 0; ring < cfg.num_rings; ++ring) {
    const double elevation = elevations[ring] * std::numbers::pi / 180.0;
    for (std::size_t k = 0; k < cfg.points_per_ring; ++k) {
      const double azimuth_deg = -180.0 + (static_cast<double>(k) + 0.5 + rng.uniform(-0.05, 0.05)) * step;
      const double azimuth = azimuth_deg * std::numbers::pi / 180.0;
      const Vec3 d{std::cos(elevation) * std::cos(azimuth), std::cos(elevation) * std::sin(azimuth),
                   std::sin(elevation)};

      double t = wall_radius / std::hypot(d.x, d.y);
      Surface surface = Surface::kWall;
      if (const double tg = ground.intersect(d); tg < t) {
        t = tg;
        surface = Surface::kGround;
      }
      for (const auto& b : boxes) {
        if (const double tb = b.intersect(d); tb < t) {
          t = tb;
          surface = Surface::kObstacle;
        }
      }
      for (const auto& c : cylinders) {
        if (const double tc = c.intersect(d); tc < t) {
          t = tc;
          surface = Surface::kObstacle;
        }
      }

      t += cfg.range_noise * rng.normal();
      Point p;
      p.forward = static_cast<float>(t * d.x);
      p.left = static_cast<float>(t * d.y);
      p.up = static_cast<float>(t * d.z);
      double intensity = 0.0;
      switch (surface) {
        case Surface::kGround: intensity = 0.25 + 0.05 * rng.normal(); break;
        case Surface::kObstacle: intensity = 0.45 + 0.15 * rng.normal(); break;
        case Surface::kWall: intensity = 0.35 + 0.10 * rng.normal(); break;
      }
      p.intensity = static_cast<float>(std::clamp(intensity, 0.0, 1.0));
      p.ring = ring;
      frame.cloud.points.push_back(p);
      frame.truth.labels.push_back(surface == Surface::kGround ? Label::kGround : Label::kNonGround);
    }
  }
  return frame;
}

}  // namespace groundseg
