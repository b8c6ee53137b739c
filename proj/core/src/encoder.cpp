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

#include "groundseg/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "byte_io.hpp"
#include "groundseg/error.hpp"

namespace groundseg {

void EncoderConfig::validate() const {
  if (!(bin_width_deg > 0.0)) throw Error(ErrorKind::kConfig, "bin width must be positive");
  const double columns = 360.0 / bin_width_deg;
  if (std::abs(columns - std::round(columns)) > 1e-9) {
    throw Error(ErrorKind::kConfig, "bin width " + std::to_string(bin_width_deg) +
                                        " deg does not tile 360 deg");
  }
  if (!(height_norm > 0.0)) throw Error(ErrorKind::kConfig, "height_norm must be positive");
  if (num_rings == 0) throw Error(ErrorKind::kConfig, "num_rings must be positive");
  if (max_range && !(*max_range > 0.0)) throw Error(ErrorKind::kConfig, "max_range must be positive");
}

std::size_t EncoderConfig::num_columns() const {
  return static_cast<std::size_t>(std::llround(360.0 / bin_width_deg));
}

BinGrid::BinGrid(std::size_t rows, std::size_t cols, std::span<const std::int32_t> cell_of_point)
    : rows_(rows), cols_(cols), cell_of_point_(cell_of_point.begin(), cell_of_point.end()) {
  const std::size_t cells = rows * cols;
  offsets_.assign(cells + 1, 0);
  for (auto cell : cell_of_point_) {
    if (cell == kSkipped) {
      ++skipped_;
    } else {
      ++offsets_[static_cast<std::size_t>(cell) + 1];
    }
  }
  for (std::size_t k = 0; k < cells; ++k) offsets_[k + 1] += offsets_[k];
  point_indices_.resize(offsets_.back());
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < cell_of_point_.size(); ++i) {
    const auto cell = cell_of_point_[i];
    if (cell != kSkipped) point_indices_[cursor[static_cast<std::size_t>(cell)]++] = static_cast<std::uint32_t>(i);
  }
}

std::span<const std::uint32_t> BinGrid::cell(std::size_t r, std::size_t c) const {
  const std::size_t k = r * cols_ + c;
  return {point_indices_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
}

DenseFrame::DenseFrame(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(kNumChannels * rows * cols, 0.0), occupancy_(rows, cols, 0) {}

std::size_t polar_cone(const Point& p, const EncoderConfig& cfg) {
  if (p.forward == 0.0F && p.left == 0.0F) {
    throw Error(ErrorKind::kDegeneratePoint, "azimuth undefined at the sensor axis");
  }
  const auto columns = cfg.num_columns();
  const double shifted = azimuth_deg(p) + 180.0;
  const auto column = static_cast<long long>(std::floor(shifted / cfg.bin_width_deg));
  const auto n = static_cast<long long>(columns);
  return static_cast<std::size_t>(((column % n) + n) % n);
}

BinGrid bin_points(const PointCloud& cloud, const EncoderConfig& cfg) {
  cfg.validate();
  const std::size_t rows = cfg.num_rings;
  const std::size_t cols = cfg.num_columns();
  std::vector<std::int32_t> cell_of_point(cloud.size(), BinGrid::kSkipped);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point& p = cloud.points[i];
    if (!p.has_ring()) {
      throw Error(ErrorKind::kMissingRing, "point " + std::to_string(i) + " has no ring index");
    }
    if (p.ring >= rows) {
      throw Error(ErrorKind::kRingOverflow, "point " + std::to_string(i) + " has ring " +
                                                std::to_string(p.ring) + " >= " + std::to_string(rows));
    }
    if (p.forward == 0.0F && p.left == 0.0F) continue;
    cell_of_point[i] = static_cast<std::int32_t>(p.ring * cols + polar_cone(p, cfg));
  }
  return BinGrid(rows, cols, cell_of_point);
}

EncodedFrame encode_frame(const PointCloud& cloud, const EncoderConfig& cfg) {
  EncodedFrame out;
  out.grid = bin_points(cloud, cfg);
  DenseFrame frame(out.grid.rows(), out.grid.cols());
  for (std::size_t r = 0; r < frame.rows(); ++r) {
    for (std::size_t c = 0; c < frame.cols(); ++c) {
      const auto members = out.grid.cell(r, c);
      if (members.empty()) continue;
      double height = 0.0;
      double depth = 0.0;
      double intensity = 0.0;
      for (auto idx : members) {
        const Point& p = cloud.points[idx];
        height += p.up;
        depth += horizontal_range(p);
        intensity += p.intensity;
      }
      const auto n = static_cast<double>(members.size());
      frame.at(kHeight, r, c) = height / n;
      frame.at(kDepth, r, c) = depth / n;
      frame.at(kIntensity, r, c) = intensity / n;
      frame.occupancy()(r, c) = 1;
    }
  }
  out.frame = interpolate_empty(frame);
  return out;
}

DenseFrame interpolate_empty(const DenseFrame& frame) {
  const std::size_t rows = frame.rows();
  const std::size_t cols = frame.cols();
  DenseFrame out = frame;
  std::vector<std::uint8_t> row_has_data(rows, 0);
  std::vector<std::size_t> occupied;
  occupied.reserve(cols);

  for (std::size_t r = 0; r < rows; ++r) {
    occupied.clear();
    for (std::size_t c = 0; c < cols; ++c) {
      if (frame.occupied(r, c)) occupied.push_back(c);
    }
    if (occupied.empty()) continue;
    row_has_data[r] = 1;
    for (std::size_t ch = 0; ch < kNumChannels; ++ch) {
      if (occupied.size() == 1) {
        const double v = frame.at(ch, r, occupied.front());
        for (std::size_t c = 0; c < cols; ++c) out.at(ch, r, c) = v;
        continue;
      }
      // Each occupied cell and its circular successor bound one gap.
      for (std::size_t k = 0; k < occupied.size(); ++k) {
        const std::size_t a = occupied[k];
        const std::size_t b = occupied[(k + 1) % occupied.size()];
        const std::size_t gap = (b + cols - a) % cols;
        const double va = frame.at(ch, r, a);
        const double vb = frame.at(ch, r, b);
        for (std::size_t step = 1; step < gap; ++step) {
          const double t = static_cast<double>(step) / static_cast<double>(gap);
          out.at(ch, r, (a + step) % cols) = va + (vb - va) * t;
        }
      }
    }
  }

  if (std::none_of(row_has_data.begin(), row_has_data.end(), [](auto v) { return v != 0; })) {
    throw Error(ErrorKind::kEmptyFrame, "frame has no occupied cell to interpolate from");
  }

  for (std::size_t r = 0; r < rows; ++r) {
    if (row_has_data[r]) continue;
    std::optional<std::size_t> above;
    std::optional<std::size_t> below;
    for (std::size_t k = r; k-- > 0;) {
      if (row_has_data[k]) {
        above = k;
        break;
      }
    }
    for (std::size_t k = r + 1; k < rows; ++k) {
      if (row_has_data[k]) {
        below = k;
        break;
      }
    }
    for (std::size_t ch = 0; ch < kNumChannels; ++ch) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (above && below) {
          const double t = static_cast<double>(r - *above) / static_cast<double>(*below - *above);
          const double va = out.at(ch, *above, c);
          out.at(ch, r, c) = va + (out.at(ch, *below, c) - va) * t;
        } else {
          out.at(ch, r, c) = out.at(ch, above ? *above : *below, c);
        }
      }
    }
  }
  return out;
}

DenseFrame normalize(const DenseFrame& frame, const EncoderConfig& cfg) {
  if (frame.normalized()) throw Error(ErrorKind::kState, "frame is already normalized");
  cfg.validate();
  DenseFrame out = frame;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      out.at(kHeight, r, c) = frame.at(kHeight, r, c) / cfg.height_norm;
      out.at(kDepth, r, c) = std::log(std::max(frame.at(kDepth, r, c), kDepthFloor));
    }
  }
  out.set_normalized(true);
  return out;
}

LabelGrid labels_to_grid(const PointLabels& labels, const BinGrid& grid) {
  if (labels.size() != grid.point_count()) {
    throw Error(ErrorKind::kShape, "label count " + std::to_string(labels.size()) +
                                       " != point count " + std::to_string(grid.point_count()));
  }
  LabelGrid out{Grid<Label>(grid.rows(), grid.cols(), Label::kNonGround),
                Grid<std::uint8_t>(grid.rows(), grid.cols(), 0)};
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      std::size_t ground = 0;
      std::size_t non_ground = 0;
      for (auto idx : grid.cell(r, c)) {
        const Label l = labels.labels[idx];
        if (l == Label::kGround) {
          ++ground;
        } else if (l == Label::kNonGround) {
          ++non_ground;
        }
      }
      if (ground + non_ground == 0) continue;
      out.valid(r, c) = 1;
      out.labels(r, c) = ground > non_ground ? Label::kGround : Label::kNonGround;
    }
  }
  return out;
}

std::vector<double> grid_to_point_probs(const ProbabilityMap& probs, const BinGrid& grid,
                                        const PointCloud& cloud) {
  if (!probs.p_ground.same_shape(grid.rows(), grid.cols())) {
    throw Error(ErrorKind::kShape, "probability map " + std::to_string(probs.rows()) + "x" +
                                       std::to_string(probs.cols()) + " does not match bin grid " +
                                       std::to_string(grid.rows()) + "x" + std::to_string(grid.cols()));
  }
  if (cloud.size() != grid.point_count()) {
    throw Error(ErrorKind::kShape, "cloud does not match bin grid");
  }
  std::vector<double> out(cloud.size(), 0.0);
  const auto& flat = probs.p_ground.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto cell = grid.cell_of_point(i);
    if (cell != BinGrid::kSkipped) out[i] = flat[static_cast<std::size_t>(cell)];
  }
  return out;
}

std::vector<std::byte> encode_frame_file(const DenseFrame& frame) {
  detail::ByteWriter out;
  out.put_ascii("GSF1");
  out.put(static_cast<std::uint32_t>(frame.rows()));
  out.put(static_cast<std::uint32_t>(frame.cols()));
  out.put(static_cast<std::uint32_t>(kNumChannels));
  for (double v : frame.values()) out.put(static_cast<float>(v));
  for (auto occ : frame.occupancy().data()) out.put(static_cast<std::uint8_t>(occ != 0 ? 1 : 0));
  out.put(static_cast<std::uint8_t>(frame.normalized() ? 1 : 0));
  return out.release();
}

DenseFrame decode_frame_file(std::span<const std::byte> bytes) {
  detail::ByteReader in(bytes);
  if (bytes.size() < 16 || in.get_ascii(4) != "GSF1") throw Error(ErrorKind::kFormat, "missing GSF1 magic");
  const auto rows = in.get<std::uint32_t>();
  const auto cols = in.get<std::uint32_t>();
  const auto channels = in.get<std::uint32_t>();
  if (channels != kNumChannels) {
    throw Error(ErrorKind::kFormat, "expected 3 channels, found " + std::to_string(channels));
  }
  const std::size_t cells = static_cast<std::size_t>(rows) * cols;
  if (in.remaining() != cells * kNumChannels * sizeof(float) + cells + 1) {
    throw Error(ErrorKind::kFormat, "frame body size does not match its header");
  }
  DenseFrame frame(rows, cols);
  for (auto& v : frame.values()) v = in.get<float>();
  for (auto& occ : frame.occupancy().data()) occ = in.get<std::uint8_t>() != 0 ? 1 : 0;
  frame.set_normalized(in.get<std::uint8_t>() != 0);
  return frame;
}

void save_frame(const DenseFrame& frame, const std::filesystem::path& path) {
  detail::write_file_atomic(path, encode_frame_file(frame));
}

DenseFrame load_frame(const std::filesystem::path& path) {
  auto bytes = detail::read_file(path);
  try {
    return decode_frame_file(bytes);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace groundseg
