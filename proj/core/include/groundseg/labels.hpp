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

#ifndef GROUNDSEG_LABELS_HPP_
#define GROUNDSEG_LABELS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace groundseg {

/// Byte values double as the `.gsl` on-disk encoding.
enum class Label : std::uint8_t {
  kNonGround = 0,
  kGround = 1,
  kUnlabeled = 255,
};

std::optional<Label> parse_label(std::string_view text);
std::string_view to_string(Label label);

/// Per-point annotation, tri-state while annotating.
struct PointLabels {
  std::vector<Label> labels;
  std::string frame_id;

  PointLabels() = default;
  PointLabels(std::size_t count, Label fill, std::string id = {})
      : labels(count, fill), frame_id(std::move(id)) {}

  std::size_t size() const noexcept { return labels.size(); }
  double labeled_fraction() const noexcept;

  /// Export view: UNLABELED collapses to NON_GROUND.
  std::vector<std::uint8_t> binarized() const;

  friend bool operator==(const PointLabels&, const PointLabels&) = default;
};

// `.gsl`: "GSL1", u32 version, u32 point count, 4 reserved bytes, then one
// byte per point.
inline constexpr std::uint32_t kLabelFileVersion = 1;
inline constexpr std::size_t kLabelHeaderBytes = 16;

std::vector<std::byte> encode_label_file(const PointLabels& labels);
PointLabels decode_label_file(std::span<const std::byte> bytes);

void save_labels(const PointLabels& labels, const std::filesystem::path& path);
PointLabels load_labels(const std::filesystem::path& path);

}  // namespace groundseg

#endif  // GROUNDSEG_LABELS_HPP_
