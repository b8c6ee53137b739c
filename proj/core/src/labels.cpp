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

#include "groundseg/labels.hpp"

#include <algorithm>

#include "byte_io.hpp"
#include "groundseg/error.hpp"

namespace groundseg {

std::optional<Label> parse_label(std::string_view text) {
  if (text == "ground" || text == "GROUND" || text == "1") return Label::kGround;
  if (text == "non_ground" || text == "NON_GROUND" || text == "0") return Label::kNonGround;
  if (text == "unlabeled" || text == "UNLABELED" || text == "255") return Label::kUnlabeled;
  return std::nullopt;
}

std::string_view to_string(Label label) {
  switch (label) {
    case Label::kGround: return "ground";
    case Label::kNonGround: return "non_ground";
    case Label::kUnlabeled: return "unlabeled";
  }
  return "unlabeled";
}

double PointLabels::labeled_fraction() const noexcept {
  if (labels.empty()) return 0.0;
  const auto labeled = std::count_if(labels.begin(), labels.end(),
                                     [](Label l) { return l != Label::kUnlabeled; });
  return static_cast<double>(labeled) / static_cast<double>(labels.size());
}

std::vector<std::uint8_t> PointLabels::binarized() const {
  std::vector<std::uint8_t> out(labels.size());
  std::transform(labels.begin(), labels.end(), out.begin(),
                 [](Label l) { return static_cast<std::uint8_t>(l == Label::kGround ? 1 : 0); });
  return out;
}

std::vector<std::byte> encode_label_file(const PointLabels& labels) {
  detail::ByteWriter out;
  out.bytes().reserve(kLabelHeaderBytes + labels.size());
  out.put_ascii("GSL1");
  out.put(kLabelFileVersion);
  out.put(static_cast<std::uint32_t>(labels.size()));
  out.put(std::uint32_t{0});
  for (Label l : labels.labels) out.put(static_cast<std::uint8_t>(l));
  return out.release();
}

PointLabels decode_label_file(std::span<const std::byte> bytes) {
  detail::ByteReader in(bytes);
  if (bytes.size() < kLabelHeaderBytes || in.get_ascii(4) != "GSL1") {
    throw Error(ErrorKind::kFormat, "missing GSL1 magic");
  }
  const auto version = in.get<std::uint32_t>();
  if (version != kLabelFileVersion) {
    throw Error(ErrorKind::kFormat, "unsupported label file version " + std::to_string(version));
  }
  const auto count = in.get<std::uint32_t>();
  (void)in.get<std::uint32_t>();
  if (in.remaining() != count) {
    throw Error(ErrorKind::kFormat, "label body holds " + std::to_string(in.remaining()) +
                                        " bytes, header says " + std::to_string(count));
  }
  PointLabels out;
  out.labels.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto raw = in.get<std::uint8_t>();
    if (raw != 0 && raw != 1 && raw != 255) {
      throw Error(ErrorKind::kFormat, "invalid label byte " + std::to_string(raw) +
                                          " at point " + std::to_string(i));
    }
    out.labels.push_back(static_cast<Label>(raw));
  }
  return out;
}

void save_labels(const PointLabels& labels, const std::filesystem::path& path) {
  detail::write_file_atomic(path, encode_label_file(labels));
}

PointLabels load_labels(const std::filesystem::path& path) {
  auto bytes = detail::read_file(path);
  try {
    auto labels = decode_label_file(bytes);
    labels.frame_id = path.stem().string();
    return labels;
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace groundseg
