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

// Train/eval split of a dataset directory.
//
// Text format, one entry per line after the header:
//
//   groundseg-manifest 1
//   root <dataset path>
//   split_seed <integer>
//   split_ratio <train share>
//   <frame id> TRAIN|EVAL
//   ...

#ifndef GROUNDSEG_TOOLS_MANIFEST_HPP_
#define GROUNDSEG_TOOLS_MANIFEST_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace groundseg::tools {

enum class Split { kTrain, kEval };

struct ManifestEntry {
  std::string frame_id;
  Split split = Split::kTrain;
  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct RunManifest {
  std::filesystem::path root;
  std::vector<ManifestEntry> entries;  // sorted by frame id
  std::uint64_t split_seed = 1;
  double split_ratio = 0.7;

  std::vector<std::string> frames(Split split) const;
  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

/// Seeded shuffle of the sorted ids; the first round(ratio * n) go to TRAIN.
RunManifest make_manifest(const std::filesystem::path& root, std::vector<std::string> frame_ids,
                          std::uint64_t split_seed, double split_ratio = 0.7);

void save_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest load_manifest(const std::filesystem::path& path);

}  // namespace groundseg::tools

#endif  // GROUNDSEG_TOOLS_MANIFEST_HPP_
