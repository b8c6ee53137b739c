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

#ifndef GROUNDSEG_TOOLS_DATASET_HPP_
#define GROUNDSEG_TOOLS_DATASET_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <string>

#include "groundseg/cloud_io.hpp"
#include "groundseg/encoder.hpp"

namespace groundseg::tools {

/// Frame id (file stem) -> path, sorted by id. `input` may be a single file
/// or a directory; only files ending in `extension` are listed.
std::map<std::string, std::filesystem::path> list_frames(const std::filesystem::path& input,
                                                         const std::string& extension);

/// Loads a KITTI bin and derives rings when the layout carries none.
PointCloud load_cloud(const std::filesystem::path& path, BinLayout layout, std::uint32_t num_rings);

/// Runs fn(0..count-1) on up to `jobs` threads. Each index runs exactly once;
/// callers write results into per-index slots so output order is fixed.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace groundseg::tools

#endif  // GROUNDSEG_TOOLS_DATASET_HPP_
