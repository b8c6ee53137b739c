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

#include "groundseg_tools/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

#include "groundseg/error.hpp"

namespace groundseg::tools {

std::map<std::string, std::filesystem::path> list_frames(const std::filesystem::path& input,
                                                         const std::string& extension) {
  namespace fs = std::filesystem;
  std::map<std::string, fs::path> out;
  std::error_code ec;
  if (fs::is_regular_file(input, ec)) {
    out.emplace(input.stem().string(), input);
    return out;
  }
  if (!fs::is_directory(input, ec)) throw Error(ErrorKind::kIo, "no such file or directory: " + input.string());
  for (const auto& entry : fs::directory_iterator(input)) {
    if (!entry.is_regular_file()) continue;
    const auto& p = entry.path();
    const auto name = p.filename().string();
    if (name.size() <= extension.size() || !name.ends_with(extension)) continue;
    out.emplace(name.substr(0, name.size() - extension.size()), p);
  }
  return out;
}

PointCloud load_cloud(const std::filesystem::path& path, BinLayout layout, std::uint32_t num_rings) {
  auto cloud = load_kitti_bin(path, layout);
  cloud.num_rings = num_rings;
  const bool missing = std::any_of(cloud.points.begin(), cloud.points.end(),
                                   [](const Point& p) { return !p.has_ring(); });
  if (missing) {
    auto id = std::move(cloud.frame_id);
    cloud = derive_rings(cloud);
    cloud.frame_id = std::move(id);
  }
  return cloud;
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(jobs);
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

}  // namespace groundseg::tools
