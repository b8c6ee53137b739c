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

#include "groundseg_tools/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "groundseg/error.hpp"

namespace groundseg::tools {

std::vector<std::string> RunManifest::frames(Split split) const {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (e.split == split) out.push_back(e.frame_id);
  }
  return out;
}

RunManifest make_manifest(const std::filesystem::path& root, std::vector<std::string> frame_ids,
                          std::uint64_t split_seed, double split_ratio) {
  if (!(split_ratio >= 0.0 && split_ratio <= 1.0)) {
    throw Error(ErrorKind::kConfig, "split ratio must lie in [0, 1]");
  }
  std::sort(frame_ids.begin(), frame_ids.end());
  if (std::adjacent_find(frame_ids.begin(), frame_ids.end()) != frame_ids.end()) {
    throw Error(ErrorKind::kConfig, "duplicate frame ids");
  }
  std::vector<std::size_t> order(frame_ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(split_seed);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  const auto train_count = static_cast<std::size_t>(std::llround(split_ratio * static_cast<double>(order.size())));

  RunManifest m;
  m.root = root;
  m.split_seed = split_seed;
  m.split_ratio = split_ratio;
  m.entries.resize(frame_ids.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    m.entries[order[k]] = {frame_ids[order[k]], k < train_count ? Split::kTrain : Split::kEval};
  }
  return m;
}

void save_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
  std::ostringstream out;
  char ratio[32];
  std::snprintf(ratio, sizeof(ratio), "%.6f", manifest.split_ratio);
  out << "groundseg-manifest 1\n"
      << "root " << manifest.root.string() << "\n"
      << "split_seed " << manifest.split_seed << "\n"
      << "split_ratio " << ratio << "\n";
  for (const auto& e : manifest.entries) out << e.frame_id << ' ' << (e.split == Split::kTrain ? "TRAIN" : "EVAL") << '\n';
  std::ofstream file(path, std::ios::binary);
  if (!(file << out.str())) throw Error(ErrorKind::kIo, "cannot write " + path.string());
}

RunManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open manifest " + path.string());
  auto bad = [&](const std::string& why) { return Error(ErrorKind::kFormat, path.string() + ": " + why); };

  std::string line;
  if (!std::getline(in, line) || line != "groundseg-manifest 1") throw bad("missing manifest header");
  RunManifest m;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto space = line.find(' ');
    if (space == std::string::npos) throw bad("malformed line '" + line + "'");
    const std::string key = line.substr(0, space);
    const std::string value = line.substr(space + 1);
    if (key == "root" && m.entries.empty()) {
      m.root = value;
    } else if (key == "split_seed" && m.entries.empty()) {
      m.split_seed = std::stoull(value);
    } else if (key == "split_ratio" && m.entries.empty()) {
      m.split_ratio = std::stod(value);
    } else if (value == "TRAIN" || value == "EVAL") {
      if (!seen.insert(key).second) throw bad("frame " + key + " listed twice");
      m.entries.push_back({key, value == "TRAIN" ? Split::kTrain : Split::kEval});
    } else {
      throw bad("malformed line '" + line + "'");
    }
  }
  return m;
}

}  // namespace groundseg::tools
