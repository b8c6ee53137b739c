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

#include "groundseg/error.hpp"

#include <fstream>
#include <system_error>

#include "byte_io.hpp"

namespace groundseg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "io error";
    case ErrorKind::kMalformedFile: return "malformed file";
    case ErrorKind::kRingOverflow: return "ring overflow";
    case ErrorKind::kDegeneratePoint: return "degenerate point";
    case ErrorKind::kMissingRing: return "missing ring";
    case ErrorKind::kEmptyFrame: return "empty frame";
    case ErrorKind::kState: return "state error";
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kInvalidSeed: return "invalid seed";
    case ErrorKind::kIndex: return "index error";
    case ErrorKind::kEmptyInput: return "empty input";
    case ErrorKind::kConfig: return "config error";
    case ErrorKind::kDivergence: return "divergence";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kCorruption: return "corruption error";
    case ErrorKind::kEmptyMask: return "empty mask";
    case ErrorKind::kDegenerateTruth: return "degenerate truth";
  }
  return "error";
}

namespace detail {

std::vector<std::byte> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  const auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  std::vector<std::byte> data(size);
  if (size > 0 && !in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(size))) {
    throw Error(ErrorKind::kIo, "cannot read " + path.string());
  }
  return data;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::byte> data) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorKind::kIo, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(ErrorKind::kIo, "cannot rename " + tmp.string() + ": " + ec.message());
  }
}

}  // namespace detail
}  // namespace groundseg
