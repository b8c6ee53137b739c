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

// Little-endian encode/decode helpers shared by the binary file formats.

#ifndef GROUNDSEG_SRC_BYTE_IO_HPP_
#define GROUNDSEG_SRC_BYTE_IO_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "groundseg/error.hpp"

namespace groundseg::detail {

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; big-endian hosts need byte swapping");

class ByteWriter {
 public:
  template <typename T>
    requires std::is_arithmetic_v<T>
  void put(T value) {
    const auto* raw = reinterpret_cast<const std::byte*>(&value);
    bytes_.insert(bytes_.end(), raw, raw + sizeof(T));
  }

  void put_bytes(std::span<const std::byte> data) {
    bytes_.insert(bytes_.end(), data.begin(), data.end());
  }

  void put_ascii(std::string_view text) {
    for (char ch : text) bytes_.push_back(static_cast<std::byte>(ch));
  }

  std::vector<std::byte>& bytes() { return bytes_; }
  std::vector<std::byte> release() { return std::move(bytes_); }

 private:
  std::vector<std::byte> bytes_;
};

/// Bounds-checked cursor; running past the end raises kFormat.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::byte> data) : data_(data) {}

  template <typename T>
    requires std::is_arithmetic_v<T>
  T get() {
    require(sizeof(T));
    T value;
    std::memcpy(&value, data_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  std::string get_ascii(std::size_t count) {
    require(count);
    std::string out(reinterpret_cast<const char*>(data_.data() + pos_), count);
    pos_ += count;
    return out;
  }

  std::span<const std::byte> get_bytes(std::size_t count) {
    require(count);
    auto out = data_.subspan(pos_, count);
    pos_ += count;
    return out;
  }

  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void require(std::size_t count) const {
    if (data_.size() - pos_ < count) {
      throw Error(ErrorKind::kFormat, "unexpected end of data at byte " + std::to_string(pos_));
    }
  }

  std::span<const std::byte> data_;
  std::size_t pos_ = 0;
};

std::vector<std::byte> read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary and renames it over `path`, so readers see
/// either the old or the new content.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::byte> data);

}  // namespace groundseg::detail

#endif  // GROUNDSEG_SRC_BYTE_IO_HPP_
