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

#ifndef GROUNDSEG_TENSOR_HPP_
#define GROUNDSEG_TENSOR_HPP_

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace groundseg {

/// NCHW extents. Kernels reuse the same struct as (out, in, kh, kw).
struct Shape4 {
  std::size_t n = 0;
  std::size_t c = 0;
  std::size_t h = 0;
  std::size_t w = 0;

  std::size_t count() const noexcept { return n * c * h * w; }
  std::string str() const {
    return "(" + std::to_string(n) + ", " + std::to_string(c) + ", " + std::to_string(h) + ", " +
           std::to_string(w) + ")";
  }
  friend bool operator==(const Shape4&, const Shape4&) = default;
};

class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape4 shape, double fill = 0.0) : shape_(shape), data_(shape.count(), fill) {}

  const Shape4& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t n, std::size_t c, std::size_t h, std::size_t w) {
    return data_[index(n, c, h, w)];
  }
  double operator()(std::size_t n, std::size_t c, std::size_t h, std::size_t w) const {
    return data_[index(n, c, h, w)];
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  /// One batch element as a contiguous (c, h, w) block.
  std::span<double> sample(std::size_t n) noexcept {
    return std::span<double>(data_).subspan(n * shape_.c * shape_.h * shape_.w,
                                            shape_.c * shape_.h * shape_.w);
  }
  std::span<const double> sample(std::size_t n) const noexcept {
    return std::span<const double>(data_).subspan(n * shape_.c * shape_.h * shape_.w,
                                                  shape_.c * shape_.h * shape_.w);
  }

  void fill(double value) { std::fill(data_.begin(), data_.end(), value); }

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::size_t index(std::size_t n, std::size_t c, std::size_t h, std::size_t w) const {
    assert(n < shape_.n && c < shape_.c && h < shape_.h && w < shape_.w);
    return ((n * shape_.c + c) * shape_.h + h) * shape_.w + w;
  }

  Shape4 shape_;
  std::vector<double> data_;
};

}  // namespace groundseg

#endif  // GROUNDSEG_TENSOR_HPP_
