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

#ifndef GROUNDSEG_GRID_HPP_
#define GROUNDSEG_GRID_HPP_

#include <cassert>
#include <cstddef>
#include <vector>

#include "groundseg/labels.hpp"

namespace groundseg {

/// Row-major rings x columns matrix.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  T& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::vector<T>& data() noexcept { return data_; }
  const std::vector<T>& data() const noexcept { return data_; }

  bool same_shape(std::size_t rows, std::size_t cols) const noexcept {
    return rows_ == rows && cols_ == cols;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Per-cell training target. `valid` cells take part in the loss; the rest
/// (empty or never annotated) are masked out.
struct LabelGrid {
  Grid<Label> labels;
  Grid<std::uint8_t> valid;

  std::size_t rows() const noexcept { return labels.rows(); }
  std::size_t cols() const noexcept { return labels.cols(); }
};

/// Network output: probability of ground per cell. The complementary
/// probability is 1 - p_ground.
struct ProbabilityMap {
  Grid<double> p_ground;

  std::size_t rows() const noexcept { return p_ground.rows(); }
  std::size_t cols() const noexcept { return p_ground.cols(); }
};

}  // namespace groundseg

#endif  // GROUNDSEG_GRID_HPP_
