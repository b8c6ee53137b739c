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

#ifndef GROUNDSEG_AUTO_LABELER_HPP_
#define GROUNDSEG_AUTO_LABELER_HPP_

#include "groundseg/cloud_io.hpp"
#include "groundseg/labels.hpp"

namespace groundseg {

/// Height-statistics thresholds for the pretraining labeler. Heights are
/// relative to the sensor, so ground sits well below zero.
struct AutoLabelConfig {
  double cell_size = 0.5;
  double max_height_mean = -1.4;
  double max_height_spread = 0.15;
  double max_height_stddev = 0.05;

  void validate() const;
};

/// Rough ground labels for pretraining. Points are hashed into a horizontal
/// square grid; a cell is ground when its mean height is low enough and its
/// height spread and standard deviation are both small.
PointLabels auto_label(const PointCloud& cloud, const AutoLabelConfig& cfg = {});

}  // namespace groundseg

#endif  // GROUNDSEG_AUTO_LABELER_HPP_
