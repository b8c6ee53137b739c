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

// Layer kernels with their hand-written gradients.
//
// Padding is circular along columns (azimuth wraps around) and zero along
// rows. For kernel extent k the window starts (k - 1) / 2 cells before the
// strided anchor, so a convolution maps (H, W) to (H / sv, W / sh) and a
// deconvolution, defined as its adjoint, maps (h, w) to (h * sv, w * sh).
//
// Kernel layout is (a, b, kh, kw) for a convolution taking b channels to a
// channels. A deconvolution with the same tensor takes a channels back to b,
// which makes <deconv(x), y> == <x, conv(y)> hold exactly.

#ifndef GROUNDSEG_LAYERS_HPP_
#define GROUNDSEG_LAYERS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "groundseg/grid.hpp"
#include "groundseg/tensor.hpp"

namespace groundseg {

struct Stride {
  std::size_t vertical = 1;
  std::size_t horizontal = 1;
  friend bool operator==(const Stride&, const Stride&) = default;
};

struct ConvGradients {
  Tensor grad_input;
  Tensor grad_kernel;
  std::vector<double> grad_bias;
};

Tensor conv2d_forward(const Tensor& input, const Tensor& kernel, std::span<const double> bias,
                      Stride stride);
ConvGradients conv2d_backward(const Tensor& grad_out, const Tensor& input, const Tensor& kernel,
                              Stride stride);

Tensor deconv2d_forward(const Tensor& input, const Tensor& kernel, std::span<const double> bias,
                        Stride stride);
ConvGradients deconv2d_backward(const Tensor& grad_out, const Tensor& input, const Tensor& kernel,
                                Stride stride);

Tensor relu(const Tensor& input);
Tensor relu_backward(const Tensor& grad_out, const Tensor& input);

/// Channel 0 of the logits scores ground, channel 1 non-ground.
struct SoftmaxResult {
  double loss = 0.0;
  Tensor grad_logits;
  std::vector<ProbabilityMap> probs;
  std::size_t counted_cells = 0;
};

/// Mean cross-entropy over cells with a non-zero mask. Throws kEmptyMask when
/// no cell is counted.
SoftmaxResult softmax_xent(const Tensor& logits, std::span<const LabelGrid> targets,
                           std::span<const Grid<std::uint8_t>> masks);

/// Inference-only softmax: p_ground per cell of batch element n.
ProbabilityMap softmax_probabilities(const Tensor& logits, std::size_t n);

}  // namespace groundseg

#endif  // GROUNDSEG_LAYERS_HPP_
