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

#ifndef GROUNDSEG_NETWORK_HPP_
#define GROUNDSEG_NETWORK_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "groundseg/encoder.hpp"
#include "groundseg/grid.hpp"
#include "groundseg/layers.hpp"
#include "groundseg/tensor.hpp"

namespace groundseg {

enum class LayerKind : std::uint8_t { kConv = 0, kDeconv = 1, kRelu = 2 };

/// Circular along columns, zero along rows. The only scheme supported.
enum class Padding : std::uint8_t { kSameCircularH = 0 };

struct LayerSpec {
  LayerKind kind = LayerKind::kRelu;
  std::size_t kernel_h = 0;
  std::size_t kernel_w = 0;
  std::size_t in_channels = 0;
  std::size_t out_channels = 0;
  Stride stride;
  Padding padding = Padding::kSameCircularH;

  bool has_weights() const noexcept { return kind != LayerKind::kRelu; }
  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

/// Kernel and bias of one layer; both empty for ReLU.
struct LayerWeights {
  Tensor kernel;
  std::vector<double> bias;
  friend bool operator==(const LayerWeights&, const LayerWeights&) = default;
};

struct NetworkSpec {
  std::string name;
  std::vector<LayerSpec> layers;
  std::vector<LayerWeights> weights;  // parallel to layers

  std::size_t parameter_count() const;
  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

enum class Topology { kL05Deconv, kL04ConvDec, kL03DeconvInc, kL03DeconvIncMultich };

std::string_view topology_name(Topology topology);
std::optional<Topology> parse_topology(std::string_view name);
std::vector<Topology> all_topologies();

/// Layer table of a topology, without weights.
std::vector<LayerSpec> topology_layers(Topology topology);

/// Seeded uniform(-a, a) kernels with a = sqrt(3 / fan_in); zero biases.
NetworkSpec build_topology(Topology topology, std::uint64_t rng_seed);
/// Throws kConfig for unknown names.
NetworkSpec build_topology(std::string_view name, std::uint64_t rng_seed);

/// Throws kConfig unless adjacent layers agree on channel counts and the
/// network ends in two channels.
void validate_network(const NetworkSpec& net);

/// Spatial shape produced for an input of the given shape; throws kShape
/// when a stride does not divide its input.
std::pair<std::size_t, std::size_t> output_spatial_shape(const std::vector<LayerSpec>& layers,
                                                         std::size_t rows, std::size_t cols);

/// Stacks normalized frames into an (n, 3, rows, cols) tensor.
Tensor frames_to_tensor(std::span<const DenseFrame* const> frames);

/// Raw two-channel logits.
Tensor forward_logits(const NetworkSpec& net, const Tensor& input);

/// Ground probability per cell. Throws kState for an unnormalized frame.
ProbabilityMap forward(const NetworkSpec& net, const DenseFrame& frame);

struct LossGradients {
  double loss = 0.0;
  std::vector<LayerWeights> grads;  // parallel to net.weights
  Tensor grad_input;
  std::vector<ProbabilityMap> probs;
};

/// Full forward and backward pass on one mini-batch.
LossGradients loss_and_gradients(const NetworkSpec& net, const Tensor& input,
                                 std::span<const LabelGrid> targets,
                                 std::span<const Grid<std::uint8_t>> masks);

struct TrainingSample {
  DenseFrame frame;  // normalized
  LabelGrid target;
  Grid<std::uint8_t> mask;  // occupied and labeled
};

/// Pairs a normalized frame with its cell labels; the loss mask keeps only
/// occupied, labeled cells.
TrainingSample make_training_sample(DenseFrame normalized_frame, LabelGrid target);

struct TrainConfig {
  double learning_rate = 0.01;
  double momentum = 0.9;
  std::size_t batch_size = 4;
  std::size_t iterations = 1000;
  double lr_decay = 0.1;
  /// Iterations between decays; 0 means half of `iterations`.
  std::size_t lr_decay_every = 0;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

struct TrainResult {
  NetworkSpec net;
  std::vector<double> loss_history;
};

/// Called after every iteration with (iteration, mean batch loss).
using TrainObserver = std::function<void(std::size_t, double)>;

/// Mini-batch SGD with momentum over a seeded shuffle of `dataset`. Starts
/// from `init` when given (its layer table must equal `net`'s).
TrainResult train(const NetworkSpec& net, std::span<const TrainingSample> dataset,
                  const TrainConfig& cfg, const NetworkSpec* init = nullptr,
                  const TrainObserver& observer = {});

/// Fraction of masked-in cells whose argmax matches the target.
double pixel_accuracy(const NetworkSpec& net, std::span<const TrainingSample> dataset);

// `.gsm`: "GSM1", u32 version, u16 name length, name, u16 layer count, per
// layer (kind u8, kernel h/w u16, channels in/out u16, stride v/h u8), then
// every layer's kernel and bias as float64.
inline constexpr std::uint32_t kModelFileVersion = 1;

std::vector<std::byte> encode_model(const NetworkSpec& net);
NetworkSpec decode_model(std::span<const std::byte> bytes);
void save_model(const NetworkSpec& net, const std::filesystem::path& path);
NetworkSpec load_model(const std::filesystem::path& path);
/// As load_model, and throws kCorruption unless the file holds `expected`.
NetworkSpec load_model(const std::filesystem::path& path, Topology expected);

}  // namespace groundseg

#endif  // GROUNDSEG_NETWORK_HPP_
