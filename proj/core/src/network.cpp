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

#include "groundseg/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "byte_io.hpp"
#include "groundseg/error.hpp"

namespace groundseg {
namespace {

LayerSpec conv(std::size_t k, std::size_t in, std::size_t out, std::size_t stride_h = 1) {
  return {LayerKind::kConv, k, k, in, out, Stride{1, stride_h}, Padding::kSameCircularH};
}

LayerSpec deconv(std::size_t k, std::size_t in, std::size_t out, std::size_t stride_h) {
  return {LayerKind::kDeconv, k, k, in, out, Stride{1, stride_h}, Padding::kSameCircularH};
}

LayerSpec relu_layer() { return {}; }

// Conv kernels are (out, in, kh, kw); deconv kernels (in, out, kh, kw), the
// layout of the convolution they are the adjoint of.
Shape4 kernel_shape(const LayerSpec& spec) {
  if (spec.kind == LayerKind::kConv) {
    return {spec.out_channels, spec.in_channels, spec.kernel_h, spec.kernel_w};
  }
  return {spec.in_channels, spec.out_channels, spec.kernel_h, spec.kernel_w};
}

double fan_in(const LayerSpec& spec) {
  double taps = static_cast<double>(spec.in_channels * spec.kernel_h * spec.kernel_w);
  // A deconvolution output receives only 1 / (sv * sh) of the kernel taps.
  if (spec.kind == LayerKind::kDeconv) {
    taps /= static_cast<double>(spec.stride.vertical * spec.stride.horizontal);
  }
  return taps;
}

double uniform_pm1(std::mt19937_64& rng) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

Tensor run_layer(const LayerSpec& spec, const LayerWeights& w, const Tensor& input) {
  switch (spec.kind) {
    case LayerKind::kConv: return conv2d_forward(input, w.kernel, w.bias, spec.stride);
    case LayerKind::kDeconv: return deconv2d_forward(input, w.kernel, w.bias, spec.stride);
    case LayerKind::kRelu: return relu(input);
  }
  throw Error(ErrorKind::kConfig, "unknown layer kind");
}

void check_input(const NetworkSpec& net, const Tensor& input) {
  if (net.layers.empty()) throw Error(ErrorKind::kConfig, "network has no layers");
  if (net.weights.size() != net.layers.size()) {
    throw Error(ErrorKind::kConfig, "network weights do not match its layers");
  }
  const auto& first = net.layers.front();
  if (input.shape().c != first.in_channels) {
    throw Error(ErrorKind::kShape, "input " + input.shape().str() + " needs " +
                                       std::to_string(first.in_channels) + " channels");
  }
}

}  // namespace

std::size_t NetworkSpec::parameter_count() const {
  std::size_t total = 0;
  for (const auto& w : weights) total += w.kernel.size() + w.bias.size();
  return total;
}

std::string_view topology_name(Topology topology) {
  switch (topology) {
    case Topology::kL05Deconv: return "L05_DECONV";
    case Topology::kL04ConvDec: return "L04_CONV_DEC";
    case Topology::kL03DeconvInc: return "L03_DECONV_INC";
    case Topology::kL03DeconvIncMultich: return "L03_DECONV_INC_MULTICH";
  }
  return "UNKNOWN";
}

std::optional<Topology> parse_topology(std::string_view name) {
  for (auto t : all_topologies()) {
    if (topology_name(t) == name) return t;
  }
  return std::nullopt;
}

std::vector<Topology> all_topologies() {
  return {Topology::kL05Deconv, Topology::kL04ConvDec, Topology::kL03DeconvInc,
          Topology::kL03DeconvIncMultich};
}

std::vector<LayerSpec> topology_layers(Topology topology) {
  switch (topology) {
    case Topology::kL05Deconv:
      return {conv(5, 3, 32),  relu_layer(), conv(5, 32, 32, 2), relu_layer(),
              conv(3, 32, 64), relu_layer(), conv(3, 64, 64),    relu_layer(),
              conv(3, 64, 64), relu_layer(), deconv(4, 64, 2, 2)};
    case Topology::kL04ConvDec:
      return {conv(7, 3, 16), relu_layer(), conv(5, 16, 32), relu_layer(),
              conv(3, 32, 32), relu_layer(), conv(3, 32, 2)};
    case Topology::kL03DeconvInc:
      return {conv(3, 3, 16), relu_layer(), conv(5, 16, 24, 2), relu_layer(),
              conv(7, 24, 32), relu_layer(), deconv(4, 32, 2, 2)};
    case Topology::kL03DeconvIncMultich:
      return {conv(3, 3, 64), relu_layer(), conv(5, 64, 96, 2), relu_layer(),
              conv(7, 96, 128), relu_layer(), deconv(4, 128, 2, 2)};
  }
  throw Error(ErrorKind::kConfig, "unknown topology");
}

NetworkSpec build_topology(Topology topology, std::uint64_t rng_seed) {
  NetworkSpec net;
  net.name = std::string(topology_name(topology));
  net.layers = topology_layers(topology);
  std::mt19937_64 rng(rng_seed);
  for (const auto& spec : net.layers) {
    LayerWeights w;
    if (spec.has_weights()) {
      w.kernel = Tensor(kernel_shape(spec));
      const double bound = std::sqrt(3.0 / fan_in(spec));
      for (double& v : w.kernel.data()) v = bound * uniform_pm1(rng);
      w.bias.assign(spec.out_channels, 0.0);
    }
    net.weights.push_back(std::move(w));
  }
  validate_network(net);
  return net;
}

NetworkSpec build_topology(std::string_view name, std::uint64_t rng_seed) {
  const auto topology = parse_topology(name);
  if (!topology) throw Error(ErrorKind::kConfig, "unknown topology '" + std::string(name) + "'");
  return build_topology(*topology, rng_seed);
}

void validate_network(const NetworkSpec& net) {
  if (net.layers.empty()) throw Error(ErrorKind::kConfig, "network has no layers");
  if (net.weights.size() != net.layers.size()) {
    throw Error(ErrorKind::kConfig, "network weights do not match its layers");
  }
  std::size_t channels = net.layers.front().in_channels;
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const auto& spec = net.layers[i];
    if (!spec.has_weights()) continue;
    auto ok = [](std::size_t s) { return s == 1 || s == 2; };
    if (!ok(spec.stride.vertical) || !ok(spec.stride.horizontal) || spec.kernel_h == 0 ||
        spec.kernel_w == 0) {
      throw Error(ErrorKind::kConfig, "layer " + std::to_string(i) + " has an invalid kernel or stride");
    }
    if (spec.in_channels != channels) {
      throw Error(ErrorKind::kConfig, "layer " + std::to_string(i) + " expects " +
                                          std::to_string(spec.in_channels) + " channels, receives " +
                                          std::to_string(channels));
    }
    const auto& w = net.weights[i];
    if (w.kernel.shape() != kernel_shape(spec) || w.bias.size() != spec.out_channels) {
      throw Error(ErrorKind::kConfig, "layer " + std::to_string(i) + " weights have the wrong shape");
    }
    channels = spec.out_channels;
  }
  if (channels != 2) throw Error(ErrorKind::kConfig, "network must end in 2 channels");
}

std::pair<std::size_t, std::size_t> output_spatial_shape(const std::vector<LayerSpec>& layers,
                                                         std::size_t rows, std::size_t cols) {
  for (const auto& spec : layers) {
    if (spec.kind == LayerKind::kConv) {
      if (rows % spec.stride.vertical != 0 || cols % spec.stride.horizontal != 0) {
        throw Error(ErrorKind::kShape, "stride does not divide " + std::to_string(rows) + "x" +
                                           std::to_string(cols));
      }
      rows /= spec.stride.vertical;
      cols /= spec.stride.horizontal;
    } else if (spec.kind == LayerKind::kDeconv) {
      rows *= spec.stride.vertical;
      cols *= spec.stride.horizontal;
    }
  }
  return {rows, cols};
}

Tensor frames_to_tensor(std::span<const DenseFrame* const> frames) {
  if (frames.empty()) throw Error(ErrorKind::kEmptyInput, "no frames to stack");
  const std::size_t rows = frames.front()->rows();
  const std::size_t cols = frames.front()->cols();
  Tensor out({frames.size(), kNumChannels, rows, cols});
  for (std::size_t n = 0; n < frames.size(); ++n) {
    const DenseFrame& f = *frames[n];
    if (!f.normalized()) throw Error(ErrorKind::kState, "network input must be normalized");
    if (f.rows() != rows || f.cols() != cols) throw Error(ErrorKind::kShape, "frames differ in shape");
    std::copy(f.values().begin(), f.values().end(), out.sample(n).begin());
  }
  return out;
}

Tensor forward_logits(const NetworkSpec& net, const Tensor& input) {
  check_input(net, input);
  Tensor x = input;
  for (std::size_t i = 0; i < net.layers.size(); ++i) x = run_layer(net.layers[i], net.weights[i], x);
  return x;
}

ProbabilityMap forward(const NetworkSpec& net, const DenseFrame& frame) {
  const DenseFrame* frames[] = {&frame};
  const Tensor logits = forward_logits(net, frames_to_tensor(frames));
  if (logits.shape().h != frame.rows() || logits.shape().w != frame.cols()) {
    throw Error(ErrorKind::kShape, "network output " + logits.shape().str() +
                                       " does not match its input");
  }
  return softmax_probabilities(logits, 0);
}

LossGradients loss_and_gradients(const NetworkSpec& net, const Tensor& input,
                                 std::span<const LabelGrid> targets,
                                 std::span<const Grid<std::uint8_t>> masks) {
  check_input(net, input);
  const std::size_t depth = net.layers.size();
  std::vector<Tensor> activations;
  activations.reserve(depth + 1);
  activations.push_back(input);
  for (std::size_t i = 0; i < depth; ++i) {
    activations.push_back(run_layer(net.layers[i], net.weights[i], activations.back()));
  }

  SoftmaxResult head = softmax_xent(activations.back(), targets, masks);
  LossGradients out;
  out.loss = head.loss;
  out.probs = std::move(head.probs);
  out.grads.resize(depth);

  Tensor grad = std::move(head.grad_logits);
  for (std::size_t i = depth; i-- > 0;) {
    const auto& spec = net.layers[i];
    const Tensor& layer_input = activations[i];
    switch (spec.kind) {
      case LayerKind::kConv:
      case LayerKind::kDeconv: {
        auto g = spec.kind == LayerKind::kConv
                     ? conv2d_backward(grad, layer_input, net.weights[i].kernel, spec.stride)
                     : deconv2d_backward(grad, layer_input, net.weights[i].kernel, spec.stride);
        out.grads[i].kernel = std::move(g.grad_kernel);
        out.grads[i].bias = std::move(g.grad_bias);
        grad = std::move(g.grad_input);
        break;
      }
      case LayerKind::kRelu:
        grad = relu_backward(grad, layer_input);
        break;
    }
    activations.pop_back();
  }
  out.grad_input = std::move(grad);
  return out;
}

TrainingSample make_training_sample(DenseFrame normalized_frame, LabelGrid target) {
  if (!normalized_frame.normalized()) throw Error(ErrorKind::kState, "training frames must be normalized");
  if (!target.labels.same_shape(normalized_frame.rows(), normalized_frame.cols())) {
    throw Error(ErrorKind::kShape, "label grid does not match frame");
  }
  Grid<std::uint8_t> mask(normalized_frame.rows(), normalized_frame.cols(), 0);
  for (std::size_t k = 0; k < mask.size(); ++k) {
    mask.data()[k] = (normalized_frame.occupancy().data()[k] != 0 && target.valid.data()[k] != 0) ? 1 : 0;
  }
  return {std::move(normalized_frame), std::move(target), std::move(mask)};
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw Error(ErrorKind::kConfig, "learning rate must be positive");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw Error(ErrorKind::kConfig, "momentum must lie in [0, 1)");
  if (batch_size == 0) throw Error(ErrorKind::kConfig, "batch size must be at least 1");
  if (!(lr_decay > 0.0)) throw Error(ErrorKind::kConfig, "lr decay must be positive");
}

TrainResult train(const NetworkSpec& net, std::span<const TrainingSample> dataset,
                  const TrainConfig& cfg, const NetworkSpec* init, const TrainObserver& observer) {
  cfg.validate();
  if (dataset.empty()) throw Error(ErrorKind::kEmptyInput, "training set is empty");
  validate_network(net);

  TrainResult result;
  result.net = net;
  if (init != nullptr) {
    if (init->layers != net.layers) {
      throw Error(ErrorKind::kCorruption, "initial weights are for '" + init->name +
                                              "', which does not match '" + net.name + "'");
    }
    result.net.weights = init->weights;
  }
  NetworkSpec& model = result.net;

  std::vector<LayerWeights> velocity;
  velocity.reserve(model.weights.size());
  for (const auto& w : model.weights) {
    velocity.push_back({Tensor(w.kernel.shape()), std::vector<double>(w.bias.size(), 0.0)});
  }

  std::mt19937_64 rng(cfg.rng_seed);
  std::vector<std::size_t> order(dataset.size());
  std::size_t cursor = order.size();
  auto next_index = [&] {
    if (cursor == order.size()) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
      cursor = 0;
    }
    return order[cursor++];
  };

  const std::size_t decay_every = cfg.lr_decay_every > 0 ? cfg.lr_decay_every
                                                         : std::max<std::size_t>(1, cfg.iterations / 2);
  std::vector<const DenseFrame*> frames(cfg.batch_size);
  std::vector<LabelGrid> targets(cfg.batch_size);
  std::vector<Grid<std::uint8_t>> masks(cfg.batch_size);
  result.loss_history.reserve(cfg.iterations);

  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    for (std::size_t b = 0; b < cfg.batch_size; ++b) {
      const auto& sample = dataset[next_index()];
      frames[b] = &sample.frame;
      targets[b] = sample.target;
      masks[b] = sample.mask;
    }
    const auto step = loss_and_gradients(model, frames_to_tensor(frames), targets, masks);
    if (!std::isfinite(step.loss)) {
      throw Error(ErrorKind::kDivergence, "loss became non-finite at iteration " + std::to_string(it));
    }
    const double lr = cfg.learning_rate * std::pow(cfg.lr_decay, static_cast<double>(it / decay_every));
    for (std::size_t i = 0; i < model.weights.size(); ++i) {
      auto& w = model.weights[i];
      auto& v = velocity[i];
      const auto& g = step.grads[i];
      auto wk = w.kernel.data();
      auto vk = v.kernel.data();
      auto gk = g.kernel.data();
      for (std::size_t k = 0; k < wk.size(); ++k) {
        vk[k] = cfg.momentum * vk[k] - lr * gk[k];
        wk[k] += vk[k];
      }
      for (std::size_t k = 0; k < w.bias.size(); ++k) {
        v.bias[k] = cfg.momentum * v.bias[k] - lr * g.bias[k];
        w.bias[k] += v.bias[k];
      }
    }
    result.loss_history.push_back(step.loss);
    if (observer) observer(it, step.loss);
  }
  return result;
}

double pixel_accuracy(const NetworkSpec& net, std::span<const TrainingSample> dataset) {
  std::size_t correct = 0;
  std::size_t counted = 0;
  for (const auto& sample : dataset) {
    const auto probs = forward(net, sample.frame);
    for (std::size_t k = 0; k < sample.mask.size(); ++k) {
      if (sample.mask.data()[k] == 0) continue;
      const bool predicted_ground = probs.p_ground.data()[k] >= 0.5;
      const bool is_ground = sample.target.labels.data()[k] == Label::kGround;
      correct += predicted_ground == is_ground ? 1 : 0;
      ++counted;
    }
  }
  return counted == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(counted);
}

std::vector<std::byte> encode_model(const NetworkSpec& net) {
  validate_network(net);
  detail::ByteWriter out;
  out.put_ascii("GSM1");
  out.put(kModelFileVersion);
  out.put(static_cast<std::uint16_t>(net.name.size()));
  out.put_ascii(net.name);
  out.put(static_cast<std::uint16_t>(net.layers.size()));
  for (const auto& spec : net.layers) {
    out.put(static_cast<std::uint8_t>(spec.kind));
    out.put(static_cast<std::uint16_t>(spec.kernel_h));
    out.put(static_cast<std::uint16_t>(spec.kernel_w));
    out.put(static_cast<std::uint16_t>(spec.in_channels));
    out.put(static_cast<std::uint16_t>(spec.out_channels));
    out.put(static_cast<std::uint8_t>(spec.stride.vertical));
    out.put(static_cast<std::uint8_t>(spec.stride.horizontal));
  }
  for (const auto& w : net.weights) {
    for (double v : w.kernel.data()) out.put(v);
    for (double v : w.bias) out.put(v);
  }
  return out.release();
}

NetworkSpec decode_model(std::span<const std::byte> bytes) {
  detail::ByteReader in(bytes);
  if (bytes.size() < 4 || in.get_ascii(4) != "GSM1") throw Error(ErrorKind::kFormat, "missing GSM1 magic");
  const auto version = in.get<std::uint32_t>();
  if (version != kModelFileVersion) {
    throw Error(ErrorKind::kFormat, "unsupported model version " + std::to_string(version));
  }
  NetworkSpec net;
  net.name = in.get_ascii(in.get<std::uint16_t>());
  const auto layer_count = in.get<std::uint16_t>();
  for (std::uint16_t i = 0; i < layer_count; ++i) {
    LayerSpec spec;
    const auto kind = in.get<std::uint8_t>();
    if (kind > static_cast<std::uint8_t>(LayerKind::kRelu)) {
      throw Error(ErrorKind::kFormat, "unknown layer kind " + std::to_string(kind));
    }
    spec.kind = static_cast<LayerKind>(kind);
    spec.kernel_h = in.get<std::uint16_t>();
    spec.kernel_w = in.get<std::uint16_t>();
    spec.in_channels = in.get<std::uint16_t>();
    spec.out_channels = in.get<std::uint16_t>();
    spec.stride.vertical = in.get<std::uint8_t>();
    spec.stride.horizontal = in.get<std::uint8_t>();
    net.layers.push_back(spec);
  }

  const auto topology = parse_topology(net.name);
  if (!topology) throw Error(ErrorKind::kFormat, "unknown topology '" + net.name + "'");
  if (net.layers != topology_layers(*topology)) {
    throw Error(ErrorKind::kCorruption, "layer table does not match topology " + net.name);
  }

  for (const auto& spec : net.layers) {
    LayerWeights w;
    if (spec.has_weights()) {
      w.kernel = Tensor(kernel_shape(spec));
      for (double& v : w.kernel.data()) v = in.get<double>();
      w.bias.resize(spec.out_channels);
      for (double& v : w.bias) v = in.get<double>();
    }
    net.weights.push_back(std::move(w));
  }
  if (in.remaining() != 0) {
    throw Error(ErrorKind::kFormat, std::to_string(in.remaining()) + " trailing bytes after weights");
  }
  return net;
}

void save_model(const NetworkSpec& net, const std::filesystem::path& path) {
  detail::write_file_atomic(path, encode_model(net));
}

NetworkSpec load_model(const std::filesystem::path& path) {
  auto bytes = detail::read_file(path);
  try {
    return decode_model(bytes);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

NetworkSpec load_model(const std::filesystem::path& path, Topology expected) {
  auto net = load_model(path);
  if (net.name != topology_name(expected)) {
    throw Error(ErrorKind::kCorruption, path.string() + " holds " + net.name + ", expected " +
                                            std::string(topology_name(expected)));
  }
  return net;
}

}  // namespace groundseg
