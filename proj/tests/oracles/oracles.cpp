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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>

namespace groundseg::oracles {
namespace {

std::size_t wrap(std::ptrdiff_t x, std::size_t w) {
  const auto ww = static_cast<std::ptrdiff_t>(w);
  return static_cast<std::size_t>(((x % ww) + ww) % ww);
}

Tensor random_tensor(Shape4 shape, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Tensor t(shape);
  for (double& v : t.data()) v = dist(rng);
  return t;
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

std::size_t pick(std::mt19937_64& rng, std::initializer_list<std::size_t> options) {
  return *(options.begin() + static_cast<std::ptrdiff_t>(rng() % options.size()));
}

Tensor vector_as_tensor(const std::vector<double>& v) {
  Tensor t(Shape4{1, 1, 1, v.size()});
  std::copy(v.begin(), v.end(), t.data().begin());
  return t;
}

std::vector<double> tensor_as_vector(const Tensor& t) { return {t.data().begin(), t.data().end()}; }

void record(GradientReport& report, double analytic, double numeric, const std::string& where) {
  const double err = relative_error(analytic, numeric);
  ++report.entries;
  if (err > report.worst || report.worst_where.empty()) {
    if (err >= report.worst) {
      report.worst = err;
      std::ostringstream msg;
      msg << where << " analytic=" << analytic << " numeric=" << numeric;
      report.worst_where = msg.str();
    }
  }
}

// Checks every coordinate of `x` against the analytic gradient `g` of `f`.
void check_all(GradientReport& report, const std::function<double(const Tensor&)>& f, const Tensor& x,
               const Tensor& g, double eps, const std::string& what) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    record(report, g.data()[k], central_difference(f, x, k, eps), what + "[" + std::to_string(k) + "]");
  }
}

// Forward pass through `net` that also records which ReLU inputs are positive.
Tensor forward_with_signs(const NetworkSpec& net, const Tensor& input, std::vector<bool>* signs) {
  Tensor x = input;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const auto& spec = net.layers[l];
    const auto& w = net.weights[l];
    switch (spec.kind) {
      case LayerKind::kConv: x = conv2d_forward(x, w.kernel, w.bias, spec.stride); break;
      case LayerKind::kDeconv: x = deconv2d_forward(x, w.kernel, w.bias, spec.stride); break;
      case LayerKind::kRelu:
        if (signs != nullptr) {
          for (double v : x.data()) signs->push_back(v > 0.0);
        }
        x = relu(x);
        break;
    }
  }
  return x;
}

}  // namespace

Tensor naive_conv2d(const Tensor& input, const Tensor& kernel, std::span<const double> bias, Stride stride) {
  const auto& in = input.shape();
  const auto& k = kernel.shape();
  const std::size_t oh = in.h / stride.vertical;
  const std::size_t ow = in.w / stride.horizontal;
  const auto pv = static_cast<std::ptrdiff_t>((k.h - 1) / 2);
  const auto ph = static_cast<std::ptrdiff_t>((k.w - 1) / 2);
  Tensor out(Shape4{in.n, k.n, oh, ow});
  for (std::size_t n = 0; n < in.n; ++n) {
    for (std::size_t o = 0; o < k.n; ++o) {
      for (std::size_t y = 0; y < oh; ++y) {
        for (std::size_t x = 0; x < ow; ++x) {
          double acc = bias.empty() ? 0.0 : bias[o];
          for (std::size_t c = 0; c < in.c; ++c) {
            for (std::size_t i = 0; i < k.h; ++i) {
              const auto sy = static_cast<std::ptrdiff_t>(y * stride.vertical + i) - pv;
              if (sy < 0 || sy >= static_cast<std::ptrdiff_t>(in.h)) continue;
              for (std::size_t j = 0; j < k.w; ++j) {
                const std::size_t sx = wrap(static_cast<std::ptrdiff_t>(x * stride.horizontal + j) - ph, in.w);
                acc += kernel(o, c, i, j) * input(n, c, static_cast<std::size_t>(sy), sx);
              }
            }
          }
          out(n, o, y, x) = acc;
        }
      }
    }
  }
  return out;
}

Tensor naive_deconv2d(const Tensor& input, const Tensor& kernel, std::span<const double> bias, Stride stride) {
  const auto& in = input.shape();
  const auto& k = kernel.shape();  // (in, out, kh, kw)
  const std::size_t oh = in.h * stride.vertical;
  const std::size_t ow = in.w * stride.horizontal;
  const auto pv = static_cast<std::ptrdiff_t>((k.h - 1) / 2);
  const auto ph = static_cast<std::ptrdiff_t>((k.w - 1) / 2);
  Tensor out(Shape4{in.n, k.c, oh, ow});
  for (std::size_t n = 0; n < in.n; ++n) {
    for (std::size_t b = 0; b < k.c; ++b) {
      for (std::size_t y = 0; y < oh; ++y) {
        for (std::size_t x = 0; x < ow; ++x) out(n, b, y, x) = bias.empty() ? 0.0 : bias[b];
      }
    }
    for (std::size_t a = 0; a < in.c; ++a) {
      for (std::size_t y = 0; y < in.h; ++y) {
        for (std::size_t x = 0; x < in.w; ++x) {
          const double v = input(n, a, y, x);
          for (std::size_t b = 0; b < k.c; ++b) {
            for (std::size_t i = 0; i < k.h; ++i) {
              const auto ty = static_cast<std::ptrdiff_t>(y * stride.vertical + i) - pv;
              if (ty < 0 || ty >= static_cast<std::ptrdiff_t>(oh)) continue;
              for (std::size_t j = 0; j < k.w; ++j) {
                const std::size_t tx = wrap(static_cast<std::ptrdiff_t>(x * stride.horizontal + j) - ph, ow);
                out(n, b, static_cast<std::size_t>(ty), tx) += kernel(a, b, i, j) * v;
              }
            }
          }
        }
      }
    }
  }
  return out;
}

double inner(const Tensor& a, const Tensor& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a.data()[k] * b.data()[k];
  return acc;
}

double relative_error(double analytic, double numeric, double floor) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), floor});
}

double central_difference(const std::function<double(const Tensor&)>& f, const Tensor& x, std::size_t k,
                          double eps) {
  Tensor plus = x;
  Tensor minus = x;
  plus.data()[k] += eps;
  minus.data()[k] -= eps;
  return (f(plus) - f(minus)) / (2.0 * eps);
}

GradientReport check_conv_gradients(std::mt19937_64& rng, int draws) {
  GradientReport report;
  constexpr double kEps = 1e-3;
  for (int d = 0; d < draws; ++d) {
    const Stride stride{pick(rng, {1, 2}), pick(rng, {1, 2})};
    const std::size_t out_c = pick(rng, {1, 2, 3, 4});
    const Tensor x = random_tensor({2, 3, 6, 8}, rng);
    const Tensor kernel = random_tensor({out_c, 3, pick(rng, {1, 2, 3, 5}), pick(rng, {1, 3, 4, 5})}, rng);
    const auto bias = random_vector(out_c, rng);
    const Tensor probe = random_tensor({2, out_c, 6 / stride.vertical, 8 / stride.horizontal}, rng);
    const auto g = conv2d_backward(probe, x, kernel, stride);

    check_all(report, [&](const Tensor& t) { return inner(conv2d_forward(t, kernel, bias, stride), probe); },
              x, g.grad_input, kEps, "conv input");
    check_all(report, [&](const Tensor& t) { return inner(conv2d_forward(x, t, bias, stride), probe); },
              kernel, g.grad_kernel, kEps, "conv kernel");
    check_all(report,
              [&](const Tensor& t) { return inner(conv2d_forward(x, kernel, tensor_as_vector(t), stride), probe); },
              vector_as_tensor(bias), vector_as_tensor(g.grad_bias), kEps, "conv bias");
  }
  return report;
}

GradientReport check_deconv_gradients(std::mt19937_64& rng, int draws) {
  GradientReport report;
  constexpr double kEps = 1e-3;
  for (int d = 0; d < draws; ++d) {
    const Stride stride{pick(rng, {1, 2}), pick(rng, {1, 2})};
    const std::size_t in_c = pick(rng, {1, 2, 3});
    const Tensor x = random_tensor({2, in_c, 6 / stride.vertical, 8 / stride.horizontal}, rng);
    const Tensor kernel = random_tensor({in_c, 3, pick(rng, {1, 2, 3, 4}), pick(rng, {1, 3, 4, 5})}, rng);
    const auto bias = random_vector(3, rng);
    const Tensor probe = random_tensor({2, 3, 6, 8}, rng);
    const auto g = deconv2d_backward(probe, x, kernel, stride);

    check_all(report, [&](const Tensor& t) { return inner(deconv2d_forward(t, kernel, bias, stride), probe); },
              x, g.grad_input, kEps, "deconv input");
    check_all(report, [&](const Tensor& t) { return inner(deconv2d_forward(x, t, bias, stride), probe); },
              kernel, g.grad_kernel, kEps, "deconv kernel");
    check_all(report,
              [&](const Tensor& t) { return inner(deconv2d_forward(x, kernel, tensor_as_vector(t), stride), probe); },
              vector_as_tensor(bias), vector_as_tensor(g.grad_bias), kEps, "deconv bias");
  }
  return report;
}

GradientReport check_relu_gradients(std::mt19937_64& rng, int draws) {
  GradientReport report;
  constexpr double kEps = 1e-3;
  std::uniform_real_distribution<double> magnitude(0.01, 1.0);
  for (int d = 0; d < draws; ++d) {
    Tensor x({2, 3, 6, 8});
    // Keep every entry away from the kink so the difference quotient is exact.
    for (double& v : x.data()) v = (rng() & 1U) ? magnitude(rng) : -magnitude(rng);
    const Tensor probe = random_tensor(x.shape(), rng);
    check_all(report, [&](const Tensor& t) { return inner(relu(t), probe); }, x, relu_backward(probe, x), kEps,
              "relu input");
  }
  return report;
}

GradientReport check_softmax_gradients(std::mt19937_64& rng, int draws) {
  GradientReport report;
  constexpr double kEps = 1e-3;
  for (int d = 0; d < draws; ++d) {
    const std::size_t n = pick(rng, {1, 2});
    const Tensor logits = random_tensor({n, 2, 4, 6}, rng, 3.0);
    std::vector<LabelGrid> targets(n);
    std::vector<Grid<std::uint8_t>> masks(n);
    for (std::size_t b = 0; b < n; ++b) {
      targets[b].labels = Grid<Label>(4, 6, Label::kNonGround);
      targets[b].valid = Grid<std::uint8_t>(4, 6, 1);
      masks[b] = Grid<std::uint8_t>(4, 6, 0);
      for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 6; ++c) {
          targets[b].labels(r, c) = (rng() & 1U) ? Label::kGround : Label::kNonGround;
          masks[b](r, c) = (rng() % 4) != 0 ? 1 : 0;
        }
      }
      masks[b](0, 0) = 1;
    }
    const auto result = softmax_xent(logits, targets, masks);
    check_all(report, [&](const Tensor& t) { return softmax_xent(t, targets, masks).loss; }, logits,
              result.grad_logits, kEps, "softmax logits");
  }
  return report;
}

GradientReport check_network_gradients(Topology topology, std::mt19937_64& rng, std::size_t weights_per_layer) {
  GradientReport report;
  NetworkSpec net = build_topology(topology, rng());
  std::uniform_real_distribution<double> small(-0.1, 0.1);
  for (auto& w : net.weights) {
    for (double& b : w.bias) b = small(rng);
  }
  const Tensor input = random_tensor({2, 3, 6, 8}, rng);
  std::vector<LabelGrid> targets(2);
  std::vector<Grid<std::uint8_t>> masks(2);
  for (std::size_t b = 0; b < 2; ++b) {
    targets[b].labels = Grid<Label>(6, 8, Label::kNonGround);
    targets[b].valid = Grid<std::uint8_t>(6, 8, 1);
    masks[b] = Grid<std::uint8_t>(6, 8, 1);
    for (std::size_t r = 0; r < 6; ++r) {
      for (std::size_t c = 0; c < 8; ++c) {
        targets[b].labels(r, c) = (rng() & 1U) ? Label::kGround : Label::kNonGround;
        masks[b](r, c) = (rng() % 5) != 0 ? 1 : 0;
      }
    }
  }
  const auto grads = loss_and_gradients(net, input, targets, masks);

  auto loss_of = [&](const NetworkSpec& candidate, const Tensor& x) {
    return softmax_xent(forward_with_signs(candidate, x, nullptr), targets, masks).loss;
  };
  auto signs_of = [&](const NetworkSpec& candidate, const Tensor& x) {
    std::vector<bool> signs;
    forward_with_signs(candidate, x, &signs);
    return signs;
  };

  // Tries shrinking steps until the perturbation stays on one side of
  // every ReLU kink; returns false if none does.
  auto difference = [&](const std::function<void(NetworkSpec&, Tensor&, double)>& nudge, double* out) {
    for (double eps : {1e-5, 1e-6, 1e-7}) {
      NetworkSpec np = net, nm = net;
      Tensor xp = input, xm = input;
      nudge(np, xp, eps);
      nudge(nm, xm, -eps);
      if (signs_of(np, xp) != signs_of(nm, xm)) continue;
      *out = (loss_of(np, xp) - loss_of(nm, xm)) / (2.0 * eps);
      return true;
    }
    return false;
  };

  const std::string name(topology_name(topology));
  for (std::size_t k = 0; k < input.size(); ++k) {
    double numeric = 0.0;
    if (!difference([k](NetworkSpec&, Tensor& x, double e) { x.data()[k] += e; }, &numeric)) continue;
    record(report, grads.grad_input.data()[k], numeric, name + " input[" + std::to_string(k) + "]");
  }
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    if (!net.layers[l].has_weights()) continue;
    const std::size_t kernel_size = net.weights[l].kernel.size();
    std::size_t checked = 0;
    for (std::size_t attempt = 0; attempt < 4 * weights_per_layer && checked < weights_per_layer; ++attempt) {
      const std::size_t k = rng() % kernel_size;
      double numeric = 0.0;
      if (!difference([l, k](NetworkSpec& n, Tensor&, double e) { n.weights[l].kernel.data()[k] += e; },
                      &numeric)) {
        continue;
      }
      record(report, grads.grads[l].kernel.data()[k], numeric,
             name + " layer " + std::to_string(l) + " kernel[" + std::to_string(k) + "]");
      ++checked;
    }
    const std::size_t bias_size = net.weights[l].bias.size();
    for (std::size_t s = 0; s < std::min<std::size_t>(bias_size, 4); ++s) {
      const std::size_t k = rng() % bias_size;
      double numeric = 0.0;
      if (!difference([l, k](NetworkSpec& n, Tensor&, double e) { n.weights[l].bias[k] += e; }, &numeric)) {
        continue;
      }
      record(report, grads.grads[l].bias[k], numeric,
             name + " layer " + std::to_string(l) + " bias[" + std::to_string(k) + "]");
    }
  }
  return report;
}

double worst_adjoint_gap(std::mt19937_64& rng, int draws) {
  double worst = 0.0;
  for (int d = 0; d < draws; ++d) {
    const Stride stride{pick(rng, {1, 2}), pick(rng, {1, 2})};
    const std::size_t big_c = pick(rng, {1, 2, 3, 4});
    const std::size_t small_c = pick(rng, {1, 2, 3, 5});
    const std::size_t n = pick(rng, {1, 2});
    const std::size_t small_h = pick(rng, {2, 3, 5, 8});
    const std::size_t small_w = pick(rng, {3, 4, 7, 12});
    const Tensor kernel = random_tensor({small_c, big_c, pick(rng, {1, 2, 3, 4, 5}), pick(rng, {1, 2, 3, 4, 5})}, rng);
    // Conv uses the same taps with roles of in/out swapped: (out=small, in=big).
    Tensor conv_kernel({small_c, big_c, kernel.shape().h, kernel.shape().w});
    for (std::size_t a = 0; a < small_c; ++a) {
      for (std::size_t b = 0; b < big_c; ++b) {
        for (std::size_t i = 0; i < kernel.shape().h; ++i) {
          for (std::size_t j = 0; j < kernel.shape().w; ++j) conv_kernel(a, b, i, j) = kernel(a, b, i, j);
        }
      }
    }
    const Tensor x = random_tensor({n, small_c, small_h, small_w}, rng);
    const Tensor y = random_tensor({n, big_c, small_h * stride.vertical, small_w * stride.horizontal}, rng);
    const double lhs = inner(deconv2d_forward(x, kernel, {}, stride), y);
    const double rhs = inner(x, conv2d_forward(y, conv_kernel, {}, stride));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

RandomRing random_ring(std::mt19937_64& rng) {
  RandomRing ring;
  const std::size_t n = 1 + rng() % 60;
  std::uniform_real_distribution<double> step(-0.05, 0.05);
  double h = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    h += step(rng);
    ring.heights.push_back(rng() % 10 == 0 ? h + 0.5 : h);
    ring.occupied.push_back(rng() % 8 != 0);
  }
  ring.seed = rng() % n;
  ring.occupied[ring.seed] = 1;
  return ring;
}

std::vector<std::size_t> brute_force_flood(const std::vector<double>& heights,
                                           const std::vector<std::uint8_t>& occupied, std::size_t seed,
                                           double t1, double t2) {
  const std::size_t n = heights.size();
  std::set<std::size_t> flooded{seed};
  const double h_seed = heights[seed];
  for (int direction : {+1, -1}) {
    double prev = h_seed;
    for (std::size_t step = 1; step < n; ++step) {
      const std::size_t cell =
          wrap(static_cast<std::ptrdiff_t>(seed) + direction * static_cast<std::ptrdiff_t>(step), n);
      if (flooded.count(cell) != 0) break;  // met the other walk
      if (occupied[cell] == 0) break;
      const double h = heights[cell];
      if (std::abs(h - prev) > t1 || std::abs(h - h_seed) > t2) break;
      flooded.insert(cell);
      prev = h;
    }
  }
  return {flooded.begin(), flooded.end()};
}

BruteForceMetrics brute_force_metrics(const std::vector<double>& scores, const std::vector<std::uint8_t>& truth) {
  std::set<double> thresholds(scores.begin(), scores.end());
  thresholds.insert(0.0);
  thresholds.insert(1.0);
  std::size_t positives = 0;
  for (auto t : truth) positives += t;

  // Precision at the most selective threshold reaching each recall level.
  std::map<double, double> precision_at_recall;
  BruteForceMetrics out;
  for (auto it = thresholds.rbegin(); it != thresholds.rend(); ++it) {
    std::size_t tp = 0;
    std::size_t fp = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] >= *it) (truth[i] != 0 ? tp : fp) += 1;
    }
    const double precision = (tp + fp) == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall = static_cast<double>(tp) / static_cast<double>(positives);
    precision_at_recall.emplace(recall, precision);  // first insert wins: highest threshold
    if (precision + recall > 0.0) out.best_f = std::max(out.best_f, 2.0 * precision * recall / (precision + recall));
  }
  double previous = 0.0;
  for (const auto& [recall, precision] : precision_at_recall) {
    out.average_precision += (recall - previous) * precision;
    previous = recall;
  }
  return out;
}

PointCloud random_cloud(std::mt19937_64& rng, const EncoderConfig& cfg, std::size_t points) {
  std::uniform_real_distribution<double> azimuth(-180.0, 180.0);
  std::uniform_real_distribution<double> range(0.5, 80.0);
  std::uniform_real_distribution<double> up(-3.0, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PointCloud cloud;
  cloud.num_rings = cfg.num_rings;
  for (std::size_t k = 0; k < points; ++k) {
    Point p;
    if (rng() % 50 == 0) {
      p.forward = 0.0F;  // degenerate: no azimuth
      p.left = 0.0F;
    } else {
      const double a = azimuth(rng) * std::numbers::pi / 180.0;
      const double r = range(rng);
      p.forward = static_cast<float>(r * std::cos(a));
      p.left = static_cast<float>(r * std::sin(a));
    }
    p.up = static_cast<float>(up(rng));
    p.intensity = static_cast<float>(unit(rng));
    p.ring = static_cast<std::uint32_t>(rng() % cfg.num_rings);
    cloud.points.push_back(p);
  }
  return cloud;
}

Check check_partition(const PointCloud& cloud, const EncoderConfig& cfg) {
  Check check;
  const BinGrid grid = bin_points(cloud, cfg);
  std::vector<int> seen(cloud.size(), 0);
  std::size_t total = 0;
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      for (auto idx : grid.cell(r, c)) {
        ++seen[idx];
        ++total;
        if (cloud.points[idx].ring != r) check.fail("point " + std::to_string(idx) + " in wrong ring");
      }
    }
  }
  std::size_t degenerate = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const bool deg = cloud.points[i].forward == 0.0F && cloud.points[i].left == 0.0F;
    degenerate += deg ? 1 : 0;
    if (seen[i] != (deg ? 0 : 1)) check.fail("point " + std::to_string(i) + " binned " + std::to_string(seen[i]) + " times");
  }
  if (total + grid.skipped_count() != cloud.size()) check.fail("cell sizes plus skipped != point count");
  if (grid.skipped_count() != degenerate) check.fail("skipped count differs from degenerate count");
  return check;
}

Check check_bin_means(const PointCloud& cloud, const EncoderConfig& cfg) {
  Check check;
  const std::size_t cols = cfg.num_columns();
  struct Sum {
    double up = 0, depth = 0, intensity = 0;
    std::size_t count = 0;
  };
  std::map<std::pair<std::size_t, std::size_t>, Sum> sums;
  for (const auto& p : cloud.points) {
    if (p.forward == 0.0F && p.left == 0.0F) continue;
    const double deg = std::atan2(static_cast<double>(p.left), static_cast<double>(p.forward)) * 180.0 / std::numbers::pi;
    const std::size_t col = static_cast<std::size_t>(std::floor((deg + 180.0) / cfg.bin_width_deg)) % cols;
    auto& s = sums[{p.ring, col}];
    s.up += p.up;
    s.depth += std::hypot(static_cast<double>(p.forward), static_cast<double>(p.left));
    s.intensity += p.intensity;
    ++s.count;
  }
  const auto encoded = encode_frame(cloud, cfg);
  const auto& frame = encoded.frame;
  std::size_t occupied = 0;
  for (std::size_t r = 0; r < frame.rows(); ++r) {
    for (std::size_t c = 0; c < frame.cols(); ++c) occupied += frame.occupied(r, c) ? 1 : 0;
  }
  if (occupied != sums.size()) check.fail("occupied cell count differs from brute-force bins");
  for (const auto& [cell, s] : sums) {
    const auto [r, c] = cell;
    if (!frame.occupied(r, c)) {
      check.fail("cell (" + std::to_string(r) + "," + std::to_string(c) + ") should be occupied");
      continue;
    }
    const double n = static_cast<double>(s.count);
    if (std::abs(frame.at(kHeight, r, c) - s.up / n) > 1e-6 || std::abs(frame.at(kDepth, r, c) - s.depth / n) > 1e-6 ||
        std::abs(frame.at(kIntensity, r, c) - s.intensity / n) > 1e-6) {
      check.fail("mean mismatch at (" + std::to_string(r) + "," + std::to_string(c) + ")");
    }
  }
  return check;
}

Check check_interpolation_idempotent(const PointCloud& cloud, const EncoderConfig& cfg) {
  Check check;
  const auto once = encode_frame(cloud, cfg).frame;
  if (!(interpolate_empty(once) == once)) check.fail("interpolating an interpolated frame changed it");
  return check;
}

Check check_normalization_invertible(const PointCloud& cloud, const EncoderConfig& cfg) {
  Check check;
  const auto raw = encode_frame(cloud, cfg).frame;
  const auto norm = normalize(raw, cfg);
  for (std::size_t r = 0; r < raw.rows(); ++r) {
    for (std::size_t c = 0; c < raw.cols(); ++c) {
      if (!raw.occupied(r, c)) continue;
      if (std::abs(std::exp(norm.at(kDepth, r, c)) - raw.at(kDepth, r, c)) > 1e-6) check.fail("depth not recovered");
      if (std::abs(norm.at(kHeight, r, c) * cfg.height_norm - raw.at(kHeight, r, c)) > 1e-9) {
        check.fail("height not recovered");
      }
    }
  }
  return check;
}

Check check_rotation_equivariance(std::mt19937_64& rng, const EncoderConfig& cfg) {
  Check check;
  const std::size_t cols = cfg.num_columns();
  const std::size_t k = rng() % cols;
  std::uniform_real_distribution<double> range(1.0, 8.0);
  std::uniform_real_distribution<double> up(-2.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PointCloud original;
  PointCloud rotated;
  original.num_rings = rotated.num_rings = cfg.num_rings;
  for (std::uint32_t r = 0; r < cfg.num_rings; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (rng() % 3 == 0) continue;  // leave holes for interpolation
      const double center = -180.0 + (static_cast<double>(c) + 0.5) * cfg.bin_width_deg;
      const double d = range(rng);
      const auto h = static_cast<float>(up(rng));
      const auto i = static_cast<float>(unit(rng));
      for (auto [cloud, az] : {std::pair{&original, center}, std::pair{&rotated, center + static_cast<double>(k) * cfg.bin_width_deg}}) {
        const double a = az * std::numbers::pi / 180.0;
        cloud->points.push_back(Point{static_cast<float>(d * std::cos(a)), static_cast<float>(d * std::sin(a)), h, i, r});
      }
    }
  }
  const auto a = encode_frame(original, cfg).frame;
  const auto b = encode_frame(rotated, cfg).frame;
  for (std::size_t ch = 0; ch < kNumChannels; ++ch) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const std::size_t shifted = (c + k) % cols;
        if (std::abs(a.at(ch, r, c) - b.at(ch, r, shifted)) > 1e-6 || a.occupied(r, c) != b.occupied(r, shifted)) {
          check.fail("shift by " + std::to_string(k) + " broken at channel " + std::to_string(ch) + " cell (" +
                     std::to_string(r) + "," + std::to_string(c) + ")");
        }
      }
    }
  }
  return check;
}

}  // namespace groundseg::oracles
