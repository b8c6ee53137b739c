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

#include "groundseg/layers.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <string>

#include "groundseg/error.hpp"

namespace groundseg {
namespace {

using MatrixRM = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRM = Eigen::Map<MatrixRM>;
using ConstMapRM = Eigen::Map<const MatrixRM>;

// Upper bound on the im2col scratch buffer, in doubles. Larger layers are
// processed in bands of output rows.
constexpr std::size_t kColumnBudget = std::size_t{1} << 22;

// Index geometry shared by a convolution and its adjoint. "Big" is the
// convolution input (deconvolution output), "small" the other side.
struct Geometry {
  std::size_t big_c, big_h, big_w;
  std::size_t small_c, small_h, small_w;
  std::size_t kh, kw, sv, sh;
  std::ptrdiff_t pv, ph;
  std::vector<std::size_t> col_source;  // kw x small_w, circular

  Geometry(std::size_t bc, std::size_t bh, std::size_t bw, std::size_t sc, const Tensor& kernel,
           Stride stride)
      : big_c(bc), big_h(bh), big_w(bw), small_c(sc), small_h(bh / stride.vertical),
        small_w(bw / stride.horizontal), kh(kernel.shape().h), kw(kernel.shape().w),
        sv(stride.vertical), sh(stride.horizontal),
        pv(static_cast<std::ptrdiff_t>((kernel.shape().h - 1) / 2)),
        ph(static_cast<std::ptrdiff_t>((kernel.shape().w - 1) / 2)), col_source(kw * small_w) {
    const auto w = static_cast<std::ptrdiff_t>(big_w);
    for (std::size_t j = 0; j < kw; ++j) {
      for (std::size_t ox = 0; ox < small_w; ++ox) {
        const auto x = static_cast<std::ptrdiff_t>(ox * sh + j) - ph;
        col_source[j * small_w + ox] = static_cast<std::size_t>(((x % w) + w) % w);
      }
    }
  }

  std::size_t patch_rows() const { return big_c * kh * kw; }

  std::size_t band_height() const {
    const std::size_t per_row = patch_rows() * small_w;
    return std::clamp<std::size_t>(kColumnBudget / std::max<std::size_t>(per_row, 1), 1, small_h);
  }

  // Source row for output row oy and kernel row i, or -1 for zero padding.
  std::ptrdiff_t row_source(std::size_t oy, std::size_t i) const {
    const auto y = static_cast<std::ptrdiff_t>(oy * sv + i) - pv;
    return (y < 0 || y >= static_cast<std::ptrdiff_t>(big_h)) ? -1 : y;
  }
};

// Unfolds big-side rows feeding output rows [oy0, oy1) into a
// (patch_rows x band_cols) matrix.
void im2col(const double* big, const Geometry& g, std::size_t oy0, std::size_t oy1, double* col) {
  const std::size_t band_cols = (oy1 - oy0) * g.small_w;
  for (std::size_t c = 0; c < g.big_c; ++c) {
    for (std::size_t i = 0; i < g.kh; ++i) {
      for (std::size_t j = 0; j < g.kw; ++j) {
        double* dst = col + ((c * g.kh + i) * g.kw + j) * band_cols;
        const std::size_t* sources = g.col_source.data() + j * g.small_w;
        for (std::size_t oy = oy0; oy < oy1; ++oy, dst += g.small_w) {
          const auto y = g.row_source(oy, i);
          if (y < 0) {
            std::fill(dst, dst + g.small_w, 0.0);
            continue;
          }
          const double* src = big + (c * g.big_h + static_cast<std::size_t>(y)) * g.big_w;
          for (std::size_t ox = 0; ox < g.small_w; ++ox) dst[ox] = src[sources[ox]];
        }
      }
    }
  }
}

// Adjoint of im2col: scatters and accumulates the band back onto `big`.
void col2im(const double* col, const Geometry& g, std::size_t oy0, std::size_t oy1, double* big) {
  const std::size_t band_cols = (oy1 - oy0) * g.small_w;
  for (std::size_t c = 0; c < g.big_c; ++c) {
    for (std::size_t i = 0; i < g.kh; ++i) {
      for (std::size_t j = 0; j < g.kw; ++j) {
        const double* src = col + ((c * g.kh + i) * g.kw + j) * band_cols;
        const std::size_t* sources = g.col_source.data() + j * g.small_w;
        for (std::size_t oy = oy0; oy < oy1; ++oy, src += g.small_w) {
          const auto y = g.row_source(oy, i);
          if (y < 0) continue;
          double* dst = big + (c * g.big_h + static_cast<std::size_t>(y)) * g.big_w;
          for (std::size_t ox = 0; ox < g.small_w; ++ox) dst[sources[ox]] += src[ox];
        }
      }
    }
  }
}

void check_stride(Stride stride) {
  auto ok = [](std::size_t s) { return s == 1 || s == 2; };
  if (!ok(stride.vertical) || !ok(stride.horizontal)) {
    throw Error(ErrorKind::kShape, "stride components must be 1 or 2");
  }
}

void check_kernel(const Tensor& kernel, std::span<const double> bias, std::size_t bias_channels) {
  if (kernel.shape().h == 0 || kernel.shape().w == 0) throw Error(ErrorKind::kShape, "empty kernel");
  if (!bias.empty() && bias.size() != bias_channels) {
    throw Error(ErrorKind::kShape, "bias has " + std::to_string(bias.size()) + " entries, expected " +
                                       std::to_string(bias_channels));
  }
}

void add_bias(Tensor& out, std::span<const double> bias) {
  if (bias.empty()) return;
  const auto& s = out.shape();
  const std::size_t plane = s.h * s.w;
  for (std::size_t n = 0; n < s.n; ++n) {
    auto sample = out.sample(n);
    for (std::size_t c = 0; c < s.c; ++c) {
      double* p = sample.data() + c * plane;
      const double b = bias[c];
      for (std::size_t k = 0; k < plane; ++k) p[k] += b;
    }
  }
}

std::vector<double> channel_sums(const Tensor& t) {
  const auto& s = t.shape();
  const std::size_t plane = s.h * s.w;
  std::vector<double> out(s.c, 0.0);
  for (std::size_t n = 0; n < s.n; ++n) {
    auto sample = t.sample(n);
    for (std::size_t c = 0; c < s.c; ++c) {
      const double* p = sample.data() + c * plane;
      double sum = 0.0;
      for (std::size_t k = 0; k < plane; ++k) sum += p[k];
      out[c] += sum;
    }
  }
  return out;
}

Geometry conv_geometry(const Tensor& big, const Tensor& kernel, Stride stride) {
  check_stride(stride);
  const auto& s = big.shape();
  if (kernel.shape().c != s.c) {
    throw Error(ErrorKind::kShape, "kernel " + kernel.shape().str() + " expects " +
                                       std::to_string(kernel.shape().c) + " input channels, got " +
                                       s.str());
  }
  if (s.h % stride.vertical != 0 || s.w % stride.horizontal != 0) {
    throw Error(ErrorKind::kShape, "input " + s.str() + " is not divisible by the stride");
  }
  return Geometry(s.c, s.h, s.w, kernel.shape().n, kernel, stride);
}

Geometry deconv_geometry(const Tensor& small, const Tensor& kernel, Stride stride) {
  check_stride(stride);
  const auto& s = small.shape();
  if (kernel.shape().n != s.c) {
    throw Error(ErrorKind::kShape, "kernel " + kernel.shape().str() + " expects " +
                                       std::to_string(kernel.shape().n) + " input channels, got " +
                                       s.str());
  }
  return Geometry(kernel.shape().c, s.h * stride.vertical, s.w * stride.horizontal, s.c, kernel,
                  stride);
}

}  // namespace

Tensor conv2d_forward(const Tensor& input, const Tensor& kernel, std::span<const double> bias,
                      Stride stride) {
  const Geometry g = conv_geometry(input, kernel, stride);
  check_kernel(kernel, bias, g.small_c);
  Tensor out({input.shape().n, g.small_c, g.small_h, g.small_w});
  const ConstMapRM weights(kernel.data().data(), static_cast<Eigen::Index>(g.small_c),
                           static_cast<Eigen::Index>(g.patch_rows()));
  const std::size_t band = g.band_height();
  std::vector<double> col(g.patch_rows() * band * g.small_w);
  const auto out_cols = static_cast<Eigen::Index>(g.small_h * g.small_w);

  for (std::size_t n = 0; n < input.shape().n; ++n) {
    MapRM result(out.sample(n).data(), static_cast<Eigen::Index>(g.small_c), out_cols);
    for (std::size_t oy0 = 0; oy0 < g.small_h; oy0 += band) {
      const std::size_t oy1 = std::min(oy0 + band, g.small_h);
      const auto band_cols = static_cast<Eigen::Index>((oy1 - oy0) * g.small_w);
      im2col(input.sample(n).data(), g, oy0, oy1, col.data());
      const ConstMapRM patches(col.data(), static_cast<Eigen::Index>(g.patch_rows()), band_cols);
      result.middleCols(static_cast<Eigen::Index>(oy0 * g.small_w), band_cols).noalias() =
          weights * patches;
    }
  }
  add_bias(out, bias);
  return out;
}

ConvGradients conv2d_backward(const Tensor& grad_out, const Tensor& input, const Tensor& kernel,
                              Stride stride) {
  const Geometry g = conv_geometry(input, kernel, stride);
  const Shape4 expected{input.shape().n, g.small_c, g.small_h, g.small_w};
  if (grad_out.shape() != expected) {
    throw Error(ErrorKind::kShape, "gradient " + grad_out.shape().str() + " does not match output " +
                                       expected.str());
  }
  ConvGradients grads{Tensor(input.shape()), Tensor(kernel.shape()), channel_sums(grad_out)};
  const ConstMapRM weights(kernel.data().data(), static_cast<Eigen::Index>(g.small_c),
                           static_cast<Eigen::Index>(g.patch_rows()));
  MapRM grad_weights(grads.grad_kernel.data().data(), static_cast<Eigen::Index>(g.small_c),
                     static_cast<Eigen::Index>(g.patch_rows()));
  const std::size_t band = g.band_height();
  std::vector<double> col(g.patch_rows() * band * g.small_w);
  std::vector<double> grad_col(col.size());
  const auto out_cols = static_cast<Eigen::Index>(g.small_h * g.small_w);

  for (std::size_t n = 0; n < input.shape().n; ++n) {
    const ConstMapRM upstream(grad_out.sample(n).data(), static_cast<Eigen::Index>(g.small_c), out_cols);
    for (std::size_t oy0 = 0; oy0 < g.small_h; oy0 += band) {
      const std::size_t oy1 = std::min(oy0 + band, g.small_h);
      const auto band_cols = static_cast<Eigen::Index>((oy1 - oy0) * g.small_w);
      const auto upstream_band = upstream.middleCols(static_cast<Eigen::Index>(oy0 * g.small_w), band_cols);
      im2col(input.sample(n).data(), g, oy0, oy1, col.data());
      const ConstMapRM patches(col.data(), static_cast<Eigen::Index>(g.patch_rows()), band_cols);
      grad_weights.noalias() += upstream_band * patches.transpose();
      MapRM grad_patches(grad_col.data(), static_cast<Eigen::Index>(g.patch_rows()), band_cols);
      grad_patches.noalias() = weights.transpose() * upstream_band;
      col2im(grad_col.data(), g, oy0, oy1, grads.grad_input.sample(n).data());
    }
  }
  return grads;
}

Tensor deconv2d_forward(const Tensor& input, const Tensor& kernel, std::span<const double> bias,
                        Stride stride) {
  const Geometry g = deconv_geometry(input, kernel, stride);
  check_kernel(kernel, bias, g.big_c);
  Tensor out({input.shape().n, g.big_c, g.big_h, g.big_w});
  const ConstMapRM weights(kernel.data().data(), static_cast<Eigen::Index>(g.small_c),
                           static_cast<Eigen::Index>(g.patch_rows()));
  const std::size_t band = g.band_height();
  std::vector<double> col(g.patch_rows() * band * g.small_w);
  const auto in_cols = static_cast<Eigen::Index>(g.small_h * g.small_w);

  for (std::size_t n = 0; n < input.shape().n; ++n) {
    const ConstMapRM x(input.sample(n).data(), static_cast<Eigen::Index>(g.small_c), in_cols);
    for (std::size_t oy0 = 0; oy0 < g.small_h; oy0 += band) {
      const std::size_t oy1 = std::min(oy0 + band, g.small_h);
      const auto band_cols = static_cast<Eigen::Index>((oy1 - oy0) * g.small_w);
      MapRM patches(col.data(), static_cast<Eigen::Index>(g.patch_rows()), band_cols);
      patches.noalias() =
          weights.transpose() * x.middleCols(static_cast<Eigen::Index>(oy0 * g.small_w), band_cols);
      col2im(col.data(), g, oy0, oy1, out.sample(n).data());
    }
  }
  add_bias(out, bias);
  return out;
}

ConvGradients deconv2d_backward(const Tensor& grad_out, const Tensor& input, const Tensor& kernel,
                                Stride stride) {
  const Geometry g = deconv_geometry(input, kernel, stride);
  const Shape4 expected{input.shape().n, g.big_c, g.big_h, g.big_w};
  if (grad_out.shape() != expected) {
    throw Error(ErrorKind::kShape, "gradient " + grad_out.shape().str() + " does not match output " +
                                       expected.str());
  }
  ConvGradients grads{Tensor(input.shape()), Tensor(kernel.shape()), channel_sums(grad_out)};
  const ConstMapRM weights(kernel.data().data(), static_cast<Eigen::Index>(g.small_c),
                           static_cast<Eigen::Index>(g.patch_rows()));
  MapRM grad_weights(grads.grad_kernel.data().data(), static_cast<Eigen::Index>(g.small_c),
                     static_cast<Eigen::Index>(g.patch_rows()));
  const std::size_t band = g.band_height();
  std::vector<double> col(g.patch_rows() * band * g.small_w);
  const auto in_cols = static_cast<Eigen::Index>(g.small_h * g.small_w);

  for (std::size_t n = 0; n < input.shape().n; ++n) {
    const ConstMapRM x(input.sample(n).data(), static_cast<Eigen::Index>(g.small_c), in_cols);
    MapRM grad_x(grads.grad_input.sample(n).data(), static_cast<Eigen::Index>(g.small_c), in_cols);
    for (std::size_t oy0 = 0; oy0 < g.small_h; oy0 += band) {
      const std::size_t oy1 = std::min(oy0 + band, g.small_h);
      const auto band_cols = static_cast<Eigen::Index>((oy1 - oy0) * g.small_w);
      const auto offset = static_cast<Eigen::Index>(oy0 * g.small_w);
      im2col(grad_out.sample(n).data(), g, oy0, oy1, col.data());
      const ConstMapRM patches(col.data(), static_cast<Eigen::Index>(g.patch_rows()), band_cols);
      grad_x.middleCols(offset, band_cols).noalias() = weights * patches;
      grad_weights.noalias() += x.middleCols(offset, band_cols) * patches.transpose();
    }
  }
  return grads;
}

Tensor relu(const Tensor& input) {
  Tensor out = input;
  // NaN passes through so divergence surfaces in the loss.
  for (double& v : out.data()) v = v < 0.0 ? 0.0 : v;
  return out;
}

Tensor relu_backward(const Tensor& grad_out, const Tensor& input) {
  if (grad_out.shape() != input.shape()) throw Error(ErrorKind::kShape, "relu gradient shape mismatch");
  Tensor out = grad_out;
  auto x = input.data();
  auto g = out.data();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(x[i] > 0.0)) g[i] = 0.0;
  }
  return out;
}

namespace {

// -ln softmax(target) for a two-way softmax, stable for any logit gap.
double two_way_nll(double target_logit, double other_logit) {
  const double gap = other_logit - target_logit;
  return gap > 0.0 ? gap + std::log1p(std::exp(-gap)) : std::log1p(std::exp(gap));
}

double ground_probability(double ground_logit, double other_logit) {
  const double m = std::max(ground_logit, other_logit);
  const double e_ground = std::exp(ground_logit - m);
  const double e_other = std::exp(other_logit - m);
  return e_ground / (e_ground + e_other);
}

}  // namespace

ProbabilityMap softmax_probabilities(const Tensor& logits, std::size_t n) {
  const auto& s = logits.shape();
  if (s.c != 2) throw Error(ErrorKind::kShape, "softmax expects 2 logit channels, got " + s.str());
  ProbabilityMap out{Grid<double>(s.h, s.w, 0.0)};
  const double* ground = logits.sample(n).data();
  const double* other = ground + s.h * s.w;
  auto& p = out.p_ground.data();
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = ground_probability(ground[k], other[k]);
  return out;
}

SoftmaxResult softmax_xent(const Tensor& logits, std::span<const LabelGrid> targets,
                           std::span<const Grid<std::uint8_t>> masks) {
  const auto& s = logits.shape();
  if (s.c != 2) throw Error(ErrorKind::kShape, "softmax expects 2 logit channels, got " + s.str());
  if (targets.size() != s.n || masks.size() != s.n) {
    throw Error(ErrorKind::kShape, "need one target and one mask per batch element");
  }
  for (std::size_t n = 0; n < s.n; ++n) {
    if (!targets[n].labels.same_shape(s.h, s.w) || !masks[n].same_shape(s.h, s.w)) {
      throw Error(ErrorKind::kShape, "target or mask does not match logits " + s.str());
    }
  }

  SoftmaxResult result;
  result.grad_logits = Tensor(s);
  result.probs.reserve(s.n);
  for (std::size_t n = 0; n < s.n; ++n) {
    for (auto m : masks[n].data()) result.counted_cells += m != 0 ? 1 : 0;
  }
  if (result.counted_cells == 0) throw Error(ErrorKind::kEmptyMask, "no cell contributes to the loss");
  const double scale = 1.0 / static_cast<double>(result.counted_cells);

  const std::size_t plane = s.h * s.w;
  double total = 0.0;
  for (std::size_t n = 0; n < s.n; ++n) {
    result.probs.push_back(softmax_probabilities(logits, n));
    const double* ground = logits.sample(n).data();
    const double* other = ground + plane;
    double* grad_ground = result.grad_logits.sample(n).data();
    double* grad_other = grad_ground + plane;
    const auto& p = result.probs.back().p_ground.data();
    const auto& labels = targets[n].labels.data();
    const auto& mask = masks[n].data();
    for (std::size_t k = 0; k < plane; ++k) {
      if (mask[k] == 0) continue;
      const bool is_ground = labels[k] == Label::kGround;
      total += is_ground ? two_way_nll(ground[k], other[k]) : two_way_nll(other[k], ground[k]);
      const double d = (p[k] - (is_ground ? 1.0 : 0.0)) * scale;
      grad_ground[k] = d;
      grad_other[k] = -d;
    }
  }
  result.loss = total * scale;
  return result;
}

}  // namespace groundseg
