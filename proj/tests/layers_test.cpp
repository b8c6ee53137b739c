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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "test_support.hpp"

namespace groundseg {
namespace {

using testing::error_kind_of;
using testing::random_tensor;

void expect_near(const Tensor& a, const Tensor& b, double tol) {
  ASSERT_EQ(a.shape(), b.shape());
  for (std::size_t k = 0; k < a.size(); ++k) ASSERT_NEAR(a.data()[k], b.data()[k], tol) << "entry " << k;
}

TEST(Conv2d, IdentityKernel) {
  std::mt19937_64 rng(1);
  const auto x = random_tensor({2, 1, 4, 6}, rng);
  const Tensor k({1, 1, 1, 1}, 1.0);
  EXPECT_EQ(conv2d_forward(x, k, {}, Stride{}), x);
  const auto g = conv2d_backward(x, x, k, Stride{});
  EXPECT_EQ(g.grad_input, x);
}

TEST(Conv2d, OnesKernelCountsTaps) {
  const Tensor x({1, 1, 5, 7}, 1.0);
  const Tensor k({1, 1, 3, 3}, 1.0);
  const auto y = conv2d_forward(x, k, {}, Stride{});
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t c = 0; c < 7; ++c) EXPECT_DOUBLE_EQ(y(0, 0, r, c), (r == 0 || r == 4) ? 6.0 : 9.0);
  }
}

TEST(Conv2d, MatchesNaiveLoops) {
  std::mt19937_64 rng(2);
  const auto x = random_tensor({1, 2, 4, 6}, rng);
  const auto k = random_tensor({3, 2, 3, 3}, rng);
  const std::vector<double> bias{0.1, -0.2, 0.3};
  expect_near(conv2d_forward(x, k, bias, Stride{}), oracles::naive_conv2d(x, k, bias, Stride{}), 1e-10);
  for (const Stride s : {Stride{1, 2}, Stride{2, 1}, Stride{2, 2}}) {
    const auto big = random_tensor({2, 3, 6, 8}, rng);
    const auto kk = random_tensor({4, 3, 5, 4}, rng);
    expect_near(conv2d_forward(big, kk, {}, s), oracles::naive_conv2d(big, kk, {}, s), 1e-10);
  }
}

TEST(Conv2d, BandedPathMatchesNaiveLoops) {
  // Large enough that im2col is split into bands of output rows.
  std::mt19937_64 rng(3);
  const auto x = random_tensor({1, 128, 64, 360}, rng);
  const auto k = random_tensor({2, 128, 5, 5}, rng);
  expect_near(conv2d_forward(x, k, {}, Stride{1, 2}), oracles::naive_conv2d(x, k, {}, Stride{1, 2}), 1e-9);
  const auto small = random_tensor({1, 2, 64, 180}, rng);
  const auto dk = random_tensor({2, 64, 4, 4}, rng);
  expect_near(deconv2d_forward(small, dk, {}, Stride{1, 2}), oracles::naive_deconv2d(small, dk, {}, Stride{1, 2}),
              1e-9);
}

TEST(Conv2d, ZeroGradOutGivesZeroGradients) {
  std::mt19937_64 rng(4);
  const auto x = random_tensor({1, 2, 4, 6}, rng);
  const auto k = random_tensor({3, 2, 3, 3}, rng);
  const auto g = conv2d_backward(Tensor({1, 3, 4, 6}), x, k, Stride{});
  for (double v : g.grad_input.data()) EXPECT_EQ(v, 0.0);
  for (double v : g.grad_kernel.data()) EXPECT_EQ(v, 0.0);
  for (double v : g.grad_bias) EXPECT_EQ(v, 0.0);
}

TEST(Conv2d, ShapeErrors) {
  std::mt19937_64 rng(5);
  const auto x = random_tensor({1, 2, 4, 6}, rng);
  EXPECT_EQ(error_kind_of([&] { conv2d_forward(x, Tensor({1, 3, 3, 3}), {}, Stride{}); }), ErrorKind::kShape);
  EXPECT_EQ(error_kind_of([&] { conv2d_forward(x, Tensor({1, 2, 3, 3}), {}, Stride{1, 4}); }), ErrorKind::kShape);
  const auto odd = random_tensor({1, 2, 4, 5}, rng);
  EXPECT_EQ(error_kind_of([&] { conv2d_forward(odd, Tensor({1, 2, 3, 3}), {}, Stride{1, 2}); }), ErrorKind::kShape);
  const std::vector<double> bias(2);
  EXPECT_EQ(error_kind_of([&] { conv2d_forward(x, Tensor({1, 2, 3, 3}), bias, Stride{}); }), ErrorKind::kShape);
}

TEST(Conv2d, GradientsMatchFiniteDifferences) {
  std::mt19937_64 rng(6);
  const auto report = oracles::check_conv_gradients(rng, 6);
  EXPECT_LT(report.worst, 1e-4) << report.worst_where;
  EXPECT_GT(report.entries, 1000U);
}

TEST(Deconv2d, SingleTapScatter) {
  const Tensor x({1, 1, 1, 1}, 1.0);
  Tensor k({1, 1, 2, 2});
  k(0, 0, 0, 0) = 1;
  k(0, 0, 0, 1) = 2;
  k(0, 0, 1, 0) = 3;
  k(0, 0, 1, 1) = 4;
  const auto y = deconv2d_forward(x, k, {}, Stride{2, 2});
  ASSERT_EQ(y.shape(), (Shape4{1, 1, 2, 2}));
  EXPECT_EQ(y(0, 0, 0, 0), 1.0);
  EXPECT_EQ(y(0, 0, 0, 1), 2.0);
  EXPECT_EQ(y(0, 0, 1, 0), 3.0);
  EXPECT_EQ(y(0, 0, 1, 1), 4.0);
}

TEST(Deconv2d, HorizontalStrideDoublesWidth) {
  const Tensor x({1, 2, 64, 180}, 0.5);
  const Tensor k({2, 2, 4, 4}, 0.1);
  EXPECT_EQ(deconv2d_forward(x, k, {}, Stride{1, 2}).shape(), (Shape4{1, 2, 64, 360}));
}

TEST(Deconv2d, MatchesNaiveScatter) {
  std::mt19937_64 rng(7);
  for (const Stride s : {Stride{1, 1}, Stride{1, 2}, Stride{2, 2}}) {
    const auto x = random_tensor({2, 3, 3, 4}, rng);
    const auto k = random_tensor({3, 2, 4, 3}, rng);
    const std::vector<double> bias{0.5, -0.5};
    expect_near(deconv2d_forward(x, k, bias, s), oracles::naive_deconv2d(x, k, bias, s), 1e-10);
  }
}

TEST(Deconv2d, AdjointOfConv) {
  std::mt19937_64 rng(8);
  EXPECT_LT(oracles::worst_adjoint_gap(rng, 100), 1e-8);
}

TEST(Deconv2d, GradientsMatchFiniteDifferences) {
  std::mt19937_64 rng(9);
  const auto report = oracles::check_deconv_gradients(rng, 6);
  EXPECT_LT(report.worst, 1e-4) << report.worst_where;
}

TEST(Relu, Examples) {
  Tensor x({1, 1, 1, 3});
  x(0, 0, 0, 0) = -1;
  x(0, 0, 0, 1) = 0;
  x(0, 0, 0, 2) = 2;
  const auto y = relu(x);
  EXPECT_EQ(y(0, 0, 0, 0), 0.0);
  EXPECT_EQ(y(0, 0, 0, 1), 0.0);
  EXPECT_EQ(y(0, 0, 0, 2), 2.0);
  const Tensor g({1, 1, 1, 3}, 1.0);
  const auto gx = relu_backward(g, x);
  EXPECT_EQ(gx(0, 0, 0, 0), 0.0);
  EXPECT_EQ(gx(0, 0, 0, 1), 0.0);
  EXPECT_EQ(gx(0, 0, 0, 2), 1.0);

  const Tensor positive({1, 2, 2, 2}, 0.5);
  EXPECT_EQ(relu(positive), positive);
}

TEST(Relu, GradientsMatchFiniteDifferences) {
  std::mt19937_64 rng(10);
  const auto report = oracles::check_relu_gradients(rng, 3);
  EXPECT_LT(report.worst, 1e-4) << report.worst_where;
}

struct OneCell {
  std::vector<LabelGrid> targets;
  std::vector<Grid<std::uint8_t>> masks;
};

OneCell one_cell(Label label) {
  OneCell c;
  c.targets.push_back(LabelGrid{Grid<Label>(1, 1, label), Grid<std::uint8_t>(1, 1, 1)});
  c.masks.emplace_back(1, 1, 1);
  return c;
}

TEST(SoftmaxXent, EqualLogits) {
  const auto c = one_cell(Label::kGround);
  const auto r = softmax_xent(Tensor({1, 2, 1, 1}, 0.3), c.targets, c.masks);
  EXPECT_NEAR(r.loss, std::log(2.0), 1e-15);
  EXPECT_NEAR(r.loss, 0.693147, 1e-6);
  EXPECT_DOUBLE_EQ(r.probs[0].p_ground(0, 0), 0.5);
  EXPECT_EQ(r.counted_cells, 1U);
}

TEST(SoftmaxXent, SaturatedTowardTarget) {
  for (const Label label : {Label::kGround, Label::kNonGround}) {
    const auto c = one_cell(label);
    Tensor logits({1, 2, 1, 1});
    logits(0, label == Label::kGround ? 0 : 1, 0, 0) = 20.0;
    EXPECT_LT(softmax_xent(logits, c.targets, c.masks).loss, 1e-8);
  }
}

TEST(SoftmaxXent, ExtremeLogitsStayFinite) {
  const auto c = one_cell(Label::kGround);
  Tensor logits({1, 2, 1, 1});
  logits(0, 1, 0, 0) = 1e4;
  const auto r = softmax_xent(logits, c.targets, c.masks);
  EXPECT_TRUE(std::isfinite(r.loss));
  EXPECT_NEAR(r.loss, 1e4, 1e-6);
}

TEST(SoftmaxXent, MaskedCellsGetNoGradient) {
  auto c = one_cell(Label::kGround);
  c.targets[0] = LabelGrid{Grid<Label>(1, 2, Label::kGround), Grid<std::uint8_t>(1, 2, 1)};
  c.masks[0] = Grid<std::uint8_t>(1, 2, 0);
  c.masks[0](0, 0) = 1;
  const auto r = softmax_xent(Tensor({1, 2, 1, 2}, 0.0), c.targets, c.masks);
  EXPECT_EQ(r.grad_logits(0, 0, 0, 1), 0.0);
  EXPECT_EQ(r.grad_logits(0, 1, 0, 1), 0.0);
  EXPECT_DOUBLE_EQ(r.grad_logits(0, 0, 0, 0), -0.5);
  c.masks[0](0, 0) = 0;
  EXPECT_EQ(error_kind_of([&] { softmax_xent(Tensor({1, 2, 1, 2}), c.targets, c.masks); }), ErrorKind::kEmptyMask);
}

TEST(SoftmaxXent, GradientsMatchFiniteDifferences) {
  std::mt19937_64 rng(11);
  const auto report = oracles::check_softmax_gradients(rng, 10);
  EXPECT_LT(report.worst, 1e-4) << report.worst_where;
}

TEST(SoftmaxProbabilities, PairSumsToOne) {
  std::mt19937_64 rng(12);
  const auto logits = random_tensor({2, 2, 3, 5}, rng, 30.0);
  for (std::size_t n = 0; n < 2; ++n) {
    const auto p = softmax_probabilities(logits, n);
    for (double v : p.p_ground.data()) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

}  // namespace
}  // namespace groundseg
