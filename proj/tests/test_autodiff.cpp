// Copyright 2026 The splicepaint Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "splicepaint/autodiff.hpp"
#include "splicepaint/grad_check.hpp"
#include "splicepaint/rng.hpp"

namespace splicepaint {
namespace {

Tensor<double> random_tensor(Shape shape, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  Tensor<double> t(std::move(shape));
  Rng rng(seed);
  for (double& v : t.data()) v = rng.uniform(lo, hi);
  return t;
}

// Direct convolution sum, written independently of the engine's loop order.
Tensor<double> reference_conv(const Tensor<double>& x, const Tensor<double>& k, const Tensor<double>& b,
                              int stride, int pad) {
  const long n = x.dim(0), cin = x.dim(1), h = x.dim(2), w = x.dim(3);
  const long cout = k.dim(0), ks = k.dim(2);
  const long ho = (h + 2 * pad - ks) / stride + 1, wo = (w + 2 * pad - ks) / stride + 1;
  Tensor<double> out(Shape{std::size_t(n), std::size_t(cout), std::size_t(ho), std::size_t(wo)});
  for (long i = 0; i < n; ++i)
    for (long co = 0; co < cout; ++co)
      for (long oy = 0; oy < ho; ++oy)
        for (long ox = 0; ox < wo; ++ox) {
          double acc = b[co];
          for (long ci = 0; ci < cin; ++ci)
            for (long ky = 0; ky < ks; ++ky)
              for (long kx = 0; kx < ks; ++kx) {
                const long iy = oy * stride + ky - pad, ix = ox * stride + kx - pad;
                if (iy < 0 || ix < 0 || iy >= h || ix >= w) continue;
                acc += x.at(i, ci, iy, ix) * k.at(co, ci, ky, kx);
              }
          out.at(i, co, oy, ox) = acc;
        }
  return out;
}

TEST(Conv2d, AllOnesKernelOnThreeByThree) {
  Graph<double> g;
  const Var x = g.leaf(Tensor<double>(Shape{1, 1, 3, 3}, {1, 2, 3, 4, 5, 6, 7, 8, 9}));
  const Var k = g.leaf(Tensor<double>(Shape{1, 1, 2, 2}, 1.0));
  const Var b = g.leaf(Tensor<double>(Shape{1}, 0.0));
  const Var y = g.conv2d(x, k, b, 1, 0);
  EXPECT_EQ(g.value(y), Tensor<double>(Shape{1, 1, 2, 2}, {12, 16, 24, 28}));
}

TEST(Conv2d, IdentityKernelReproducesInput) {
  Graph<float> g;
  Tensor<float> in(Shape{2, 1, 5, 7});
  Rng rng(3);
  for (float& v : in.data()) v = static_cast<float>(rng.uniform());
  const Var x = g.leaf(in);
  const Var y = g.conv2d(x, g.leaf(Tensor<float>(Shape{1, 1, 1, 1}, 1.0f)), g.leaf(Tensor<float>(Shape{1})), 1, 0);
  EXPECT_EQ(g.value(y), in);

  // 3x3 delta kernel with same padding.
  Tensor<float> delta(Shape{1, 1, 3, 3});
  delta.at(0, 0, 1, 1) = 1.0f;
  const Var z = g.conv2d(x, g.leaf(delta), g.leaf(Tensor<float>(Shape{1})), 1, 1);
  EXPECT_EQ(g.value(z), in);
}

TEST(Conv2d, SamePaddingShape) {
  Graph<float> g;
  const Var x = g.leaf(Tensor<float>(Shape{1, 3, 224, 224}), false);
  const Var y = g.conv2d(x, g.leaf(Tensor<float>(Shape{64, 3, 3, 3})), g.leaf(Tensor<float>(Shape{64})), 1, 1);
  EXPECT_EQ(g.value(y).shape(), (Shape{1, 64, 224, 224}));
}

TEST(Conv2d, MatchesDirectSumWithStrideAndPadding) {
  for (int stride : {1, 2, 3}) {
    for (int pad : {0, 1, 2}) {
      const auto x = random_tensor({2, 3, 7, 6}, 10 + stride);
      const auto k = random_tensor({4, 3, 3, 3}, 20 + pad);
      const auto b = random_tensor({4}, 30);
      Graph<double> g;
      const Var y = g.conv2d(g.leaf(x), g.leaf(k), g.leaf(b), stride, pad);
      const auto expected = reference_conv(x, k, b, stride, pad);
      ASSERT_EQ(g.value(y).shape(), expected.shape()) << "stride " << stride << " pad " << pad;
      for (std::size_t i = 0; i < expected.size(); ++i)
        EXPECT_NEAR(g.value(y)[i], expected[i], 1e-12) << "stride " << stride << " pad " << pad;
    }
  }
}

TEST(Conv2d, RejectsBadArguments) {
  Graph<double> g;
  const Var x = g.leaf(Tensor<double>(Shape{1, 2, 4, 4}));
  const Var k = g.leaf(Tensor<double>(Shape{1, 3, 3, 3}));
  const Var b = g.leaf(Tensor<double>(Shape{1}));
  EXPECT_THROW(g.conv2d(x, k, b, 1, 1), std::invalid_argument);
  const Var k2 = g.leaf(Tensor<double>(Shape{1, 2, 3, 3}));
  EXPECT_THROW(g.conv2d(x, k2, b, 0, 1), std::invalid_argument);
  const Var big = g.leaf(Tensor<double>(Shape{1, 2, 7, 7}));
  EXPECT_THROW(g.conv2d(x, big, b, 1, 1), std::invalid_argument);
}

TEST(MaxPool, PicksWindowMaximum) {
  Graph<double> g;
  const Var y = g.maxpool2d(g.leaf(Tensor<double>(Shape{1, 1, 2, 2}, {1, 2, 3, 4})));
  EXPECT_EQ(g.value(y), Tensor<double>(Shape{1, 1, 1, 1}, {4}));

  const Var c = g.maxpool2d(g.leaf(Tensor<double>(Shape{1, 2, 4, 6}, 0.75)));
  EXPECT_EQ(g.value(c), Tensor<double>(Shape{1, 2, 2, 3}, 0.75));
}

TEST(MaxPool, GradientGoesToArgmaxOnly) {
  const auto x = random_tensor({1, 1, 4, 4}, 5);
  Graph<double> g;
  const Var in = g.leaf(x);
  const Var s = g.sum(g.maxpool2d(in));
  g.backward(s);
  for (std::size_t wy = 0; wy < 2; ++wy)
    for (std::size_t wx = 0; wx < 2; ++wx) {
      std::size_t by = 2 * wy, bx = 2 * wx;
      for (std::size_t dy = 0; dy < 2; ++dy)
        for (std::size_t dx = 0; dx < 2; ++dx)
          if (x.at(0, 0, 2 * wy + dy, 2 * wx + dx) > x.at(0, 0, by, bx)) by = 2 * wy + dy, bx = 2 * wx + dx;
      for (std::size_t dy = 0; dy < 2; ++dy)
        for (std::size_t dx = 0; dx < 2; ++dx) {
          const std::size_t y = 2 * wy + dy, xx = 2 * wx + dx;
          EXPECT_EQ(g.grad(in).at(0, 0, y, xx), (y == by && xx == bx) ? 1.0 : 0.0);
        }
    }
  EXPECT_LT(grad_check([](Graph<double>& gr, std::span<const Var> v) { return gr.sum(gr.maxpool2d(v[0])); }, {x}),
            1e-8);
}

TEST(MaxPool, TiesRouteToFirstMaximum) {
  Graph<double> g;
  const Var in = g.leaf(Tensor<double>(Shape{1, 1, 2, 2}, 1.0));
  g.backward(g.sum(g.maxpool2d(in)));
  EXPECT_EQ(g.grad(in), Tensor<double>(Shape{1, 1, 2, 2}, {1, 0, 0, 0}));
}

TEST(MaxPool, RejectsIndivisibleInput) {
  Graph<double> g;
  EXPECT_THROW(g.maxpool2d(g.leaf(Tensor<double>(Shape{1, 1, 3, 4}))), std::invalid_argument);
}

TEST(Upsample, ReplicatesBlocks) {
  Graph<double> g;
  const Var in = g.leaf(Tensor<double>(Shape{1, 1, 2, 2}, {1, 2, 3, 4}));
  const Var y = g.upsample_nearest(in, 2);
  EXPECT_EQ(g.value(y), Tensor<double>(Shape{1, 1, 4, 4}, {1, 1, 2, 2, 1, 1, 2, 2, 3, 3, 4, 4, 3, 3, 4, 4}));
  const Var same = g.upsample_nearest(in, 1);
  EXPECT_EQ(g.value(same), g.value(in));
  g.backward(g.sum(y));
  EXPECT_EQ(g.grad(in), Tensor<double>(Shape{1, 1, 2, 2}, 4.0));
  EXPECT_THROW(g.upsample_nearest(in, 0), std::invalid_argument);
}

TEST(Concat, StacksChannelsAndSplitsGradient) {
  Graph<double> g;
  const Var a = g.leaf(random_tensor({1, 2, 2, 2}, 1));
  const Var b = g.leaf(random_tensor({1, 3, 2, 2}, 2));
  EXPECT_EQ(g.value(g.concat_channels(a, b)).shape(), (Shape{1, 5, 2, 2}));
  const Var empty = g.leaf(Tensor<double>(Shape{1, 0, 2, 2}));
  const Var joined = g.concat_channels(a, empty);
  EXPECT_EQ(g.value(joined), g.value(a));
  EXPECT_THROW(g.concat_channels(a, g.leaf(Tensor<double>(Shape{1, 1, 3, 2}))), std::invalid_argument);

  const double err = grad_check(
      [](Graph<double>& gr, std::span<const Var> v) {
        const Var c = gr.concat_channels(v[0], v[1]);
        return gr.mse(c, v[2]);
      },
      {random_tensor({2, 2, 3, 3}, 7), random_tensor({2, 1, 3, 3}, 8), random_tensor({2, 3, 3, 3}, 9)});
  EXPECT_LT(err, 1e-6);
}

TEST(Activations, ReluSigmoidAndMse) {
  Graph<double> g;
  const Var x = g.leaf(Tensor<double>(Shape{3}, {-1.0, 0.0, 2.0}));
  EXPECT_EQ(g.value(g.relu(x)), Tensor<double>(Shape{3}, {0.0, 0.0, 2.0}));

  const Var p = g.leaf(Tensor<double>(Shape{2}, {0.0, 0.0}));
  const Var t = g.leaf(Tensor<double>(Shape{2}, {0.1, 0.1}));
  EXPECT_NEAR(g.value(g.mse(p, t))[0], 0.01, 1e-15);
  EXPECT_EQ(g.value(g.mse(p, p))[0], 0.0);
  EXPECT_THROW(g.mse(p, x), std::invalid_argument);

  Graph<double> h;
  const Var z = h.leaf(Tensor<double>::scalar(0.0));
  const Var s = h.sigmoid(z);
  EXPECT_EQ(h.value(s)[0], 0.5);
  h.backward(s);
  EXPECT_EQ(h.grad(z)[0], 0.25);
}

TEST(Activations, SigmoidStaysInsideOpenInterval) {
  Graph<float> g;
  const Var s = g.sigmoid(g.leaf(Tensor<float>(Shape{4}, {-200.0f, -30.0f, 30.0f, 200.0f})));
  for (float v : g.value(s).data()) {
    EXPECT_GT(v, 0.0f);
    EXPECT_LT(v, 1.0f);
  }
}

TEST(Backward, ReusedNodeAccumulates) {
  const auto x = random_tensor({1, 1, 3, 3}, 11);
  const auto t = random_tensor({1, 1, 3, 3}, 12);
  auto single = [&](bool twice) {
    Graph<double> g;
    const Var in = g.leaf(x);
    const Var a = g.sigmoid(in);
    const Var l1 = g.mse(a, g.leaf(t, false));
    if (!twice) {
      g.backward(l1);
    } else {
      const Var l2 = g.mse(a, g.leaf(t, false));
      g.backward(g.add(l1, l2));
    }
    return g.grad(in);
  };
  const auto once = single(false), both = single(true);
  for (std::size_t i = 0; i < once.size(); ++i) EXPECT_NEAR(both[i], 2 * once[i], 1e-15);
}

TEST(Backward, RejectsNonScalarRoot) {
  Graph<double> g;
  const Var x = g.leaf(Tensor<double>(Shape{2}));
  EXPECT_THROW(g.backward(x), std::invalid_argument);
  EXPECT_THROW(grad_check([](Graph<double>&, std::span<const Var> v) { return v[0]; }, {Tensor<double>(Shape{2})}),
               std::invalid_argument);
}

TEST(Forward, Deterministic) {
  const auto x = random_tensor({1, 2, 6, 6}, 21);
  const auto k = random_tensor({3, 2, 3, 3}, 22);
  auto run = [&] {
    Graph<double> g;
    return g.value(g.sigmoid(g.conv2d(g.leaf(x), g.leaf(k), g.leaf(Tensor<double>(Shape{3})), 1, 1)));
  };
  EXPECT_EQ(run(), run());
}

TEST(GradCheck, LinearFunctionIsExact) {
  const double err = grad_check(
      [](Graph<double>& g, std::span<const Var> v) {
        return g.sum(g.conv2d(v[0], v[1], v[2], 1, 1));
      },
      {random_tensor({1, 2, 5, 5}, 1), random_tensor({2, 2, 3, 3}, 2), random_tensor({2}, 3)});
  EXPECT_LT(err, 1e-8);
}

TEST(GradCheck, SigmoidMse) {
  const double err = grad_check(
      [](Graph<double>& g, std::span<const Var> v) { return g.mse(g.sigmoid(v[0]), v[1]); },
      {random_tensor({32}, 4, -3, 3), random_tensor({32}, 5, 0, 1)});
  EXPECT_LT(err, 1e-6);
}

TEST(GradCheck, ConvReluMse) {
  const double err = grad_check(
      [](Graph<double>& g, std::span<const Var> v) { return g.mse(g.relu(g.conv2d(v[0], v[1], v[2], 1, 1)), v[3]); },
      {random_tensor({1, 2, 8, 8}, 6), random_tensor({3, 2, 3, 3}, 7), random_tensor({3}, 8),
       random_tensor({1, 3, 8, 8}, 9)});
  EXPECT_LT(err, 1e-4);
}

// Every differentiable op, five seeds each, shapes up to 2x4x8x8.
TEST(GradCheck, EveryOpAcrossSeeds) {
  using Fn = ScalarGraphFn;
  struct Case {
    const char* name;
    Fn fn;
    std::vector<Shape> shapes;
  };
  const std::vector<Case> cases = {
      {"conv2d", [](Graph<double>& g, std::span<const Var> v) { return g.mse(g.conv2d(v[0], v[1], v[2], 1, 1), v[3]); },
       {{2, 4, 8, 8}, {3, 4, 3, 3}, {3}, {2, 3, 8, 8}}},
      {"conv2d-strided", [](Graph<double>& g, std::span<const Var> v) { return g.mse(g.conv2d(v[0], v[1], v[2], 2, 1), v[3]); },
       {{1, 2, 8, 8}, {2, 2, 3, 3}, {2}, {1, 2, 4, 4}}},
      {"maxpool2d", [](Graph<double>& g, std::span<const Var> v) { return g.mse(g.maxpool2d(v[0]), v[1]); },
       {{2, 4, 8, 8}, {2, 4, 4, 4}}},
      {"upsample", [](Graph<double>& g, std::span<const Var> v) { return g.mse(g.upsample_nearest(v[0], 2), v[1]); },
       {{2, 4, 4, 4}, {2, 4, 8, 8}}},
      {"concat", [](Graph<double>& g, std::span<const Var> v) { return g.mse(g.concat_channels(v[0], v[1]), v[2]); },
       {{2, 1, 8, 8}, {2, 3, 8, 8}, {2, 4, 8, 8}}},
      {"relu", [](Graph<double>& g, std::span<const Var> v) { return g.mse(g.relu(v[0]), v[1]); },
       {{2, 4, 8, 8}, {2, 4, 8, 8}}},
      {"sigmoid", [](Graph<double>& g, std::span<const Var> v) { return g.mse(g.sigmoid(v[0]), v[1]); },
       {{2, 4, 8, 8}, {2, 4, 8, 8}}},
      {"add", [](Graph<double>& g, std::span<const Var> v) { return g.mse(g.add(v[0], v[1]), v[2]); },
       {{2, 4, 8, 8}, {2, 4, 8, 8}, {2, 4, 8, 8}}},
      {"sum", [](Graph<double>& g, std::span<const Var> v) { return g.sum(g.sigmoid(v[0])); }, {{2, 4, 8, 8}}},
  };
  for (const Case& c : cases) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      std::vector<Tensor<double>> inputs;
      for (std::size_t i = 0; i < c.shapes.size(); ++i) inputs.push_back(random_tensor(c.shapes[i], seed * 100 + i));
      const auto r = grad_check_detailed(c.fn, inputs);
      EXPECT_LT(r.max_relative_error, 1e-4)
          << c.name << " seed " << seed << " input " << r.worst_input << " element " << r.worst_element
          << " analytic " << r.analytic << " numeric " << r.numeric;
    }
  }
}

TEST(GradCheck, WeightedMse) {
  Tensor<double> w(Shape{2, 3, 4, 4});
  Rng rng(9);
  for (double& v : w.data()) v = rng.uniform() < 0.3 ? 1.0 : 0.0;
  const double err = grad_check(
      [&w](Graph<double>& g, std::span<const Var> v) { return g.weighted_mse(g.sigmoid(v[0]), v[1], w); },
      {random_tensor({2, 3, 4, 4}, 1), random_tensor({2, 3, 4, 4}, 2)});
  EXPECT_LT(err, 1e-6);
}

}  // namespace
}  // namespace splicepaint
