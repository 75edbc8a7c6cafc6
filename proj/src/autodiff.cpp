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

#include "splicepaint/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace splicepaint {
namespace {

struct ConvGeometry {
  std::size_t n, cin, h, w, cout, k, ho, wo;
  int stride, pad;
};

// Output columns ox for which ix = ox*stride + kx - pad lies in [0, w).
inline void column_range(const ConvGeometry& g, std::size_t kx, std::size_t& lo,
                         std::size_t& hi) {
  const long s = g.stride;
  const long off = static_cast<long>(kx) - g.pad;
  long first = off >= 0 ? 0 : (-off + s - 1) / s;
  long last = (static_cast<long>(g.w) - 1 - off);
  last = last < 0 ? -1 : last / s;
  last = std::min(last, static_cast<long>(g.wo) - 1);
  lo = static_cast<std::size_t>(first);
  hi = last < first ? lo : static_cast<std::size_t>(last + 1);
}

template <typename T>
void conv_forward(const ConvGeometry& g, const T* in, const T* ker, const T* bias, T* out) {
  const std::size_t in_plane = g.h * g.w, out_plane = g.ho * g.wo;
  for (std::size_t n = 0; n < g.n; ++n) {
    for (std::size_t co = 0; co < g.cout; ++co) {
      T* o = out + (n * g.cout + co) * out_plane;
      std::fill(o, o + out_plane, bias[co]);
      for (std::size_t ci = 0; ci < g.cin; ++ci) {
        const T* src = in + (n * g.cin + ci) * in_plane;
        const T* kk = ker + (co * g.cin + ci) * g.k * g.k;
        for (std::size_t ky = 0; ky < g.k; ++ky) {
          for (std::size_t kx = 0; kx < g.k; ++kx) {
            const T wv = kk[ky * g.k + kx];
            std::size_t lo, hi;
            column_range(g, kx, lo, hi);
            for (std::size_t oy = 0; oy < g.ho; ++oy) {
              const long iy = static_cast<long>(oy) * g.stride + static_cast<long>(ky) - g.pad;
              if (iy < 0 || iy >= static_cast<long>(g.h)) continue;
              T* orow = o + oy * g.wo;
              const T* irow = src + static_cast<std::size_t>(iy) * g.w;
              if (g.stride == 1) {
                if (hi <= lo) continue;
                const T* ip = irow + (static_cast<long>(lo + kx) - g.pad);
                T* op = orow + lo;
                const std::size_t count = hi - lo;
                for (std::size_t j = 0; j < count; ++j) op[j] += wv * ip[j];
              } else {
                for (std::size_t ox = lo; ox < hi; ++ox)
                  orow[ox] += wv * irow[ox * g.stride + kx - g.pad];
              }
            }
          }
        }
      }
    }
  }
}

template <typename T>
void conv_backward(const ConvGeometry& g, const T* in, const T* ker, const T* gout, T* gin,
                   T* gker, T* gbias) {
  const std::size_t in_plane = g.h * g.w, out_plane = g.ho * g.wo;
  for (std::size_t n = 0; n < g.n; ++n) {
    for (std::size_t co = 0; co < g.cout; ++co) {
      const T* go = gout + (n * g.cout + co) * out_plane;
      if (gbias) {
        T acc = 0;
        for (std::size_t i = 0; i < out_plane; ++i) acc += go[i];
        gbias[co] += acc;
      }
      for (std::size_t ci = 0; ci < g.cin; ++ci) {
        const T* src = in + (n * g.cin + ci) * in_plane;
        T* gsrc = gin ? gin + (n * g.cin + ci) * in_plane : nullptr;
        const T* kk = ker + (co * g.cin + ci) * g.k * g.k;
        T* gk = gker ? gker + (co * g.cin + ci) * g.k * g.k : nullptr;
        for (std::size_t ky = 0; ky < g.k; ++ky) {
          for (std::size_t kx = 0; kx < g.k; ++kx) {
            const T wv = kk[ky * g.k + kx];
            std::size_t lo, hi;
            column_range(g, kx, lo, hi);
            T wacc = 0;
            for (std::size_t oy = 0; oy < g.ho; ++oy) {
              const long iy = static_cast<long>(oy) * g.stride + static_cast<long>(ky) - g.pad;
              if (iy < 0 || iy >= static_cast<long>(g.h)) continue;
              const T* grow = go + oy * g.wo;
              const std::size_t ibase = static_cast<std::size_t>(iy) * g.w;
              for (std::size_t ox = lo; ox < hi; ++ox) {
                const std::size_t ix = ibase + ox * g.stride + kx - g.pad;
                if (gsrc) gsrc[ix] += wv * grow[ox];
                wacc += grow[ox] * src[ix];
              }
            }
            if (gk) gk[ky * g.k + kx] += wacc;
          }
        }
      }
    }
  }
}

void require_rank4(const Shape& s, std::string_view what) {
  if (s.size() != 4) {
    throw std::invalid_argument(
        fmt::format("{}: expected a rank-4 tensor, got shape {}", what, shape_string(s)));
  }
}

}  // namespace

template <typename T>
auto Graph<T>::node(Var v) const -> const Node& {
  if (v.id >= nodes_.size()) throw std::out_of_range("Var does not belong to this graph");
  return nodes_[v.id];
}

template <typename T>
auto Graph<T>::node(Var v) -> Node& {
  if (v.id >= nodes_.size()) throw std::out_of_range("Var does not belong to this graph");
  return nodes_[v.id];
}

template <typename T>
Var Graph<T>::push(Tensor<T> value, std::string_view op, std::vector<std::size_t> parents,
                   std::function<void(Graph&, std::size_t)> backward) {
  Node n;
  n.grad = Tensor<T>(value.shape());
  n.value = std::move(value);
  n.op = op;
  n.requires_grad = std::any_of(parents.begin(), parents.end(),
                                [this](std::size_t p) { return nodes_[p].requires_grad; });
  n.parents = std::move(parents);
  if (n.requires_grad) n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return Var{nodes_.size() - 1};
}

template <typename T>
Var Graph<T>::leaf(Tensor<T> value, bool requires_grad) {
  Node n;
  n.grad = Tensor<T>(value.shape());
  n.value = std::move(value);
  n.op = "leaf";
  n.requires_grad = requires_grad;
  nodes_.push_back(std::move(n));
  return Var{nodes_.size() - 1};
}

template <typename T>
Var Graph<T>::conv2d(Var input, Var kernel, Var bias, int stride, int padding) {
  const Shape& xs = node(input).value.shape();
  const Shape& ks = node(kernel).value.shape();
  const Shape& bs = node(bias).value.shape();
  require_rank4(xs, "conv2d input");
  require_rank4(ks, "conv2d kernel");
  if (stride < 1) throw std::invalid_argument(fmt::format("conv2d: stride must be >= 1, got {}", stride));
  if (padding < 0) throw std::invalid_argument(fmt::format("conv2d: negative padding {}", padding));
  if (ks[2] != ks[3] || ks[2] == 0) {
    throw std::invalid_argument(fmt::format("conv2d: kernel must be square and non-empty, got {}", shape_string(ks)));
  }
  if (xs[1] != ks[1]) {
    throw std::invalid_argument(fmt::format(
        "conv2d: input has {} channels but kernel expects {} (input {}, kernel {})", xs[1], ks[1],
        shape_string(xs), shape_string(ks)));
  }
  if (bs.size() != 1 || bs[0] != ks[0]) {
    throw std::invalid_argument(fmt::format("conv2d: bias shape {} does not match {} output channels",
                                            shape_string(bs), ks[0]));
  }
  const std::size_t k = ks[2];
  const std::size_t ph = xs[2] + 2 * static_cast<std::size_t>(padding);
  const std::size_t pw = xs[3] + 2 * static_cast<std::size_t>(padding);
  if (ph < k || pw < k) {
    throw std::invalid_argument(fmt::format("conv2d: kernel {} larger than padded input {}x{}", k, ph, pw));
  }
  ConvGeometry g{xs[0], xs[1], xs[2], xs[3], ks[0], k,
                 (ph - k) / stride + 1, (pw - k) / stride + 1, stride, padding};
  Tensor<T> out(Shape{g.n, g.cout, g.ho, g.wo});
  conv_forward(g, node(input).value.raw(), node(kernel).value.raw(), node(bias).value.raw(), out.raw());

  const std::size_t xi = input.id, ki = kernel.id, bi = bias.id;
  return push(std::move(out), "conv2d", {xi, ki, bi}, [g, xi, ki, bi](Graph& gr, std::size_t self) {
    Node& x = gr.nodes_[xi];
    Node& kn = gr.nodes_[ki];
    Node& b = gr.nodes_[bi];
    conv_backward(g, x.value.raw(), kn.value.raw(), gr.nodes_[self].grad.raw(),
                  x.requires_grad ? x.grad.raw() : nullptr, kn.requires_grad ? kn.grad.raw() : nullptr,
                  b.requires_grad ? b.grad.raw() : nullptr);
  });
}

template <typename T>
Var Graph<T>::maxpool2d(Var input, int window, int stride) {
  const Tensor<T>& x = node(input).value;
  require_rank4(x.shape(), "maxpool2d input");
  if (window < 1 || stride < 1) {
    throw std::invalid_argument(fmt::format("maxpool2d: window {} and stride {} must be >= 1", window, stride));
  }
  const std::size_t n = x.dim(0), c = x.dim(1), h = x.dim(2), w = x.dim(3);
  const auto s = static_cast<std::size_t>(stride), win = static_cast<std::size_t>(window);
  if (h % s != 0 || w % s != 0) {
    throw std::invalid_argument(
        fmt::format("maxpool2d: spatial size {}x{} is not divisible by stride {}", h, w, stride));
  }
  const std::size_t ho = h / s, wo = w / s;
  if ((ho - 1) * s + win > h || (wo - 1) * s + win > w) {
    throw std::invalid_argument(fmt::format("maxpool2d: window {} overruns input {}x{}", window, h, w));
  }
  Tensor<T> out(Shape{n, c, ho, wo});
  std::vector<std::size_t> argmax(out.size());
  std::size_t oi = 0;
  for (std::size_t plane = 0; plane < n * c; ++plane) {
    const std::size_t base = plane * h * w;
    for (std::size_t oy = 0; oy < ho; ++oy) {
      for (std::size_t ox = 0; ox < wo; ++ox, ++oi) {
        std::size_t best = base + oy * s * w + ox * s;
        for (std::size_t dy = 0; dy < win; ++dy) {
          for (std::size_t dx = 0; dx < win; ++dx) {
            const std::size_t idx = base + (oy * s + dy) * w + ox * s + dx;
            // Strict comparison keeps the first row-major maximum.
            if (x[idx] > x[best]) best = idx;
          }
        }
        argmax[oi] = best;
        out[oi] = x[best];
      }
    }
  }
  const std::size_t xi = input.id;
  return push(std::move(out), "maxpool2d", {xi},
              [xi, argmax = std::move(argmax)](Graph& gr, std::size_t self) {
                const Tensor<T>& go = gr.nodes_[self].grad;
                Tensor<T>& gx = gr.nodes_[xi].grad;
                for (std::size_t i = 0; i < argmax.size(); ++i) gx[argmax[i]] += go[i];
              });
}

template <typename T>
Var Graph<T>::upsample_nearest(Var input, int factor) {
  const Tensor<T>& x = node(input).value;
  require_rank4(x.shape(), "upsample_nearest input");
  if (factor < 1) throw std::invalid_argument(fmt::format("upsample_nearest: factor must be >= 1, got {}", factor));
  const auto f = static_cast<std::size_t>(factor);
  const std::size_t n = x.dim(0), c = x.dim(1), h = x.dim(2), w = x.dim(3);
  Tensor<T> out(Shape{n, c, h * f, w * f});
  const std::size_t wo = w * f;
  for (std::size_t plane = 0; plane < n * c; ++plane) {
    for (std::size_t y = 0; y < h * f; ++y) {
      const T* src = x.raw() + plane * h * w + (y / f) * w;
      T* dst = out.raw() + (plane * h * f + y) * wo;
      for (std::size_t xo = 0; xo < wo; ++xo) dst[xo] = src[xo / f];
    }
  }
  const std::size_t xi = input.id;
  return push(std::move(out), "upsample_nearest", {xi}, [xi, f, n, c, h, w](Graph& gr, std::size_t self) {
    const Tensor<T>& go = gr.nodes_[self].grad;
    Tensor<T>& gx = gr.nodes_[xi].grad;
    const std::size_t wo = w * f;
    for (std::size_t plane = 0; plane < n * c; ++plane) {
      for (std::size_t y = 0; y < h * f; ++y) {
        const T* src = go.raw() + (plane * h * f + y) * wo;
        T* dst = gx.raw() + plane * h * w + (y / f) * w;
        for (std::size_t xo = 0; xo < wo; ++xo) dst[xo / f] += src[xo];
      }
    }
  });
}

template <typename T>
Var Graph<T>::concat_channels(Var a, Var b) {
  const Tensor<T>& ta = node(a).value;
  const Tensor<T>& tb = node(b).value;
  require_rank4(ta.shape(), "concat_channels lhs");
  require_rank4(tb.shape(), "concat_channels rhs");
  if (ta.dim(0) != tb.dim(0) || ta.dim(2) != tb.dim(2) || ta.dim(3) != tb.dim(3)) {
    throw std::invalid_argument(fmt::format("concat_channels: batch/spatial mismatch between {} and {}",
                                            shape_string(ta.shape()), shape_string(tb.shape())));
  }
  const std::size_t n = ta.dim(0), ca = ta.dim(1), cb = tb.dim(1);
  const std::size_t plane = ta.dim(2) * ta.dim(3);
  Tensor<T> out(Shape{n, ca + cb, ta.dim(2), ta.dim(3)});
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(ta.raw() + i * ca * plane, ca * plane, out.raw() + i * (ca + cb) * plane);
    std::copy_n(tb.raw() + i * cb * plane, cb * plane, out.raw() + (i * (ca + cb) + ca) * plane);
  }
  const std::size_t ai = a.id, bi = b.id;
  return push(std::move(out), "concat_channels", {ai, bi}, [=](Graph& gr, std::size_t self) {
    const Tensor<T>& go = gr.nodes_[self].grad;
    Node& na = gr.nodes_[ai];
    Node& nb = gr.nodes_[bi];
    for (std::size_t i = 0; i < n; ++i) {
      const T* src = go.raw() + i * (ca + cb) * plane;
      if (na.requires_grad) {
        T* dst = na.grad.raw() + i * ca * plane;
        for (std::size_t j = 0; j < ca * plane; ++j) dst[j] += src[j];
      }
      if (nb.requires_grad) {
        T* dst = nb.grad.raw() + i * cb * plane;
        for (std::size_t j = 0; j < cb * plane; ++j) dst[j] += src[ca * plane + j];
      }
    }
  });
}

template <typename T>
Var Graph<T>::relu(Var x) {
  Tensor<T> out = node(x).value;
  for (T& v : out.data()) v = v > T{0} ? v : T{0};
  const std::size_t xi = x.id;
  return push(std::move(out), "relu", {xi}, [xi](Graph& gr, std::size_t self) {
    const Tensor<T>& go = gr.nodes_[self].grad;
    const Tensor<T>& xv = gr.nodes_[xi].value;
    Tensor<T>& gx = gr.nodes_[xi].grad;
    for (std::size_t i = 0; i < go.size(); ++i)
      if (xv[i] > T{0}) gx[i] += go[i];
  });
}

template <typename T>
Var Graph<T>::sigmoid(Var x) {
  constexpr T lo = std::numeric_limits<T>::denorm_min();
  const T hi = std::nextafter(T{1}, T{0});
  Tensor<T> out = node(x).value;
  for (T& v : out.data()) {
    const T s = v >= T{0} ? T{1} / (T{1} + std::exp(-v)) : std::exp(v) / (T{1} + std::exp(v));
    v = std::clamp(s, lo, hi);
  }
  const std::size_t xi = x.id;
  return push(std::move(out), "sigmoid", {xi}, [xi](Graph& gr, std::size_t self) {
    const Tensor<T>& go = gr.nodes_[self].grad;
    const Tensor<T>& s = gr.nodes_[self].value;
    Tensor<T>& gx = gr.nodes_[xi].grad;
    for (std::size_t i = 0; i < go.size(); ++i) gx[i] += go[i] * s[i] * (T{1} - s[i]);
  });
}

template <typename T>
Var Graph<T>::add(Var a, Var b) {
  const Tensor<T>& ta = node(a).value;
  const Tensor<T>& tb = node(b).value;
  if (ta.shape() != tb.shape()) {
    throw std::invalid_argument(
        fmt::format("add: shape mismatch {} vs {}", shape_string(ta.shape()), shape_string(tb.shape())));
  }
  Tensor<T> out = ta;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += tb[i];
  const std::size_t ai = a.id, bi = b.id;
  return push(std::move(out), "add", {ai, bi}, [ai, bi](Graph& gr, std::size_t self) {
    const Tensor<T>& go = gr.nodes_[self].grad;
    for (std::size_t p : {ai, bi}) {
      Node& np = gr.nodes_[p];
      if (!np.requires_grad) continue;
      for (std::size_t i = 0; i < go.size(); ++i) np.grad[i] += go[i];
    }
  });
}

template <typename T>
Var Graph<T>::sum(Var x) {
  T acc = 0;
  for (T v : node(x).value.data()) acc += v;
  const std::size_t xi = x.id;
  return push(Tensor<T>::scalar(acc), "sum", {xi}, [xi](Graph& gr, std::size_t self) {
    const T go = gr.nodes_[self].grad[0];
    for (T& g : gr.nodes_[xi].grad.data()) g += go;
  });
}

template <typename T>
Var Graph<T>::mse(Var pred, Var target) {
  return weighted_mse(pred, target, Tensor<T>(node(pred).value.shape(), T{1}));
}

template <typename T>
Var Graph<T>::weighted_mse(Var pred, Var target, const Tensor<T>& weight) {
  const Tensor<T>& p = node(pred).value;
  const Tensor<T>& t = node(target).value;
  if (p.shape() != t.shape()) {
    throw std::invalid_argument(fmt::format("mse: prediction shape {} does not match target shape {}",
                                            shape_string(p.shape()), shape_string(t.shape())));
  }
  if (weight.shape() != p.shape()) {
    throw std::invalid_argument(fmt::format("mse: weight shape {} does not match prediction shape {}",
                                            shape_string(weight.shape()), shape_string(p.shape())));
  }
  if (p.size() == 0) throw std::invalid_argument("mse: empty tensors");
  T wsum = 0, acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const T d = p[i] - t[i];
    acc += weight[i] * d * d;
    wsum += weight[i];
  }
  if (!(wsum > T{0})) throw std::invalid_argument("mse: weights sum to zero");
  const std::size_t pi = pred.id, ti = target.id;
  return push(Tensor<T>::scalar(acc / wsum), "mse", {pi, ti},
              [pi, ti, weight, wsum](Graph& gr, std::size_t self) {
                const T scale = T{2} * gr.nodes_[self].grad[0] / wsum;
                const Tensor<T>& pv = gr.nodes_[pi].value;
                const Tensor<T>& tv = gr.nodes_[ti].value;
                Node& np = gr.nodes_[pi];
                Node& nt = gr.nodes_[ti];
                for (std::size_t i = 0; i < pv.size(); ++i) {
                  const T g = scale * weight[i] * (pv[i] - tv[i]);
                  if (np.requires_grad) np.grad[i] += g;
                  if (nt.requires_grad) nt.grad[i] -= g;
                }
              });
}

template <typename T>
void Graph<T>::backward(Var root) {
  Node& r = node(root);
  if (r.value.size() != 1) {
    throw std::invalid_argument(
        fmt::format("backward: root must be a scalar, got shape {}", shape_string(r.value.shape())));
  }
  r.grad[0] += T{1};
  for (std::size_t i = root.id + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (n.requires_grad && n.backward) n.backward(*this, i);
  }
}

template <typename T>
void Graph<T>::zero_grad() {
  for (Node& n : nodes_) n.grad.fill(T{0});
}

template class Graph<float>;
template class Graph<double>;

}  // namespace splicepaint
