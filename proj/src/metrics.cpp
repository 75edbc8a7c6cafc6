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

#include "splicepaint/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

namespace splicepaint {
namespace {

std::array<double, kSsimWindow> gaussian_taps() {
  std::array<double, kSsimWindow> g{};
  double total = 0;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double u = i - kSsimWindow / 2;
    g[i] = std::exp(-(u * u) / (2 * kSsimSigma * kSsimSigma));
    total += g[i];
  }
  for (double& v : g) v /= total;
  return g;
}

// Separable "valid" filtering: output is (h - 10) x (w - 10).
std::vector<double> filter_valid(const std::vector<double>& src, int h, int w,
                                 const std::array<double, kSsimWindow>& g) {
  const int ow = w - kSsimWindow + 1, oh = h - kSsimWindow + 1;
  std::vector<double> rows(static_cast<std::size_t>(h) * ow);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < ow; ++x) {
      double acc = 0;
      for (int k = 0; k < kSsimWindow; ++k) acc += g[k] * src[static_cast<std::size_t>(y) * w + x + k];
      rows[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  std::vector<double> out(static_cast<std::size_t>(oh) * ow);
  for (int y = 0; y < oh; ++y)
    for (int x = 0; x < ow; ++x) {
      double acc = 0;
      for (int k = 0; k < kSsimWindow; ++k) acc += g[k] * rows[static_cast<std::size_t>(y + k) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  return out;
}

std::string csv_field(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

}  // namespace

double psnr(std::span<const float> a, std::span<const float> b, double max_val) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(fmt::format("psnr: size mismatch {} vs {}", a.size(), b.size()));
  }
  if (!(max_val > 0)) throw std::invalid_argument("psnr: max_val must be positive");
  if (a.empty()) throw std::invalid_argument("psnr: empty input");
  double acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    acc += d * d;
  }
  if (acc == 0) return std::numeric_limits<double>::infinity();
  const double mse = acc / static_cast<double>(a.size());
  return 10.0 * std::log10(max_val * max_val / mse);
}

double psnr(const Image& a, const Image& b, double max_val) {
  if (!a.same_size(b)) {
    throw std::invalid_argument(
        fmt::format("psnr: image sizes differ ({}x{} vs {}x{})", a.height(), a.width(), b.height(), b.width()));
  }
  return psnr(a.data(), b.data(), max_val);
}

double ssim_plane(std::span<const double> a, std::span<const double> b, int h, int w) {
  if (a.size() != b.size() || a.size() != static_cast<std::size_t>(h) * w) {
    throw std::invalid_argument("ssim: plane sizes do not match");
  }
  if (h < kSsimWindow || w < kSsimWindow) {
    throw std::invalid_argument(
        fmt::format("ssim: {}x{} image is smaller than the {}x{} window", h, w, kSsimWindow, kSsimWindow));
  }
  constexpr double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
  const auto g = gaussian_taps();
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto mx = filter_valid(x, h, w, g), my = filter_valid(y, h, w, g);
  const auto sxx = filter_valid(xx, h, w, g), syy = filter_valid(yy, h, w, g), sxy = filter_valid(xy, h, w, g);
  double total = 0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = sxx[i] - mx[i] * mx[i];
    const double vy = syy[i] - my[i] * my[i];
    const double cov = sxy[i] - mx[i] * my[i];
    total += ((2 * mx[i] * my[i] + c1) * (2 * cov + c2)) /
             ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
  }
  return total / static_cast<double>(mx.size());
}

std::vector<double> luminance(const Image& image) {
  std::vector<double> y(image.pixel_count());
  const auto d = image.data();
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = 0.299 * d[3 * i] + 0.587 * d[3 * i + 1] + 0.114 * d[3 * i + 2];
  return y;
}

double ssim(const Image& a, const Image& b) {
  if (!a.same_size(b)) {
    throw std::invalid_argument(
        fmt::format("ssim: image sizes differ ({}x{} vs {}x{})", a.height(), a.width(), b.height(), b.width()));
  }
  return ssim_plane(luminance(a), luminance(b), a.height(), a.width());
}

MetricPair compare(const Image& restored, const Image& clean) {
  return {psnr(restored, clean), ssim(restored, clean)};
}

EvalAggregate aggregate(std::span<const EvalRow> rows, const std::string& method, const std::string& regime,
                        const std::string& dataset) {
  std::vector<const EvalRow*> picked;
  for (const EvalRow& r : rows)
    if (r.method == method && r.regime == regime) picked.push_back(&r);
  std::stable_sort(picked.begin(), picked.end(),
                   [](const EvalRow* l, const EvalRow* r) { return l->image_id < r->image_id; });
  EvalAggregate agg{method, regime, dataset};
  agg.rows = picked.size();
  double psnr_sum = 0, ssim_sum = 0;
  std::size_t psnr_n = 0, ssim_n = 0;
  for (const EvalRow* r : picked) {
    if (!r->error.empty()) {
      ++agg.failed;
      continue;
    }
    if (std::isinf(r->psnr_db)) {
      ++agg.infinite_psnr;
    } else {
      psnr_sum += r->psnr_db;
      ++psnr_n;
    }
    ssim_sum += r->ssim;
    ++ssim_n;
  }
  if (psnr_n > 0) {
    agg.mean_psnr = psnr_sum / static_cast<double>(psnr_n);
  } else if (agg.infinite_psnr > 0) {
    agg.mean_psnr = std::numeric_limits<double>::infinity();
  }
  if (ssim_n > 0) agg.mean_ssim = ssim_sum / static_cast<double>(ssim_n);
  return agg;
}

EvalReport evaluate_dataset(std::span<const EvalPair> pairs, const std::string& method, const std::string& regime,
                            const std::string& dataset) {
  if (pairs.empty()) throw std::invalid_argument("evaluate_dataset: no image pairs");
  std::set<std::string> ids;
  EvalReport report;
  for (const EvalPair& p : pairs) {
    if (!ids.insert(p.id).second) throw std::invalid_argument(fmt::format("evaluate_dataset: duplicate id '{}'", p.id));
    const MetricPair m = compare(p.restored, p.clean);
    report.rows.push_back({p.id, method, regime, m.psnr_db, m.ssim, {}});
  }
  report.aggregates.push_back(aggregate(report.rows, method, regime, dataset));
  return report;
}

std::string format_metric(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.6f}", v);
}

void write_csv(const EvalReport& report, std::ostream& out, bool with_errors) {
  out << "image_id,method,regime,psnr_db,ssim" << (with_errors ? ",errors" : "") << '\n';
  for (const EvalRow& r : report.rows) {
    out << csv_field(r.image_id) << ',' << csv_field(r.method) << ',' << csv_field(r.regime) << ','
        << format_metric(r.psnr_db) << ',' << format_metric(r.ssim);
    if (with_errors) out << ',' << csv_field(r.error);
    out << '\n';
  }
  for (const EvalAggregate& a : report.aggregates) {
    out << "__mean__," << csv_field(a.method) << ',' << csv_field(a.regime) << ',' << format_metric(a.mean_psnr)
        << ',' << format_metric(a.mean_ssim);
    if (with_errors) out << ',' << (a.failed ? fmt::format("{} failed", a.failed) : "");
    out << '\n';
    if (a.infinite_psnr > 0) {
      out << "__inf_count__," << csv_field(a.method) << ',' << csv_field(a.regime) << ',' << a.infinite_psnr << ',';
      if (with_errors) out << ',';
      out << '\n';
    }
  }
}

}  // namespace splicepaint
