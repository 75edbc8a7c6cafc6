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

#include "splicepaint/image_io.hpp"

#include <png.h>

#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>

namespace splicepaint {
namespace {

using Kind = ImageIoError::Kind;

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError(Kind::kIo, fmt::format("cannot open '{}'", path.string()));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool is_png(const std::vector<std::uint8_t>& bytes) {
  return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

bool is_ppm(const std::vector<std::uint8_t>& bytes) {
  return bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6';
}

// Decodes into 8-bit pixels of the requested simplified-API format.
std::vector<std::uint8_t> decode_png(const std::vector<std::uint8_t>& bytes, std::uint32_t format,
                                     const std::filesystem::path& path, int& height, int& width) {
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&img, bytes.data(), bytes.size())) {
    const std::string msg = img.message;
    png_image_free(&img);
    throw ImageIoError(Kind::kTruncated, fmt::format("'{}': corrupt PNG header: {}", path.string(), msg));
  }
  img.format = format;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, pixels.data(), 0, nullptr)) {
    const std::string msg = img.message;
    png_image_free(&img);
    throw ImageIoError(Kind::kTruncated, fmt::format("'{}': truncated or corrupt PNG: {}", path.string(), msg));
  }
  height = static_cast<int>(img.height);
  width = static_cast<int>(img.width);
  return pixels;
}

void encode_png(const std::uint8_t* pixels, int height, int width, std::uint32_t format,
                const std::filesystem::path& path) {
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(width);
  img.height = static_cast<png_uint_32>(height);
  img.format = format;
  if (!png_image_write_to_file(&img, path.c_str(), 0, pixels, 0, nullptr)) {
    const std::string msg = img.message;
    png_image_free(&img);
    throw ImageIoError(Kind::kIo, fmt::format("cannot write '{}': {}", path.string(), msg));
  }
}

// Skips whitespace and '#' comments in a PPM header.
std::size_t skip_ppm_space(const std::vector<std::uint8_t>& b, std::size_t pos) {
  while (pos < b.size()) {
    if (b[pos] == '#') {
      while (pos < b.size() && b[pos] != '\n') ++pos;
    } else if (std::isspace(b[pos])) {
      ++pos;
    } else {
      break;
    }
  }
  return pos;
}

long read_ppm_int(const std::vector<std::uint8_t>& b, std::size_t& pos, const std::filesystem::path& path) {
  pos = skip_ppm_space(b, pos);
  if (pos >= b.size()) throw ImageIoError(Kind::kTruncated, fmt::format("'{}': truncated PPM header", path.string()));
  long v = 0;
  std::size_t start = pos;
  while (pos < b.size() && std::isdigit(b[pos])) {
    v = v * 10 + (b[pos] - '0');
    if (v > 1'000'000) throw ImageIoError(Kind::kUnsupportedFormat, fmt::format("'{}': PPM dimension too large", path.string()));
    ++pos;
  }
  if (pos == start) throw ImageIoError(Kind::kUnsupportedFormat, fmt::format("'{}': malformed PPM header", path.string()));
  return v;
}

Image decode_ppm(const std::vector<std::uint8_t>& b, const std::filesystem::path& path) {
  std::size_t pos = 2;
  const long w = read_ppm_int(b, pos, path);
  const long h = read_ppm_int(b, pos, path);
  const long maxval = read_ppm_int(b, pos, path);
  if (maxval != 255) {
    throw ImageIoError(Kind::kUnsupportedFormat,
                       fmt::format("'{}': only 8-bit PPM (maxval 255) is supported, got {}", path.string(), maxval));
  }
  if (pos >= b.size() || !std::isspace(b[pos]))
    throw ImageIoError(Kind::kTruncated, fmt::format("'{}': truncated PPM header", path.string()));
  ++pos;
  const std::size_t need = static_cast<std::size_t>(w) * h * 3;
  if (b.size() - pos < need) {
    throw ImageIoError(Kind::kTruncated, fmt::format("'{}': truncated PPM payload ({} of {} bytes)",
                                                     path.string(), b.size() - pos, need));
  }
  Image out(static_cast<int>(h), static_cast<int>(w));
  auto dst = out.data();
  for (std::size_t i = 0; i < need; ++i) dst[i] = b[pos + i] / 255.0f;
  return out;
}

bool wants_ppm(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".ppm";
}

}  // namespace

std::uint8_t quantize_unit(float v) {
  if (!(v > 0.0f)) return 0;
  const double scaled = std::floor(static_cast<double>(v) * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::min(scaled, 255.0));
}

Image load_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (is_png(bytes)) {
    int h = 0, w = 0;
    const auto px = decode_png(bytes, PNG_FORMAT_RGB, path, h, w);
    Image out(h, w);
    auto dst = out.data();
    for (std::size_t i = 0; i < px.size(); ++i) dst[i] = px[i] / 255.0f;
    return out;
  }
  if (is_ppm(bytes)) return decode_ppm(bytes, path);
  throw ImageIoError(Kind::kUnsupportedFormat,
                     fmt::format("'{}': unsupported image format (expected PNG or binary PPM)", path.string()));
}

void save_image(const Image& image, const std::filesystem::path& path) {
  std::vector<std::uint8_t> px(image.data().size());
  std::transform(image.data().begin(), image.data().end(), px.begin(), quantize_unit);
  if (wants_ppm(path)) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ImageIoError(Kind::kIo, fmt::format("cannot write '{}'", path.string()));
    out << "P6\n" << image.width() << ' ' << image.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
    if (!out) throw ImageIoError(Kind::kIo, fmt::format("write failed for '{}'", path.string()));
    return;
  }
  encode_png(px.data(), image.height(), image.width(), PNG_FORMAT_RGB, path);
}

Gray8 load_gray8(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (!is_png(bytes)) {
    throw ImageIoError(Kind::kUnsupportedFormat, fmt::format("'{}': expected a grayscale PNG", path.string()));
  }
  Gray8 g;
  g.pixels = decode_png(bytes, PNG_FORMAT_GRAY, path, g.height, g.width);
  return g;
}

void save_gray8(const Gray8& image, const std::filesystem::path& path) {
  if (image.pixels.size() != static_cast<std::size_t>(image.height) * image.width)
    throw std::invalid_argument("save_gray8: pixel buffer does not match dimensions");
  encode_png(image.pixels.data(), image.height, image.width, PNG_FORMAT_GRAY, path);
}

}  // namespace splicepaint
