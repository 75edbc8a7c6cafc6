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

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "splicepaint/image.hpp"

namespace splicepaint {

class ImageIoError : public std::runtime_error {
 public:
  enum class Kind { kUnsupportedFormat, kTruncated, kIo };

  ImageIoError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Reads an 8-bit PNG (any colour type, converted to RGB) or a binary PPM (P6,
// maxval 255). Bytes map to [0, 1] by v / 255.
Image load_image(const std::filesystem::path& path);

// Writes an 8-bit RGB PNG, or a P6 PPM when the extension is ".ppm".
// Values are quantised by round(v * 255) clamped to [0, 255].
void save_image(const Image& image, const std::filesystem::path& path);

std::uint8_t quantize_unit(float v);

struct Gray8 {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> pixels;
};

Gray8 load_gray8(const std::filesystem::path& path);
void save_gray8(const Gray8& image, const std::filesystem::path& path);

}  // namespace splicepaint
