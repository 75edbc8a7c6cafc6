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
#include <string>
#include <vector>

#include "splicepaint/image.hpp"

namespace splicepaint {

enum class Split { kTrain, kVal, kTest };

// Ordered, duplicate-free list of image files. Relative entries are resolved
// against the manifest file's directory.
struct Manifest {
  std::vector<std::filesystem::path> paths;
  Split split = Split::kTrain;

  std::size_t size() const { return paths.size(); }
};

// Newline-delimited paths; blank lines and lines starting with '#' are
// skipped. Duplicate entries are rejected.
Manifest read_manifest(const std::filesystem::path& file, Split split = Split::kTrain);

// Loads every manifest entry and resizes it to height x width.
std::vector<Image> load_images(const Manifest& manifest, int height, int width);

// Stable identifier for a manifest entry (its file stem).
std::string image_id(const std::filesystem::path& path);

struct BatchItem {
  std::size_t index;          // position in the manifest
  std::uint64_t sample_seed;  // drives augmentation and masking for this draw
};
using Batch = std::vector<BatchItem>;

// Shuffles [0, count) with a permutation keyed by (seed, epoch) and cuts it
// into batches; the final short batch is kept. Each item's sample seed is a
// hash of (seed, epoch, index), so it does not depend on batch layout.
std::vector<Batch> make_batches(std::size_t count, std::size_t batch_size, std::uint64_t epoch,
                                std::uint64_t seed);

inline std::vector<Batch> make_batches(const Manifest& manifest, std::size_t batch_size,
                                       std::uint64_t epoch, std::uint64_t seed) {
  return make_batches(manifest.size(), batch_size, epoch, seed);
}

}  // namespace splicepaint
