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

#include "splicepaint/dataset.hpp"

#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "splicepaint/image_io.hpp"
#include "splicepaint/rng.hpp"

namespace splicepaint {

Manifest read_manifest(const std::filesystem::path& file, Split split) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error(fmt::format("cannot open manifest '{}'", file.string()));
  Manifest m;
  m.split = split;
  std::set<std::filesystem::path> seen;
  const auto base = file.parent_path();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::filesystem::path p = line.substr(first, last - first + 1);
    if (p.is_relative()) p = base / p;
    p = p.lexically_normal();
    if (!seen.insert(p).second) {
      throw std::runtime_error(
          fmt::format("manifest '{}' line {}: duplicate entry '{}'", file.string(), lineno, p.string()));
    }
    m.paths.push_back(std::move(p));
  }
  return m;
}

std::vector<Image> load_images(const Manifest& manifest, int height, int width) {
  std::vector<Image> out;
  out.reserve(manifest.size());
  for (const auto& p : manifest.paths) out.push_back(resize(load_image(p), height, width));
  return out;
}

std::string image_id(const std::filesystem::path& path) { return path.stem().string(); }

std::vector<Batch> make_batches(std::size_t count, std::size_t batch_size, std::uint64_t epoch,
                                std::uint64_t seed) {
  if (batch_size < 1) throw std::invalid_argument("make_batches: batch_size must be >= 1");
  if (count == 0) throw std::invalid_argument("make_batches: empty dataset");
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed({seed, epoch, 0x73687566}));
  for (std::size_t i = count - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i)));
    std::swap(order[i], order[j]);
  }
  std::vector<Batch> batches;
  for (std::size_t start = 0; start < count; start += batch_size) {
    Batch b;
    for (std::size_t i = start; i < std::min(count, start + batch_size); ++i)
      b.push_back({order[i], derive_seed({seed, epoch, order[i]})});
    batches.push_back(std::move(b));
  }
  return batches;
}

}  // namespace splicepaint
