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

#include "splicepaint/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include <fmt/format.h>
#include "json.hpp"

#include "splicepaint/config.hpp"

namespace splicepaint {
namespace {

using Kind = CheckpointError::Kind;
using nlohmann::json;

template <typename U>
void put_le(std::vector<std::uint8_t>& out, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

template <typename U>
U get_le(const std::uint8_t* p) {
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(p[i]) << (8 * i);
  return v;
}

}  // namespace

std::vector<std::uint8_t> serialize_checkpoint(const Network& net) {
  json tensors = json::array();
  for (const auto& p : net.params())
    tensors.push_back({{"name", p.name}, {"shape", p.value.shape()}, {"dtype", "f32"}});
  const json header = {{"config", network_config_to_json(net.config())}, {"tensors", tensors}};
  const std::string text = header.dump();

  std::vector<std::uint8_t> out(std::begin(kCheckpointMagic), std::end(kCheckpointMagic));
  put_le<std::uint32_t>(out, kCheckpointVersion);
  put_le<std::uint64_t>(out, text.size());
  out.insert(out.end(), text.begin(), text.end());
  out.reserve(out.size() + 4 * net.parameter_count());
  for (const auto& p : net.params())
    for (float v : p.value.data()) put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

Network deserialize_checkpoint(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kCheckpointMagic, 4) != 0)
    throw CheckpointError(Kind::kBadMagic, "checkpoint: bad magic");
  if (bytes.size() < 16) throw CheckpointError(Kind::kTruncatedPayload, "checkpoint: truncated payload (preamble)");
  const auto version = get_le<std::uint32_t>(bytes.data() + 4);
  if (version != kCheckpointVersion)
    throw CheckpointError(Kind::kVersionMismatch,
                          fmt::format("checkpoint: version mismatch (file {}, supported {})", version, kCheckpointVersion));
  const auto header_len = get_le<std::uint64_t>(bytes.data() + 8);
  if (header_len > bytes.size() - 16)
    throw CheckpointError(Kind::kTruncatedPayload, "checkpoint: truncated payload (header)");

  json header;
  try {
    header = json::parse(bytes.begin() + 16, bytes.begin() + 16 + static_cast<std::ptrdiff_t>(header_len));
  } catch (const json::exception& e) {
    throw CheckpointError(Kind::kHeaderMismatch, fmt::format("checkpoint: malformed header: {}", e.what()));
  }

  NetworkConfig config;
  std::vector<ParamSpec> layout;
  try {
    config = network_config_from_json(header.at("config"));
    layout = parameter_layout(config);
  } catch (const std::exception& e) {
    throw CheckpointError(Kind::kHeaderMismatch, fmt::format("checkpoint: bad config in header: {}", e.what()));
  }
  if (!header.contains("tensors") || !header["tensors"].is_array())
    throw CheckpointError(Kind::kHeaderMismatch, "checkpoint: header has no tensor list");
  const json& list = header["tensors"];
  if (list.size() != layout.size())
    throw CheckpointError(Kind::kHeaderMismatch, fmt::format("checkpoint: header lists {} tensors, config implies {}",
                                                             list.size(), layout.size()));

  std::size_t offset = 16 + static_cast<std::size_t>(header_len);
  std::vector<NamedTensor> params;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string name, dtype;
    Shape shape;
    try {
      name = list[i].at("name").get<std::string>();
      dtype = list[i].at("dtype").get<std::string>();
      shape = list[i].at("shape").get<Shape>();
    } catch (const json::exception& e) {
      throw CheckpointError(Kind::kHeaderMismatch, fmt::format("checkpoint: tensor entry {}: {}", i, e.what()));
    }
    if (dtype != "f32")
      throw CheckpointError(Kind::kHeaderMismatch, fmt::format("checkpoint: tensor '{}' has dtype {}, expected f32", name, dtype));
    if (name != layout[i].name || shape != layout[i].shape)
      throw CheckpointError(Kind::kHeaderMismatch,
                            fmt::format("checkpoint: tensor {} is '{}' {}, config implies '{}' {}", i, name,
                                        shape_string(shape), layout[i].name, shape_string(layout[i].shape)));
    const std::size_t count = shape_size(shape);
    if ((bytes.size() - offset) / 4 < count)
      throw CheckpointError(Kind::kTruncatedPayload, fmt::format("checkpoint: truncated payload in tensor '{}'", name));
    std::vector<float> data(count);
    for (std::size_t j = 0; j < count; ++j, offset += 4)
      data[j] = std::bit_cast<float>(get_le<std::uint32_t>(bytes.data() + offset));
    params.push_back({name, Tensor<float>(shape, std::move(data))});
  }
  if (offset != bytes.size())
    throw CheckpointError(Kind::kTrailingData,
                          fmt::format("checkpoint: {} unexpected bytes after the payload", bytes.size() - offset));
  return Network(config, std::move(params));
}

void save_checkpoint(const Network& net, const std::filesystem::path& path) {
  const auto bytes = serialize_checkpoint(net);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError(Kind::kIo, fmt::format("cannot write checkpoint '{}'", path.string()));
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CheckpointError(Kind::kIo, fmt::format("write failed for checkpoint '{}'", path.string()));
}

Network load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError(Kind::kIo, fmt::format("cannot open checkpoint '{}'", path.string()));
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return deserialize_checkpoint(bytes);
}

}  // namespace splicepaint
