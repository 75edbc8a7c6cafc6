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
#include <string>
#include <vector>

#include "splicepaint/network.hpp"

namespace splicepaint {

// Layout, all integers little-endian:
//   "SPNT" | u32 version | u64 header length | UTF-8 JSON header | payload
// The header holds the NetworkConfig and an ordered list of
// {name, shape, dtype}; the payload is each tensor's f32 data in that order.
inline constexpr char kCheckpointMagic[4] = {'S', 'P', 'N', 'T'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  enum class Kind { kBadMagic, kVersionMismatch, kTruncatedPayload, kHeaderMismatch, kTrailingData, kIo };

  CheckpointError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::vector<std::uint8_t> serialize_checkpoint(const Network& net);
Network deserialize_checkpoint(const std::vector<std::uint8_t>& bytes);

void save_checkpoint(const Network& net, const std::filesystem::path& path);
Network load_checkpoint(const std::filesystem::path& path);

}  // namespace splicepaint
