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

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "splicepaint/interp.hpp"
#include "splicepaint/mask.hpp"
#include "splicepaint/network.hpp"
#include "splicepaint/train.hpp"

namespace splicepaint {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything a run needs, read from one JSON document. Every section is
// optional; unknown keys anywhere are an error.
//
//   {
//     "network":   {"depth", "base_channels", "input_size": [h, w],
//                   "input_channels", "kernel_size", "seed"},
//     "training":  {"epochs", "batch_size", "seed", "regime", "fill",
//                   "masked_loss", "validate_every"},
//     "optimizer": {"lr", "beta1", "beta2", "epsilon"},
//     "augment":   {"flip_probability", "rotate_probability"},
//     "regimes":   {"narrow"|"variable"|"thick":
//                   {"lines": [lo, hi], "vertices": [lo, hi], "width": [lo, hi]}},
//     "baseline":  {"scales": [...]}
//   }
struct RunConfig {
  NetworkConfig network;
  TrainOptions training;
  // Regime parameters by name; starts with the three defaults.
  std::map<std::string, MaskRegime, std::less<>> regimes;
  BaselineConfig baseline;

  RunConfig();

  // Named regime, with any overrides applied. Throws ConfigError for an
  // unknown name.
  MaskRegime regime(std::string_view name) const;
  void validate() const;
};

RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

nlohmann::json network_config_to_json(const NetworkConfig& config);
NetworkConfig network_config_from_json(const nlohmann::json& j);

}  // namespace splicepaint
