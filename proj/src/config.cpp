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

#include "splicepaint/config.hpp"

#include <fstream>
#include <initializer_list>

#include <fmt/format.h>

namespace splicepaint {
namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
  if (!obj.is_object()) throw ConfigError(fmt::format("{}: expected a JSON object", where));
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(fmt::format("{}: unknown key '{}'", where, key));
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out, std::string_view where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("{}.{}: {}", where, key, e.what()));
  }
}

void read_range(const json& obj, const char* key, int& lo, int& hi, std::string_view where) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
    throw ConfigError(fmt::format("{}.{}: expected [lo, hi] integers", where, key));
  lo = v[0].get<int>();
  hi = v[1].get<int>();
}

}  // namespace

json network_config_to_json(const NetworkConfig& c) {
  return {{"depth", c.depth},
          {"base_channels", c.base_channels},
          {"input_size", {c.input_height, c.input_width}},
          {"input_channels", c.input_channels},
          {"kernel_size", c.kernel_size},
          {"seed", c.seed}};
}

NetworkConfig network_config_from_json(const json& j) {
  constexpr std::string_view where = "network";
  check_keys(j, {"depth", "base_channels", "input_size", "input_channels", "kernel_size", "seed"}, where);
  NetworkConfig c;
  read(j, "depth", c.depth, where);
  read(j, "base_channels", c.base_channels, where);
  read_range(j, "input_size", c.input_height, c.input_width, where);
  read(j, "input_channels", c.input_channels, where);
  read(j, "kernel_size", c.kernel_size, where);
  read(j, "seed", c.seed, where);
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

RunConfig::RunConfig() {
  for (const auto& r : {MaskRegime::narrow_center(), MaskRegime::variable(), MaskRegime::thick()})
    regimes.emplace(std::string(r.name()), r);
}

MaskRegime RunConfig::regime(std::string_view name) const {
  const auto it = regimes.find(name);
  if (it == regimes.end())
    throw ConfigError(fmt::format("unknown mask regime '{}' (expected narrow, variable or thick)", name));
  return it->second;
}

void RunConfig::validate() const {
  try {
    network.validate();
    training.validate();
    baseline.validate();
    for (const auto& [_, r] : regimes) r.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RunConfig parse_run_config(const json& doc) {
  check_keys(doc, {"network", "training", "optimizer", "augment", "regimes", "baseline"}, "config");
  RunConfig rc;
  if (doc.contains("network")) rc.network = network_config_from_json(doc["network"]);

  if (doc.contains("regimes")) {
    const json& rj = doc["regimes"];
    check_keys(rj, {"narrow", "variable", "thick"}, "regimes");
    for (const auto& [name, spec] : rj.items()) {
      const std::string where = "regimes." + name;
      check_keys(spec, {"lines", "vertices", "width"}, where);
      MaskRegime& r = rc.regimes.at(name);
      read_range(spec, "lines", r.min_lines, r.max_lines, where);
      read_range(spec, "vertices", r.min_vertices, r.max_vertices, where);
      read_range(spec, "width", r.min_width, r.max_width, where);
    }
  }

  TrainOptions& t = rc.training;
  if (doc.contains("training")) {
    const json& tj = doc["training"];
    constexpr std::string_view where = "training";
    check_keys(tj, {"epochs", "batch_size", "seed", "regime", "fill", "masked_loss", "validate_every"}, where);
    read(tj, "epochs", t.epochs, where);
    read(tj, "batch_size", t.batch_size, where);
    read(tj, "seed", t.seed, where);
    read(tj, "fill", t.fill, where);
    read(tj, "masked_loss", t.masked_loss, where);
    read(tj, "validate_every", t.validate_every, where);
    std::string regime = "variable";
    read(tj, "regime", regime, where);
    t.regime = rc.regime(regime);
  } else {
    t.regime = rc.regime("variable");
  }
  if (doc.contains("optimizer")) {
    constexpr std::string_view where = "optimizer";
    check_keys(doc["optimizer"], {"lr", "beta1", "beta2", "epsilon"}, where);
    read(doc["optimizer"], "lr", t.optimizer.lr, where);
    read(doc["optimizer"], "beta1", t.optimizer.beta1, where);
    read(doc["optimizer"], "beta2", t.optimizer.beta2, where);
    read(doc["optimizer"], "epsilon", t.optimizer.epsilon, where);
  }
  if (doc.contains("augment")) {
    constexpr std::string_view where = "augment";
    check_keys(doc["augment"], {"flip_probability", "rotate_probability"}, where);
    read(doc["augment"], "flip_probability", t.augment.flip_probability, where);
    read(doc["augment"], "rotate_probability", t.augment.rotate_probability, where);
  }
  if (doc.contains("baseline")) {
    check_keys(doc["baseline"], {"scales"}, "baseline");
    read(doc["baseline"], "scales", rc.baseline.scales, "baseline");
  }
  rc.validate();
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("config '{}' is not valid JSON: {}", path.string(), e.what()));
  }
  return parse_run_config(doc);
}

}  // namespace splicepaint
