// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infercost/hardware.hpp"

namespace infercost {

// Named collections of devices and models. Names are unique within each
// collection; insertion order is preserved for stable serialization.
class DeviceRegistry {
 public:
  void add_device(HardwareSpec spec);
  void add_model(ModelConfig model);
  // Adds everything from `other`; a name present in both is an error.
  void merge(const DeviceRegistry& other);

  const HardwareSpec& device(std::string_view name) const;
  const ModelConfig& model(std::string_view name) const;
  const HardwareSpec* find_device(std::string_view name) const noexcept;
  const ModelConfig* find_model(std::string_view name) const noexcept;

  std::span<const HardwareSpec> devices() const noexcept { return devices_; }
  std::span<const ModelConfig> models() const noexcept { return models_; }
  bool empty() const noexcept { return devices_.empty() && models_.empty(); }

  bool operator==(const DeviceRegistry&) const = default;

 private:
  std::vector<HardwareSpec> devices_;
  std::vector<ModelConfig> models_;
};

// Registry documents are JSON with `//` and `/* */` comments allowed:
//
//   {
//     "devices": [ { "name": "gaudi2", "peak_tflops": { "fp8-e4m3-g2": 865 },
//                    "hbm_bandwidth": 2.4, "tdp": 600, "vector_peak_tflops": 11 } ],
//     "models":  [ { "name": "llama31-8b", "layers": 32, "hidden": 4096,
//                    "intermediate_ratio": 3.5, "head_size": 128, "gqa_group": 4,
//                    "vocab": 128256 } ]
//   }
//
// Both arrays are optional. Unknown and duplicate keys are rejected. `null`
// marks a value the source does not state. Errors carry the source name and
// either the line (syntax errors) or the JSON path of the offending field.
DeviceRegistry parse_registry(std::string_view text, const std::string& source = "<registry>");
DeviceRegistry load_registry(const std::filesystem::path& path);

// Canonical document; parse_registry(serialize_registry(r)) == r.
std::string serialize_registry(const DeviceRegistry& registry);

}  // namespace infercost
