// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "infercost/data_format.hpp"

namespace infercost {

// Datasheet view of one accelerator (or server). Immutable after
// construction; the constructor enforces positivity of every number.
class HardwareSpec {
 public:
  HardwareSpec(std::string name, std::map<DataFormat, double> peak_tflops, double tdp_watts,
               std::optional<double> hbm_bandwidth_tbps = std::nullopt,
               std::optional<double> vector_peak_tflops = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  const std::map<DataFormat, double>& peaks() const noexcept { return peak_tflops_; }
  double tdp_watts() const noexcept { return tdp_watts_; }
  const std::optional<double>& hbm_bandwidth_tbps() const noexcept { return hbm_bandwidth_tbps_; }
  const std::optional<double>& vector_peak_tflops() const noexcept { return vector_peak_tflops_; }

  std::optional<double> peak_tflops(DataFormat fmt) const noexcept;
  // Throws NotFound when the device has no stated peak for `fmt`.
  double require_peak_tflops(DataFormat fmt) const;
  // Throws Unavailable when the bandwidth was not supplied.
  double require_bandwidth_tbps() const;

  bool operator==(const HardwareSpec&) const = default;

 private:
  std::string name_;
  std::map<DataFormat, double> peak_tflops_;
  double tdp_watts_;
  std::optional<double> hbm_bandwidth_tbps_;
  std::optional<double> vector_peak_tflops_;
};

// Llama-family decoder architecture.
//
//   layers            l
//   hidden            h
//   intermediate_ratio a   (MLP width is a*h and must be an integer)
//   head_size         d    (head count H = h/d)
//   gqa_group         g    (query heads per KV head; H divisible by g)
//   vocab             v
class ModelConfig {
 public:
  ModelConfig(std::string name, std::uint64_t layers, std::uint64_t hidden,
              double intermediate_ratio, std::uint64_t head_size, std::uint64_t gqa_group,
              std::uint64_t vocab);

  const std::string& name() const noexcept { return name_; }
  std::uint64_t layers() const noexcept { return layers_; }
  std::uint64_t hidden() const noexcept { return hidden_; }
  double intermediate_ratio() const noexcept { return intermediate_ratio_; }
  std::uint64_t head_size() const noexcept { return head_size_; }
  std::uint64_t gqa_group() const noexcept { return gqa_group_; }
  std::uint64_t vocab() const noexcept { return vocab_; }

  std::uint64_t heads() const noexcept { return hidden_ / head_size_; }
  std::uint64_t kv_heads() const noexcept { return heads() / gqa_group_; }
  // Width of the K (or V) projection output: h/g.
  std::uint64_t kv_dim() const noexcept { return kv_heads() * head_size_; }
  std::uint64_t intermediate_size() const noexcept { return intermediate_size_; }

  // A = 3a + 2 + 2/g.
  double model_constant() const noexcept;

  // Weight elements of the linear layers of one block; equals A*h^2 exactly.
  std::uint64_t linear_weights_per_layer() const;

  bool operator==(const ModelConfig&) const = default;

 private:
  std::string name_;
  std::uint64_t layers_;
  std::uint64_t hidden_;
  double intermediate_ratio_;
  std::uint64_t head_size_;
  std::uint64_t gqa_group_;
  std::uint64_t vocab_;
  std::uint64_t intermediate_size_;
};

// Peak throughput per watt of TDP.
double tflops_per_watt(const HardwareSpec& spec, DataFormat fmt);

// Generation-over-generation efficiency gain in percent, from unrounded
// efficiencies.
double efficiency_increase_exact(const HardwareSpec& prev, const HardwareSpec& cur,
                                 DataFormat prev_fmt, DataFormat cur_fmt);

// Same, rounded half away from zero to an integer percent.
long efficiency_increase(const HardwareSpec& prev, const HardwareSpec& cur, DataFormat prev_fmt,
                         DataFormat cur_fmt);
inline long efficiency_increase(const HardwareSpec& prev, const HardwareSpec& cur,
                                DataFormat fmt) {
  return efficiency_increase(prev, cur, fmt, fmt);
}

}  // namespace infercost
