// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include "infercost/hardware.hpp"

#include <cmath>
#include <utility>

#include "infercost/checked.hpp"
#include "infercost/error.hpp"

namespace infercost {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

HardwareSpec::HardwareSpec(std::string name, std::map<DataFormat, double> peak_tflops,
                           double tdp_watts, std::optional<double> hbm_bandwidth_tbps,
                           std::optional<double> vector_peak_tflops)
    : name_(std::move(name)),
      peak_tflops_(std::move(peak_tflops)),
      tdp_watts_(tdp_watts),
      hbm_bandwidth_tbps_(hbm_bandwidth_tbps),
      vector_peak_tflops_(vector_peak_tflops) {
  if (name_.empty()) throw InvalidArgument("hardware spec needs a name");
  for (const auto& [fmt, peak] : peak_tflops_) {
    if (!positive_finite(peak)) {
      throw InvalidArgument(name_ + ": peak_tflops[" + std::string(to_string(fmt)) +
                            "] must be > 0");
    }
  }
  if (!positive_finite(tdp_watts_)) throw InvalidArgument(name_ + ": tdp must be > 0");
  if (hbm_bandwidth_tbps_ && !positive_finite(*hbm_bandwidth_tbps_)) {
    throw InvalidArgument(name_ + ": hbm_bandwidth must be > 0");
  }
  if (vector_peak_tflops_ && !positive_finite(*vector_peak_tflops_)) {
    throw InvalidArgument(name_ + ": vector_peak_tflops must be > 0");
  }
}

std::optional<double> HardwareSpec::peak_tflops(DataFormat fmt) const noexcept {
  auto it = peak_tflops_.find(fmt);
  if (it == peak_tflops_.end()) return std::nullopt;
  return it->second;
}

double HardwareSpec::require_peak_tflops(DataFormat fmt) const {
  if (auto peak = peak_tflops(fmt)) return *peak;
  throw NotFound(name_ + " has no peak throughput for " + std::string(to_string(fmt)));
}

double HardwareSpec::require_bandwidth_tbps() const {
  if (hbm_bandwidth_tbps_) return *hbm_bandwidth_tbps_;
  throw Unavailable(name_ + ": memory bandwidth unavailable");
}

ModelConfig::ModelConfig(std::string name, std::uint64_t layers, std::uint64_t hidden,
                         double intermediate_ratio, std::uint64_t head_size,
                         std::uint64_t gqa_group, std::uint64_t vocab)
    : name_(std::move(name)),
      layers_(layers),
      hidden_(hidden),
      intermediate_ratio_(intermediate_ratio),
      head_size_(head_size),
      gqa_group_(gqa_group),
      vocab_(vocab),
      intermediate_size_(0) {
  if (name_.empty()) throw InvalidArgument("model config needs a name");
  if (layers_ == 0 || hidden_ == 0 || head_size_ == 0 || gqa_group_ == 0 || vocab_ == 0) {
    throw InvalidArgument(name_ + ": l, h, d, g, v must be positive");
  }
  if (!positive_finite(intermediate_ratio_)) {
    throw InvalidArgument(name_ + ": intermediate_ratio must be > 0");
  }
  if (hidden_ % head_size_ != 0) {
    throw InvalidArgument(name_ + ": hidden size not divisible by head size");
  }
  if (heads() % gqa_group_ != 0) {
    throw InvalidArgument(name_ + ": head count not divisible by GQA group");
  }
  const double width = intermediate_ratio_ * static_cast<double>(hidden_);
  if (width != std::floor(width) || width > 9.0e15) {
    throw InvalidArgument(name_ + ": intermediate size a*h must be an integer");
  }
  intermediate_size_ = static_cast<std::uint64_t>(width);
}

double ModelConfig::model_constant() const noexcept {
  return 3.0 * intermediate_ratio_ + 2.0 + 2.0 / static_cast<double>(gqa_group_);
}

std::uint64_t ModelConfig::linear_weights_per_layer() const {
  // Q and O are h x h, K and V are h x (h/g), gate/up/down are h x a*h.
  using checked::add;
  using checked::mul;
  const std::uint64_t square = mul(hidden_, hidden_);
  return add(add(mul(2, square), mul(2, mul(hidden_, kv_dim()))),
             mul(3, mul(hidden_, intermediate_size_)));
}

double tflops_per_watt(const HardwareSpec& spec, DataFormat fmt) {
  return spec.require_peak_tflops(fmt) / spec.tdp_watts();
}

double efficiency_increase_exact(const HardwareSpec& prev, const HardwareSpec& cur,
                                 DataFormat prev_fmt, DataFormat cur_fmt) {
  const double before = tflops_per_watt(prev, prev_fmt);
  if (before == 0.0) throw InvalidArgument("previous efficiency is zero");
  return 100.0 * (tflops_per_watt(cur, cur_fmt) / before - 1.0);
}

long efficiency_increase(const HardwareSpec& prev, const HardwareSpec& cur, DataFormat prev_fmt,
                         DataFormat cur_fmt) {
  return std::lround(efficiency_increase_exact(prev, cur, prev_fmt, cur_fmt));
}

}  // namespace infercost
