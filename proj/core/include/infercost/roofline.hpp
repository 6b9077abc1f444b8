// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "infercost/data_format.hpp"
#include "infercost/flops.hpp"
#include "infercost/hardware.hpp"

namespace infercost {

// Which operand bytes a GEMM is charged for.
enum class TrafficKind {
  kWeightsOnly,  // K*N*bytes(weight); the decode-phase approximation
  kFullIo,       // M*K*bytes(act) + K*N*bytes(weight) + M*N*bytes(out)
};

struct OperandFormats {
  DataFormat activation = DataFormat::kBF16;
  DataFormat weight = DataFormat::kBF16;
  DataFormat output = DataFormat::kBF16;

  static OperandFormats uniform(DataFormat f) { return {f, f, f}; }
};

double traffic_bytes(const GemmShape& shape, const OperandFormats& fmts, TrafficKind traffic);

// FLOPs per byte moved.
double computational_intensity(const GemmShape& shape, const OperandFormats& fmts,
                               TrafficKind traffic);

// Ridge point peak / bandwidth in FLOPs per byte. Throws Unavailable when the
// device has no bandwidth and NotFound when it has no peak for `fmt`.
double saturation_ci(const HardwareSpec& spec, DataFormat fmt);

// min(peak, bandwidth * ci) in TFLOPS. A device with no stated peak for
// `fmt` is bounded by the memory roof alone.
double roofline_throughput(const HardwareSpec& spec, DataFormat fmt, double ci);

// Upper bound on KV-cache attention throughput: bandwidth * CI with
// CI = 2g / bytes(kv_fmt) (g FLOPs/byte for a 16-bit cache).
double kv_attention_bound(const HardwareSpec& spec, std::uint64_t gqa_group, DataFormat kv_fmt);

enum class Bound { kCompute, kMemory };
std::string_view to_string(Bound b) noexcept;

struct ComponentEstimate {
  std::string name;
  FlopCount flops = 0;
  double bytes = 0.0;
  double time_s = 0.0;  // max(flops / peak, bytes / bandwidth)
  Bound bound = Bound::kMemory;

  // Effective throughput of this component alone; 0 for an empty component.
  double tflops() const noexcept { return time_s > 0.0 ? static_cast<double>(flops) / time_s / 1e12 : 0.0; }
};

// Components execute back to back: time is the sum of component times and
// throughput is total FLOPs over that time.
struct RooflineEstimate {
  Bound bound = Bound::kCompute;
  double tflops = 0.0;
  double time_s = 0.0;
  std::vector<ComponentEstimate> components;

  FlopCount total_flops() const;
};

// Formats of the three decode components. LM head and attention default to
// BF16 math over a BF16 KV cache.
struct DecodeFormats {
  DataFormat linear = DataFormat::kBF16;
  DataFormat lm_head = DataFormat::kBF16;
  DataFormat kv_cache = DataFormat::kBF16;
};

// Roofline of a single GEMM.
RooflineEstimate gemm_estimate(const HardwareSpec& spec, const GemmShape& shape,
                               const OperandFormats& fmts,
                               TrafficKind traffic = TrafficKind::kWeightsOnly);

// Decode step: linear layers (weights-only traffic), LM head (weights-only
// traffic) and attention (KV-cache reads).
RooflineEstimate decode_step_estimate(const HardwareSpec& spec, const ModelConfig& model,
                                      const SequenceBatch& batch, const DecodeFormats& fmts);

// Prefill is charged as one compute-bound component at the format's peak.
RooflineEstimate prefill_estimate(const HardwareSpec& spec, const ModelConfig& model,
                                  std::uint64_t s, DataFormat fmt);

struct MfuReport {
  double measured_tflops = 0.0;
  double peak_tflops = 0.0;
  double mfu = 0.0;
  bool exceeds_peak = false;  // mfu > 1: the inputs are suspect, never clamped
};

MfuReport mfu(double measured_tflops, const HardwareSpec& spec, DataFormat fmt);

}  // namespace infercost
