// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include "infercost/roofline.hpp"

#include <algorithm>
#include <cmath>

#include "infercost/checked.hpp"
#include "infercost/error.hpp"

namespace infercost {

namespace {

constexpr double kTera = 1e12;

double as_double(std::uint64_t v) { return static_cast<double>(v); }

// Times in seconds for a component given FLOPs and bytes. A missing peak
// leaves only the memory roof in force.
ComponentEstimate make_component(std::string name, const HardwareSpec& spec, DataFormat math_fmt,
                                 FlopCount flops, double bytes) {
  const double bandwidth = spec.require_bandwidth_tbps() * kTera;
  const double memory_time = bytes / bandwidth;
  double compute_time = 0.0;
  if (auto peak = spec.peak_tflops(math_fmt)) compute_time = as_double(flops) / (*peak * kTera);

  ComponentEstimate c;
  c.name = std::move(name);
  c.flops = flops;
  c.bytes = bytes;
  c.time_s = std::max(compute_time, memory_time);
  c.bound = compute_time >= memory_time && compute_time > 0.0 ? Bound::kCompute : Bound::kMemory;
  return c;
}

RooflineEstimate aggregate(std::vector<ComponentEstimate> components) {
  RooflineEstimate est;
  double compute_time = 0.0;
  double memory_time = 0.0;
  FlopCount flops = 0;
  for (const auto& c : components) {
    est.time_s += c.time_s;
    flops = checked::add(flops, c.flops);
    (c.bound == Bound::kCompute ? compute_time : memory_time) += c.time_s;
  }
  est.tflops = est.time_s > 0.0 ? as_double(flops) / est.time_s / kTera : 0.0;
  est.bound = compute_time > memory_time ? Bound::kCompute : Bound::kMemory;
  est.components = std::move(components);
  return est;
}

}  // namespace

std::string_view to_string(Bound b) noexcept { return b == Bound::kCompute ? "compute" : "memory"; }

FlopCount RooflineEstimate::total_flops() const {
  FlopCount sum = 0;
  for (const auto& c : components) sum = checked::add(sum, c.flops);
  return sum;
}

double traffic_bytes(const GemmShape& shape, const OperandFormats& fmts, TrafficKind traffic) {
  const double weights = as_double(shape.k) * as_double(shape.n) * bytes_per_element(fmts.weight);
  if (traffic == TrafficKind::kWeightsOnly) return weights;
  return as_double(shape.m) * as_double(shape.k) * bytes_per_element(fmts.activation) + weights +
         as_double(shape.m) * as_double(shape.n) * bytes_per_element(fmts.output);
}

double computational_intensity(const GemmShape& shape, const OperandFormats& fmts,
                               TrafficKind traffic) {
  return as_double(gemm_flops(shape)) / traffic_bytes(shape, fmts, traffic);
}

double saturation_ci(const HardwareSpec& spec, DataFormat fmt) {
  const double bandwidth = spec.require_bandwidth_tbps();
  return spec.require_peak_tflops(fmt) / bandwidth;
}

double roofline_throughput(const HardwareSpec& spec, DataFormat fmt, double ci) {
  if (!(ci >= 0.0)) throw InvalidArgument("computational intensity must be >= 0");
  const double memory_roof = spec.require_bandwidth_tbps() * ci;
  if (auto peak = spec.peak_tflops(fmt)) return std::min(*peak, memory_roof);
  return memory_roof;
}

double kv_attention_bound(const HardwareSpec& spec, std::uint64_t gqa_group, DataFormat kv_fmt) {
  if (gqa_group == 0) throw InvalidArgument("GQA group size must be >= 1");
  const double ci = 2.0 * as_double(gqa_group) / bytes_per_element(kv_fmt);
  return spec.require_bandwidth_tbps() * ci;
}

RooflineEstimate gemm_estimate(const HardwareSpec& spec, const GemmShape& shape,
                               const OperandFormats& fmts, TrafficKind traffic) {
  return aggregate({make_component("gemm", spec, fmts.weight, gemm_flops(shape),
                                   traffic_bytes(shape, fmts, traffic))});
}

RooflineEstimate decode_step_estimate(const HardwareSpec& spec, const ModelConfig& model,
                                      const SequenceBatch& batch, const DecodeFormats& fmts) {
  const FlopsBreakdown f = decode_step_flops(model, batch);
  const double h = as_double(model.hidden());
  const double l = as_double(model.layers());

  const double linear_bytes = as_double(model.linear_weights_per_layer()) * l *
                              bytes_per_element(fmts.linear);
  const double lm_head_bytes = as_double(model.vocab()) * h * bytes_per_element(fmts.lm_head);
  // Each sequence reads K and V (h/g wide) for every cached token and layer.
  const double kv_bytes = 2.0 * l * as_double(model.kv_dim()) * as_double(batch.total_context()) *
                          bytes_per_element(fmts.kv_cache);

  std::vector<ComponentEstimate> parts;
  parts.push_back(make_component("linear", spec, fmts.linear, f.linear, linear_bytes));
  parts.push_back(make_component("lm_head", spec, fmts.lm_head, f.lm_head, lm_head_bytes));
  parts.push_back(make_component("attention", spec, fmts.kv_cache, f.attention, kv_bytes));
  return aggregate(std::move(parts));
}

RooflineEstimate prefill_estimate(const HardwareSpec& spec, const ModelConfig& model,
                                  std::uint64_t s, DataFormat fmt) {
  if (s == 0) throw InvalidArgument("prefill needs at least one token");
  const double peak = spec.require_peak_tflops(fmt);
  ComponentEstimate c;
  c.name = "prefill";
  c.flops = forward_flops(model, s);
  c.time_s = as_double(c.flops) / (peak * kTera);
  c.bound = Bound::kCompute;
  return aggregate({c});
}

MfuReport mfu(double measured_tflops, const HardwareSpec& spec, DataFormat fmt) {
  if (!std::isfinite(measured_tflops) || measured_tflops < 0.0) {
    throw InvalidArgument("measured throughput must be finite and >= 0");
  }
  MfuReport r;
  r.measured_tflops = measured_tflops;
  r.peak_tflops = spec.require_peak_tflops(fmt);
  r.mfu = measured_tflops / r.peak_tflops;
  r.exceeds_peak = r.mfu > 1.0;
  return r;
}

}  // namespace infercost
