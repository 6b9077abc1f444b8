// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "infercost/hardware.hpp"

namespace infercost {

// Exact FLOP count. All arithmetic is checked; overflow throws
// std::overflow_error.
using FlopCount = std::uint64_t;

// (M x K) x (K x N).
struct GemmShape {
  std::uint64_t m = 1;
  std::uint64_t k = 1;
  std::uint64_t n = 1;

  GemmShape() = default;
  GemmShape(std::uint64_t m_, std::uint64_t k_, std::uint64_t n_);

  bool operator==(const GemmShape&) const = default;
  auto operator<=>(const GemmShape&) const = default;
};

// Per-sequence context lengths of a decode batch.
class SequenceBatch {
 public:
  explicit SequenceBatch(std::vector<std::uint64_t> lengths);
  static SequenceBatch uniform(std::uint64_t batch, std::uint64_t length);

  std::size_t size() const noexcept { return lengths_.size(); }
  std::span<const std::uint64_t> lengths() const noexcept { return lengths_; }
  std::uint64_t total_context() const;

 private:
  std::vector<std::uint64_t> lengths_;
};

struct FlopsBreakdown {
  FlopCount linear = 0;     // 2*b*A*h^2*l
  FlopCount lm_head = 0;    // 2*b*v*h
  FlopCount attention = 0;  // 4*h*l*sum(s_i)
  FlopCount total = 0;

  bool operator==(const FlopsBreakdown&) const = default;
};

// 2*M*K*N.
FlopCount gemm_flops(const GemmShape& shape);

// Full forward pass over s tokens: 2s(A h^2 l + v h) + 2 s^2 h l.
FlopCount forward_flops(const ModelConfig& model, std::uint64_t s);

// Approximate cost of t new tokens on top of s cached ones:
// 2t(A h^2 l + v h) + 4 s t h l. Throws InvalidArgument for t == 0.
FlopCount decode_delta_flops(const ModelConfig& model, std::uint64_t s, std::uint64_t t);

// One decode step (t = 1) for every sequence of the batch.
FlopsBreakdown decode_step_flops(const ModelConfig& model, const SequenceBatch& batch);

// One GEMM of the layer walk. `causal` GEMMs are attention products over an
// s x s score matrix whose masked upper half is skipped, so they contribute
// half of gemm_flops(shape).
struct WalkedGemm {
  std::string name;
  GemmShape shape;
  std::uint64_t repeat = 1;
  bool causal = false;
};

// Enumerates every matrix multiplication of a forward pass over s tokens:
// per block the Q/K/V/O projections (K and V sized h/g), gate/up/down MLP
// projections and per-head score/context products, then the LM head.
std::vector<WalkedGemm> layer_walk(const ModelConfig& model, std::uint64_t s);

// Sums layer_walk() through gemm_flops. Independent of the closed form in
// forward_flops() and equal to it for every valid config.
FlopCount layer_walk_flops(const ModelConfig& model, std::uint64_t s);

// Exponentials per decode step: one per attention score per head, b*H*s.
std::uint64_t softmax_exp_ops(const ModelConfig& model, std::uint64_t batch, std::uint64_t s);

}  // namespace infercost
