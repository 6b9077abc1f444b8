// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include "infercost/flops.hpp"

#include "infercost/checked.hpp"
#include "infercost/error.hpp"

namespace infercost {

using checked::add;
using checked::mul;

GemmShape::GemmShape(std::uint64_t m_, std::uint64_t k_, std::uint64_t n_) : m(m_), k(k_), n(n_) {
  if (m == 0 || k == 0 || n == 0) throw InvalidArgument("GEMM dimensions must be >= 1");
}

SequenceBatch::SequenceBatch(std::vector<std::uint64_t> lengths) : lengths_(std::move(lengths)) {
  if (lengths_.empty()) throw InvalidArgument("sequence batch must hold at least one sequence");
}

SequenceBatch SequenceBatch::uniform(std::uint64_t batch, std::uint64_t length) {
  return SequenceBatch(std::vector<std::uint64_t>(batch, length));
}

std::uint64_t SequenceBatch::total_context() const {
  std::uint64_t sum = 0;
  for (auto s : lengths_) sum = add(sum, s);
  return sum;
}

FlopCount gemm_flops(const GemmShape& shape) { return mul(2, mul(shape.m, mul(shape.k, shape.n))); }

namespace {

// A h^2 l + v h, evaluating A = 3a + 2 + 2/g as the exact fraction
// (3*I*g + 2*h*g + 2*h) / (h*g) with I = a*h.
std::uint64_t per_token_weights(const ModelConfig& model) {
  const auto h = model.hidden();
  const auto g = model.gqa_group();
  const auto numerator =
      add(add(mul(3, mul(model.intermediate_size(), g)), mul(2, mul(h, g))), mul(2, h));
  // A h^2 l = numerator * h * l / g; h is a multiple of g.
  const auto a_h2_l = mul(numerator, mul(h / g, model.layers()));
  return add(a_h2_l, mul(model.vocab(), h));
}

}  // namespace

FlopCount forward_flops(const ModelConfig& model, std::uint64_t s) {
  const auto hl = mul(model.hidden(), model.layers());
  return add(mul(mul(2, s), per_token_weights(model)), mul(mul(2, mul(s, s)), hl));
}

FlopCount decode_delta_flops(const ModelConfig& model, std::uint64_t s, std::uint64_t t) {
  if (t == 0) throw InvalidArgument("decode step needs at least one new token");
  const auto hl = mul(model.hidden(), model.layers());
  return add(mul(mul(2, t), per_token_weights(model)), mul(mul(4, mul(s, t)), hl));
}

FlopsBreakdown decode_step_flops(const ModelConfig& model, const SequenceBatch& batch) {
  const std::uint64_t b = batch.size();
  FlopsBreakdown out;
  out.linear = mul(mul(2, b), per_token_weights(model) - mul(model.vocab(), model.hidden()));
  out.lm_head = mul(mul(2, b), mul(model.vocab(), model.hidden()));
  out.attention = mul(mul(4, mul(model.hidden(), model.layers())), batch.total_context());
  out.total = add(add(out.linear, out.lm_head), out.attention);
  return out;
}

std::vector<WalkedGemm> layer_walk(const ModelConfig& model, std::uint64_t s) {
  if (s == 0) throw InvalidArgument("layer walk needs at least one token");
  const auto h = model.hidden();
  const auto l = model.layers();
  const auto d = model.head_size();
  const auto heads = model.heads();
  return {
      {"q_proj", {s, h, h}, l, false},
      {"k_proj", {s, h, model.kv_dim()}, l, false},
      {"v_proj", {s, h, model.kv_dim()}, l, false},
      {"o_proj", {s, h, h}, l, false},
      {"gate_proj", {s, h, model.intermediate_size()}, l, false},
      {"up_proj", {s, h, model.intermediate_size()}, l, false},
      {"down_proj", {s, model.intermediate_size(), h}, l, false},
      // Q K^T and P V per head; every query head does its own product even
      // when K/V heads are shared.
      {"attn_scores", {s, d, s}, mul(l, heads), true},
      {"attn_context", {s, s, d}, mul(l, heads), true},
      {"lm_head", {s, h, model.vocab()}, 1, false},
  };
}

FlopCount layer_walk_flops(const ModelConfig& model, std::uint64_t s) {
  FlopCount total = 0;
  for (const auto& g : layer_walk(model, s)) {
    FlopCount one = gemm_flops(g.shape);
    if (g.causal) one /= 2;
    total = add(total, mul(one, g.repeat));
  }
  return total;
}

std::uint64_t softmax_exp_ops(const ModelConfig& model, std::uint64_t batch, std::uint64_t s) {
  return mul(mul(batch, model.heads()), s);
}

}  // namespace infercost
