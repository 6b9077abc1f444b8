// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "infercost/flops.hpp"
#include "infercost/fp8.hpp"
#include "infercost/quantize.hpp"
#include "infercost/tco.hpp"

namespace {

using namespace infercost;

std::vector<double> axis(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 0.25 + 0.01 * static_cast<double>(i);
  return v;
}

fp8::Matrix gaussian(std::size_t rows, std::size_t cols) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> dist(0.0, 3.0);
  fp8::Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

void BM_TcoGrid(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rsc = axis(n), rth = axis(n);
  for (auto _ : state) benchmark::DoNotOptimize(tco::tco_grid(1.0, 1.0, 1.0, rsc, rth));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_TcoGrid)->Arg(7)->Arg(64)->Arg(256);

void BM_RoundToGrid(benchmark::State& state) {
  const auto& f = fp8::Fp8Format::e4m3_ocp();
  const auto mode = state.range(0) ? fp8::RoundingMode::kStochastic : fp8::RoundingMode::kNearestEven;
  fp8::UniformStream rng(20250101);
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> dist(-500.0, 500.0);
  std::vector<double> xs(4096);
  for (auto& x : xs) x = dist(gen);
  for (auto _ : state) {
    for (double x : xs) benchmark::DoNotOptimize(fp8::round_to_grid(x, f, mode, &rng));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_RoundToGrid)->Arg(0)->Arg(1);

void BM_QuantizeTensor(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = gaussian(n, n);
  const auto policy = state.range(1) ? fp8::ScalingPolicy::per_row(fp8::ScaleDomain::kPowerOfTwo)
                                     : fp8::ScalingPolicy::per_tensor(fp8::ScaleDomain::kPowerOfTwo);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fp8::quantize_tensor(m, fp8::Fp8Format::e4m3_ocp(), policy, fp8::RoundingMode::kNearestEven));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.size()));
}
BENCHMARK(BM_QuantizeTensor)->Args({256, 0})->Args({256, 1})->Args({1024, 0});

void BM_ForwardFlops(benchmark::State& state) {
  const ModelConfig model("llama33-70b", 80, 8192, 3.5, 128, 8, 128256);
  std::uint64_t s = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_flops(model, s));
    s = s % 32768 + 1;
  }
}
BENCHMARK(BM_ForwardFlops);

void BM_DecodeStep(benchmark::State& state) {
  const ModelConfig model("llama31-8b", 32, 4096, 3.5, 128, 4, 128256);
  std::vector<std::uint64_t> lengths(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < lengths.size(); ++i) lengths[i] = 512 + 37 * i;
  const SequenceBatch batch(lengths);
  for (auto _ : state) benchmark::DoNotOptimize(decode_step_flops(model, batch));
}
BENCHMARK(BM_DecodeStep)->Arg(1)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
