// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "infercost/bench.hpp"
#include "infercost/error.hpp"
#include "support.hpp"

namespace infercost::bench {
namespace {

using testing::data_path;

DeviceRegistry fixture_registry() {
  auto reg = load_registry(data_path("devices_paper.cfg"));
  reg.merge(load_registry(data_path("models_llama.cfg")));
  return reg;
}

BenchDataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_records(in, "t.csv");
}

TEST(Ingest, FixtureSizes) {
  EXPECT_EQ(ingest_records(data_path("table3_thin_gemm.csv")).size(), 64u);
  EXPECT_EQ(ingest_records(data_path("table4_square_gemm_power.csv")).size(), 8u);
  EXPECT_EQ(ingest_records(data_path("table5_scaled_gemm.csv")).size(), 24u);
  EXPECT_EQ(ingest_records(data_path("table6_powercap.csv")).size(), 20u);
  EXPECT_EQ(load_spec_sheet(data_path("table1_gpu_generations.csv")).size(), 4u);
}

TEST(Ingest, EmptyInput) {
  EXPECT_TRUE(parse("").empty());
  EXPECT_TRUE(parse("device,fmt,kind,M,K,N,tflops\n").empty());
}

TEST(Ingest, ColumnsInAnyOrder) {
  const auto ds = parse("tflops,N,K,M,kind,fmt,device\n1.5,8,4,2,gemm,BF16,x\n");
  ASSERT_EQ(ds.size(), 1u);
  const auto& r = ds.records().front();
  EXPECT_EQ(r.gemm, GemmShape(2, 4, 8));
  EXPECT_EQ(r.fmt, DataFormat::kBF16);
  EXPECT_EQ(r.line, 2u);
}

TEST(Ingest, Rejections) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  const std::string h = "device,fmt,kind,M,K,N,latency_s,tflops\n";
  EXPECT_EQ(line_of(h + "a,bf16,gemm,1,1,1,0.1,5\n"), 2u);
  EXPECT_EQ(line_of(h + "a,bf16,gemm,1,1,1,,\n"), 2u);
  EXPECT_EQ(line_of(h + "# c\na,bf16,gemm,1,1,1,,1\na,bf16,gemm,1,1,1,,2\n"), 4u);
  EXPECT_EQ(line_of(h + "a,bf17,gemm,1,1,1,,1\n"), 2u);
  EXPECT_EQ(line_of(h + "a,bf16,train,1,1,1,,1\n"), 2u);
  EXPECT_EQ(line_of(h + "a,bf16,gemm,1,,1,,1\n"), 2u);
  EXPECT_EQ(line_of(h + "a,bf16,gemm,1,1,1,,-1\n"), 2u);
  EXPECT_EQ(line_of(h + "a,bf16,gemm,1,1,1,,x\n"), 2u);
  EXPECT_EQ(line_of(h + "a,bf16,gemm,1,1\n"), 2u);
  EXPECT_EQ(line_of(h + "a,bf16,decode,1,1,1,,1\n"), 2u);
  EXPECT_EQ(line_of("device,fmt,kind,colour,tflops\n"), 1u);
  EXPECT_EQ(line_of("device,kind,tflops\n"), 1u);
  EXPECT_EQ(line_of("device,fmt,kind,M,K,N\n"), 1u);
  EXPECT_THROW(ingest_records(data_path("missing.csv")), NotFound);
}

TEST(Ingest, PowerCapAndVariantArePartOfTheKey) {
  const auto ds = parse(
      "device,fmt,kind,M,K,N,tflops,power_cap_w,variant\n"
      "a,bf16,gemm,1,1,1,5,,\n"
      "a,bf16,gemm,1,1,1,4,400,\n"
      "a,bf16,gemm,1,1,1,3,,per-row\n");
  EXPECT_EQ(ds.size(), 3u);
}

TEST(Tflops, Derivation) {
  BenchRecord r;
  r.device = "gaudi2";
  r.gemm = GemmShape(64, 4096, 4096);
  r.latency_s = 8.5045e-6;
  EXPECT_NEAR(derive_tflops(r, gemm_flops(*r.gemm)), 252.5, 0.05);
  r.gemm = GemmShape(8, 2048, 2048);
  r.latency_s = 5.122e-6;
  EXPECT_NEAR(measured_tflops(r), 13.1, 0.005);
  r.latency_s = static_cast<double>(gemm_flops(*r.gemm)) / 1e12;
  EXPECT_DOUBLE_EQ(measured_tflops(r), 1.0);
  BenchRecord no_latency;
  no_latency.tflops = 3;
  EXPECT_THROW(derive_tflops(no_latency, 10), InvalidArgument);
}

TEST(Tflops, LatencyBackSolveRoundTripsThinGemm) {
  const auto ds = ingest_records(data_path("table3_thin_gemm.csv"));
  for (const auto& r : ds.records()) {
    BenchRecord timed = r;
    timed.latency_s = static_cast<double>(gemm_flops(*r.gemm)) / (*r.tflops * 1e12);
    timed.tflops.reset();
    const double back = measured_tflops(timed);
    EXPECT_LE(std::abs(back - *r.tflops), 5e-5 * *r.tflops) << r.line;
  }
}

TEST(Tflops, PhaseRecordsNeedRegistry) {
  const auto ds = parse("device,fmt,kind,model,batch,seqlen,latency_s\nh200,bf16,decode,llama31-8b,64,1024,0.01\n");
  const auto& r = ds.records().front();
  EXPECT_THROW(measured_tflops(r), Unavailable);
  const auto reg = fixture_registry();
  EXPECT_EQ(record_flops(r, reg), 994'956'017'664u);
  EXPECT_NEAR(measured_tflops(r, &reg), 99.4956017664, 1e-9);
}

TEST(PowerCap, H200Slowdowns) {
  const auto rows = powercap_pairs(ingest_records(data_path("table6_powercap.csv")));
  ASSERT_EQ(rows.size(), 10u);
  const double printed[] = {7, 11, 18, 15, 28, 19, 17, 21, 9, 21};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_NEAR(rows[i].comparison.slowdown_fraction * 100, printed[i], 2.0) << i;
  }
  EXPECT_NEAR(rows[2].comparison.slowdown_fraction, 0.181, 5e-4);
  EXPECT_NEAR(rows[0].comparison.slowdown_fraction, 0.064, 5e-4);
}

TEST(PowerCap, Contract) {
  BenchRecord a;
  a.device = "x";
  a.gemm = GemmShape(1, 1, 1);
  a.tflops = 10;
  BenchRecord b = a;
  b.power_cap_w = 300;
  EXPECT_EQ(powercap_slowdown(a, a).slowdown_fraction, 0.0);
  EXPECT_EQ(powercap_slowdown(a, b).slowdown_fraction, 0.0);
  b.fmt = DataFormat::kFP16;
  EXPECT_THROW(powercap_slowdown(a, b), InvalidArgument);
}

TEST(Ratio, ThinGemmGaudi2VsH100) {
  const auto ds = ingest_records(data_path("table3_thin_gemm.csv"));
  RecordSelector fp8;
  fp8.fmt = FormatSelector::any_fp8();
  fp8.gemm = GemmShape(64, 4096, 4096);
  fp8.variant = "per-row";
  EXPECT_NEAR(throughput_ratio(ds, "gaudi2", "h100", fp8), 2.095, 5e-4);
  RecordSelector bf16;
  bf16.gemm = GemmShape(8, 2048, 2048);
  EXPECT_NEAR(throughput_ratio(ds, "gaudi2", "h200", bf16), 2.113, 5e-4);
  for (const char* dev : {"gaudi2", "gaudi3", "h100", "h200"}) {
    EXPECT_EQ(throughput_ratio(ds, dev, dev, fp8), 1.0);
    EXPECT_EQ(throughput_ratio(ds, dev, dev, bf16), 1.0);
  }
  EXPECT_THROW(throughput_ratio(ds, "gaudi2", "tpu", bf16), NotFound);
}

TEST(Ratio, AmbiguousSelector) {
  const auto ds = parse(
      "device,fmt,kind,M,K,N,tflops\n"
      "a,fp8-e4m3-ocp,gemm,1,1,1,5\n"
      "a,fp8-e5m2,gemm,1,1,1,4\n");
  RecordSelector sel;
  sel.fmt = FormatSelector::any_fp8();
  sel.gemm = GemmShape(1, 1, 1);
  EXPECT_THROW(find_record(ds, "a", sel), InvalidArgument);
  sel.fmt = DataFormat::kFP8E5M2;
  EXPECT_EQ(*find_record(ds, "a", sel).tflops, 4);
}

TEST(Mfu, ScaledGemmFixture) {
  const auto table = mfu_table(ingest_records(data_path("table5_scaled_gemm.csv")), fixture_registry());
  EXPECT_TRUE(table.skipped.empty());
  ASSERT_EQ(table.rows.size(), 24u);
  const double printed[] = {57.1, 57.1, 57.1, 58.5, 74.1, 74.2, 84.9, 92.1, 92.6, 85.7, 95.0, 98.4,
                            35.4, 57.1, 57.0, 58.5, 74.2, 74.2, 84.9, 92.7, 92.7, 83.9, 95.4, 95.4};
  for (std::size_t i = 0; i < 24; ++i) {
    EXPECT_NEAR(table.rows[i].report.mfu * 100, printed[i], 0.1) << i;
  }
}

TEST(Mfu, SkipsUnknownDevices) {
  const auto ds = parse(
      "device,fmt,kind,M,K,N,tflops\n"
      "gaudi2,fp8-e4m3-g2,gemm,4096,4096,4096,735\n"
      "tpu,bf16,gemm,1,1,1,2\n"
      "gaudi2,bf16,gemm,1,1,1,2\n");
  const auto table = mfu_table(ds, fixture_registry());
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_NEAR(table.rows[0].report.mfu, 0.849, 1e-3);
  ASSERT_EQ(table.skipped.size(), 2u);
  EXPECT_EQ(table.skipped[0].record->device, "tpu");
}

TEST(SpecSheet, GpuGenerations) {
  const auto specs = load_spec_sheet(data_path("table1_gpu_generations.csv"));
  ASSERT_EQ(specs.size(), 4u);
  EXPECT_EQ(specs[0].peaks().begin()->first, DataFormat::kFP16);
  EXPECT_EQ(efficiency_increase(specs[0], specs[1], DataFormat::kFP16, DataFormat::kBF16), 87);
  std::istringstream bad("device,fmt,tflops\n");
  EXPECT_THROW(parse_spec_sheet(bad), ParseError);
}

}  // namespace
}  // namespace infercost::bench
