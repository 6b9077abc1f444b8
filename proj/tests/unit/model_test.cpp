// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "infercost/data_format.hpp"
#include "infercost/error.hpp"
#include "infercost/hardware.hpp"
#include "infercost/registry.hpp"
#include "support.hpp"

namespace infercost {
namespace {

using testing::data_path;
using testing::llama8b;

TEST(DataFormat, NamesRoundTrip) {
  for (DataFormat f : kAllDataFormats) {
    EXPECT_EQ(parse_data_format(to_string(f)), f);
  }
  EXPECT_EQ(parse_data_format("BF16"), DataFormat::kBF16);
  EXPECT_EQ(parse_data_format("FP8-E5M2"), DataFormat::kFP8E5M2);
  EXPECT_FALSE(parse_data_format("fp4"));
  EXPECT_THROW(data_format_from_string("int8"), NotFound);
}

TEST(DataFormat, Widths) {
  EXPECT_EQ(bytes_per_element(DataFormat::kBF16), 2);
  EXPECT_EQ(bytes_per_element(DataFormat::kFP16), 2);
  EXPECT_EQ(bytes_per_element(DataFormat::kFP8E4M3Ocp), 1);
  EXPECT_EQ(bytes_per_element(DataFormat::kFP8E4M3G2), 1);
  EXPECT_EQ(bytes_per_element(DataFormat::kFP8E5M2), 1);
}

TEST(DataFormat, Selector) {
  const auto fp8 = FormatSelector::parse("fp8");
  EXPECT_TRUE(fp8.matches(DataFormat::kFP8E4M3G2));
  EXPECT_TRUE(fp8.matches(DataFormat::kFP8E5M2));
  EXPECT_FALSE(fp8.matches(DataFormat::kBF16));
  const FormatSelector exact = DataFormat::kFP8E5M2;
  EXPECT_TRUE(exact.matches(DataFormat::kFP8E5M2));
  EXPECT_FALSE(exact.matches(DataFormat::kFP8E4M3Ocp));
  EXPECT_THROW(FormatSelector::parse("fp7"), NotFound);
}

TEST(HardwareSpec, RejectsNonPositive) {
  EXPECT_THROW(HardwareSpec("x", {{DataFormat::kBF16, 0.0}}, 100), InvalidArgument);
  EXPECT_THROW(HardwareSpec("x", {{DataFormat::kBF16, 1.0}}, -1), InvalidArgument);
  EXPECT_THROW(HardwareSpec("x", {{DataFormat::kBF16, 1.0}}, 1, 0.0), InvalidArgument);
  EXPECT_THROW(HardwareSpec("", {{DataFormat::kBF16, 1.0}}, 1), InvalidArgument);
}

TEST(HardwareSpec, MissingValues) {
  const HardwareSpec h200("h200", {{DataFormat::kBF16, 989.4}}, 700);
  EXPECT_FALSE(h200.peak_tflops(DataFormat::kFP8E4M3Ocp));
  EXPECT_THROW(h200.require_peak_tflops(DataFormat::kFP8E4M3Ocp), NotFound);
  EXPECT_THROW(h200.require_bandwidth_tbps(), Unavailable);
  EXPECT_DOUBLE_EQ(h200.require_peak_tflops(DataFormat::kBF16), 989.4);
}

TEST(ModelConfig, Llama8B) {
  const auto m = llama8b();
  EXPECT_DOUBLE_EQ(m.model_constant(), 13.0);
  EXPECT_EQ(m.heads(), 32u);
  EXPECT_EQ(m.kv_heads(), 8u);
  EXPECT_EQ(m.kv_dim(), 1024u);
  EXPECT_EQ(m.intermediate_size(), 14336u);
  EXPECT_EQ(m.linear_weights_per_layer(), 13u * 4096u * 4096u);
}

TEST(ModelConfig, Validation) {
  EXPECT_THROW(ModelConfig("m", 0, 64, 1, 16, 1, 10), InvalidArgument);
  EXPECT_THROW(ModelConfig("m", 1, 64, 1, 24, 1, 10), InvalidArgument);   // h % d
  EXPECT_THROW(ModelConfig("m", 1, 64, 1, 16, 3, 10), InvalidArgument);   // H % g
  EXPECT_THROW(ModelConfig("m", 1, 64, 1.01, 16, 1, 10), InvalidArgument);  // a*h
  EXPECT_THROW(ModelConfig("m", 1, 64, -1, 16, 1, 10), InvalidArgument);
}

TEST(ModelConfig, ConstantGrowsWithRatioShrinksWithGroup) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t d = 8;
    const std::uint64_t heads = 16;
    const std::uint64_t h = d * heads;
    const double a = static_cast<double>(1 + rng() % 8) / 2.0;
    const std::uint64_t g = std::uint64_t{1} << (rng() % 4);
    const ModelConfig base("m", 2, h, a, d, g, 100);
    const ModelConfig wider("m", 2, h, a + 0.5, d, g, 100);
    EXPECT_GT(wider.model_constant(), base.model_constant());
    if (g < heads) {
      const ModelConfig grouped("m", 2, h, a, d, g * 2, 100);
      EXPECT_LT(grouped.model_constant(), base.model_constant());
    }
    EXPECT_EQ(base.linear_weights_per_layer(),
              static_cast<std::uint64_t>(std::llround(base.model_constant() * h * h)));
  }
}

TEST(Efficiency, GpuGenerations) {
  const HardwareSpec v100("V100", {{DataFormat::kFP16, 125}}, 300);
  const HardwareSpec a100("A100", {{DataFormat::kBF16, 312}}, 400);
  const HardwareSpec h200("H200", {{DataFormat::kBF16, 989}}, 700);
  const HardwareSpec b300("B300", {{DataFormat::kBF16, 2250}}, 1200);
  EXPECT_NEAR(tflops_per_watt(v100, DataFormat::kFP16), 0.42, 0.005);
  EXPECT_NEAR(tflops_per_watt(a100, DataFormat::kBF16), 0.78, 0.005);
  EXPECT_NEAR(tflops_per_watt(h200, DataFormat::kBF16), 1.41, 0.005);
  EXPECT_NEAR(tflops_per_watt(b300, DataFormat::kBF16), 1.88, 0.005);
  EXPECT_EQ(efficiency_increase(v100, a100, DataFormat::kFP16, DataFormat::kBF16), 87);
  EXPECT_EQ(efficiency_increase(a100, h200, DataFormat::kBF16), 81);
  EXPECT_EQ(efficiency_increase(h200, b300, DataFormat::kBF16), 33);
  EXPECT_EQ(efficiency_increase(h200, h200, DataFormat::kBF16), 0);
  EXPECT_NEAR(efficiency_increase_exact(h200, b300, DataFormat::kBF16, DataFormat::kBF16), 32.70,
              0.01);
}

TEST(Efficiency, PeakEqualsTdp) {
  const HardwareSpec s("s", {{DataFormat::kBF16, 500}}, 500);
  EXPECT_DOUBLE_EQ(tflops_per_watt(s, DataFormat::kBF16), 1.0);
  EXPECT_THROW(tflops_per_watt(s, DataFormat::kFP8E5M2), NotFound);
}

TEST(Registry, LoadsDeviceFixture) {
  const auto reg = load_registry(data_path("devices_paper.cfg"));
  ASSERT_EQ(reg.devices().size(), 4u);
  const auto& g2 = reg.device("gaudi2");
  EXPECT_DOUBLE_EQ(g2.require_peak_tflops(DataFormat::kFP8E4M3G2), 865);
  EXPECT_DOUBLE_EQ(*g2.hbm_bandwidth_tbps(), 2.4);
  EXPECT_DOUBLE_EQ(g2.tdp_watts(), 600);
  EXPECT_DOUBLE_EQ(reg.device("h100").require_peak_tflops(DataFormat::kFP8E4M3Ocp), 1989.9);
  EXPECT_DOUBLE_EQ(reg.device("h100").tdp_watts(), 700);
  EXPECT_DOUBLE_EQ(reg.device("gaudi3").require_peak_tflops(DataFormat::kBF16), 1678);
  EXPECT_DOUBLE_EQ(reg.device("gaudi3").tdp_watts(), 900);
  EXPECT_DOUBLE_EQ(reg.device("h200").require_peak_tflops(DataFormat::kBF16), 989.4);
  EXPECT_FALSE(reg.device("h200").hbm_bandwidth_tbps());
  EXPECT_THROW(reg.device("tpu"), NotFound);
}

TEST(Registry, LoadsModelFixture) {
  const auto reg = load_registry(data_path("models_llama.cfg"));
  EXPECT_EQ(reg.model("llama31-8b"), llama8b());
  EXPECT_EQ(reg.model("llama33-70b"), testing::llama70b());
  EXPECT_DOUBLE_EQ(reg.model("llama31-8b").model_constant(), 13.0);
}

TEST(Registry, EmptyDocuments) {
  EXPECT_TRUE(parse_registry(R"({"devices": []})").empty());
  EXPECT_TRUE(parse_registry("{}").empty());
}

TEST(Registry, Diagnostics) {
  try {
    parse_registry("{\n  \"devices\": [\n    {\"name\": \"x\",,}\n  ]\n}", "bad.cfg");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("bad.cfg"), std::string::npos);
  }
  try {
    parse_registry(R"({"devices": [{"name": "a", "peak_tflops": {"bf16": 1}, "tdp": 1},
                                   {"name": "b", "peak_tflops": {"bf16": 1}, "tdp": -5}]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("devices[1].tdp"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_registry(R"({"devices": [{"name": "a", "tdp": 1, "colour": 2}]})"), ParseError);
  EXPECT_THROW(parse_registry(R"({"gpus": []})"), ParseError);
  EXPECT_THROW(parse_registry(R"({"devices": [{"name": "a", "name": "b", "tdp": 1}]})"), ParseError);
  EXPECT_THROW(parse_registry(R"({"devices": [{"name": "a", "peak_tflops": {"int4": 1}, "tdp": 1}]})"),
               ParseError);
  EXPECT_THROW(parse_registry(R"({"models": [{"name": "m", "layers": 1.5, "hidden": 8,
      "intermediate_ratio": 1, "head_size": 8, "gqa_group": 1, "vocab": 1}]})"),
               ParseError);
  EXPECT_THROW(load_registry(data_path("no_such_file.cfg")), NotFound);
}

TEST(Registry, DuplicatesRejected) {
  DeviceRegistry reg;
  reg.add_model(llama8b());
  EXPECT_THROW(reg.add_model(llama8b()), InvalidArgument);
  DeviceRegistry other;
  other.add_model(llama8b());
  EXPECT_THROW(reg.merge(other), InvalidArgument);
}

TEST(Registry, RoundTrip) {
  auto reg = load_registry(data_path("devices_paper.cfg"));
  reg.merge(load_registry(data_path("models_llama.cfg")));
  EXPECT_EQ(parse_registry(serialize_registry(reg)), reg);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 5000.0);
  for (int i = 0; i < 50; ++i) {
    DeviceRegistry r;
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < n; ++j) {
      std::map<DataFormat, double> peaks;
      for (DataFormat f : kAllDataFormats) {
        if (rng() % 2) peaks[f] = u(rng);
      }
      std::optional<double> bw;
      if (rng() % 2) bw = u(rng);
      r.add_device(HardwareSpec("d" + std::to_string(j), peaks, u(rng), bw));
    }
    r.add_model(ModelConfig("m", 1 + rng() % 100, 256, 0.5 * (1 + rng() % 8), 32, 1, 1 + rng() % 1000));
    EXPECT_EQ(parse_registry(serialize_registry(r)), r);
  }
}

}  // namespace
}  // namespace infercost
