// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "infercost/cli/cli.hpp"
#include "infercost/cli/report.hpp"
#include "infercost/error.hpp"
#include "infercost/fp8.hpp"
#include "infercost/tensor_io.hpp"
#include "support.hpp"

namespace infercost::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return testing::data_path(name).string(); }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("infercost-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& contents = "") const {
    const auto p = path_ / name;
    if (!contents.empty()) std::ofstream(p) << contents;
    return p.string();
  }

 private:
  fs::path path_;
};

TEST(Cli, TcoEqualCosts) {
  const auto r = run({"tco", "--rsc", "0.5", "--rth", "0.75", "--ric", "1", "--equal-costs"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1.0000\n");
  EXPECT_EQ(run({"tco", "--rsc", "1", "--rth", "1.25", "--equal-costs"}).out, "0.8000\n");
  EXPECT_EQ(run({"tco", "--rsc", "0.5", "--rth", "0.75", "--ric", "2", "--equal-costs"}).code, 2);
  EXPECT_EQ(run({"tco", "--rsc", "0", "--rth", "1"}).code, 1);
  EXPECT_EQ(run({"break-even", "--rsc", "0.6", "--equal-costs"}).out, "0.8000\n");
}

TEST(Cli, FlopsDecode) {
  const auto r = run({"flops", "decode", "--model", "llama31-8b", "--batch", "64", "--seqlen", "1024"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("total      994956017664"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("linear     893353197568"), std::string::npos);
  EXPECT_NE(r.out.find("lm_head     67243081728"), std::string::npos);
  EXPECT_NE(r.out.find("attention   34359738368"), std::string::npos);
  const auto csv = run({"flops", "decode", "--model", "llama31-8b", "--batch", "64", "--seqlen", "1024",
                        "--format", "csv"});
  EXPECT_EQ(csv.out, "component,flops\nlinear,893353197568\nlm_head,67243081728\n"
                     "attention,34359738368\ntotal,994956017664\n");
}

TEST(Cli, FlopsOther) {
  EXPECT_EQ(run({"flops", "gemm", "--m", "64", "--k", "4096", "--n", "4096"}).out, "2147483648\n");
  EXPECT_EQ(run({"flops", "forward", "--model", "llama31-8b", "--seqlen", "2048"}).out, "31838592565248\n");
  EXPECT_EQ(run({"flops", "delta", "--model", "llama31-8b", "--context", "1024"}).out, "15546187776\n");
  EXPECT_EQ(run({"flops", "exp", "--model", "llama31-8b", "--batch", "64", "--seqlen", "1024"}).out,
            "2097152\n");
  const auto walk = run({"flops", "walk", "--model", "llama31-8b", "--seqlen", "1", "--format", "csv"});
  EXPECT_NE(walk.out.find("total,,,,,,15009579008\n"), std::string::npos) << walk.out;
  EXPECT_EQ(run({"flops", "decode", "--model", "llama31-8b", "--lengths", "1024,1024"}).code, 0);
  EXPECT_EQ(run({"flops", "decode", "--model", "llama31-8b"}).code, 2);
  EXPECT_EQ(run({"flops", "forward", "--model", "gpt", "--seqlen", "1"}).code, 1);
}

TEST(Cli, Roofline) {
  EXPECT_EQ(run({"roofline", "saturation", "--device", "gaudi2", "--fmt", "fp8-e4m3-g2"}).out, "360.4167\n");
  EXPECT_EQ(run({"roofline", "kv", "--device", "gaudi2", "--group", "4"}).out, "9.6000\n");
  EXPECT_EQ(run({"roofline", "kv", "--device", "gaudi2", "--model", "llama31-8b"}).out, "9.6000\n");
  EXPECT_EQ(run({"roofline", "ci", "--m", "64", "--k", "4096", "--n", "4096", "--fmt", "fp8-e4m3-g2"}).out,
            "128.0000\n");
  EXPECT_EQ(run({"roofline", "kv", "--device", "h200", "--group", "4"}).code, 1);
  const auto d = run({"roofline", "decode", "--device", "gaudi2", "--model", "llama31-8b", "--batch", "64",
                      "--seqlen", "1024", "--linear-fmt", "fp8-e4m3-g2", "--format", "csv"});
  EXPECT_EQ(d.code, 0) << d.err;
  EXPECT_NE(d.out.find("linear,893353197568,6979321856,"), std::string::npos) << d.out;
  EXPECT_NE(d.out.find(",memory,307.2000\n"), std::string::npos);
  EXPECT_EQ(run({"roofline", "prefill", "--device", "gaudi2", "--model", "llama31-8b", "--seqlen", "2048",
                 "--fmt", "fp8-e4m3-g2"}).code,
            0);
  EXPECT_EQ(run({"mfu", "--device", "gaudi2", "--fmt", "fp8-e4m3-g2", "--tflops", "735"}).out, "84.97%\n");
  EXPECT_EQ(run({"mfu", "--device", "gaudi2", "--fmt", "fp8-e4m3-g2", "--latency", "8.5045e-6", "--m", "64",
                 "--k", "4096", "--n", "4096"}).out,
            "29.19%\n");
  const auto over = run({"mfu", "--device", "gaudi2", "--fmt", "fp8-e4m3-g2", "--tflops", "900"});
  EXPECT_EQ(over.code, 0);
  EXPECT_NE(over.err.find("exceeds"), std::string::npos);
}

TEST(Cli, QuantizeGridIsFixedPoint) {
  TempDir tmp;
  const auto g = fp8::Fp8Format::e4m3_ocp().grid();
  std::vector<double> v;
  for (double x : g) {
    v.push_back(x);
    v.push_back(-x);
  }
  std::ostringstream grid;
  fp8::write_matrix(grid, fp8::Matrix(g.size(), 2, v));
  const std::string in = tmp.file("grid.txt", grid.str());
  const auto r = run({"quantize", "--format", "e4m3-ocp", "--mode", "rtn", "--in", in});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, grid.str());
}

TEST(Cli, QuantizeDumpRoundTrip) {
  TempDir tmp;
  const std::string in = tmp.file("m.txt", "0.3 -1.7 22\n1000 0.001 -4\n");
  const std::string dump = tmp.file("q.bin");
  for (const char* gran : {"tensor", "row"}) {
    const auto a = run({"quantize", "--in", in, "--mode", "sr", "--seed", "7", "--granularity", gran,
                        "--scale", "unrestricted", "--out", dump});
    ASSERT_EQ(a.code, 0) << a.err;
    const auto b = run({"quantize", "--from-dump", dump});
    EXPECT_EQ(b.out, a.out);
  }
  EXPECT_EQ(run({"quantize", "--from-dump", tmp.file("missing.bin")}).code, 1);
  EXPECT_EQ(run({"quantize"}).code, 2);
  EXPECT_EQ(run({"quantize", "--in", in, "--granularity", "row", "--scale", "gaudi2"}).code, 2);
  EXPECT_EQ(run({"quantize", "--in", in, "--format", "e3m4"}).code, 2);
}

TEST(Cli, Deterministic) {
  TempDir tmp;
  const std::string in = tmp.file("m.txt", "0.3 -1.7 22\n1000 0.001 -4\n3.3 3.3 3.3\n");
  const std::vector<std::vector<std::string>> cmds = {
      {"quantize", "--in", in, "--mode", "sr", "--stats"},
      {"quantize", "--in", in, "--mode", "sr", "--seed", "99", "--format", "e5m2"},
      {"tco-grid", "--format", "svg"},
      {"report", "mfu", "--bench", data("table5_scaled_gemm.csv")},
      {"roofline", "decode", "--device", "gaudi2", "--model", "llama31-8b", "--batch", "8", "--seqlen", "99"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
  const auto s1 = run({"quantize", "--in", in, "--mode", "sr", "--seed", "1"});
  const auto s2 = run({"quantize", "--in", in, "--mode", "sr", "--seed", "2"});
  EXPECT_NE(s1.out, s2.out);
}

TEST(Cli, HelpEverywhere) {
  const std::vector<std::vector<std::string>> cmds = {
      {}, {"tco"}, {"tco-grid"}, {"break-even"}, {"flops"}, {"flops", "gemm"}, {"flops", "forward"},
      {"flops", "delta"}, {"flops", "decode"}, {"flops", "exp"}, {"flops", "walk"}, {"roofline"},
      {"roofline", "ci"}, {"roofline", "saturation"}, {"roofline", "gemm"}, {"roofline", "kv"},
      {"roofline", "decode"}, {"roofline", "prefill"}, {"mfu"}, {"quantize"}, {"ingest"}, {"report"},
      {"report", "mfu"}, {"report", "powercap"}, {"report", "ratio"}, {"report", "generations"}};
  for (auto c : cmds) {
    c.push_back("--help");
    const auto r = run(c);
    EXPECT_EQ(r.code, 0) << c.front();
    EXPECT_NE(r.out.find("Usage:"), std::string::npos);
  }
}

TEST(Cli, UsageErrors) {
  for (const auto& c : std::vector<std::vector<std::string>>{
           {}, {"frobnicate"}, {"tco", "--rsc", "1"}, {"tco", "--rsc", "1", "--rth", "1", "--bogus"},
           {"flops"}, {"flops", "gemm", "--m", "x", "--k", "1", "--n", "1"},
           {"flops", "decode", "--model", "llama31-8b", "--seqlen", "1", "--format", "svg"},
           {"tco-grid", "--rsc-axis", "1:0:1"}, {"tco-grid", "--format", "pdf"}}) {
    const auto r = run(c);
    EXPECT_EQ(r.code, 2) << (c.empty() ? "" : c.front());
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("Usage:"), std::string::npos);
  }
}

TEST(Cli, Reports) {
  const auto pc = run({"report", "powercap", "--bench", data("table6_powercap.csv"), "--format", "csv"});
  EXPECT_EQ(pc.code, 0) << pc.err;
  EXPECT_NE(pc.out.find("h200,bf16,decode,llama31-8b/b64/s2048,400,105,86,18.10\n"), std::string::npos) << pc.out;
  const auto t1 = run({"report", "generations", "--sheet", data("table1_gpu_generations.csv"), "--format", "csv"});
  EXPECT_NE(t1.out.find("B300 (HGX),bf16,2250,1200,1.88,33%\n"), std::string::npos) << t1.out;
  const auto ratio = run({"report", "ratio", "--bench", data("table3_thin_gemm.csv"), "--device-a", "gaudi2",
                          "--device-b", "h100", "--fmt", "fp8", "--m", "64", "--k", "4096", "--n", "4096",
                          "--variant", "per-row", "--rsc", "1", "--equal-costs", "--format", "csv"});
  EXPECT_EQ(ratio.out, "device_a,device_b,tflops_a,tflops_b,r_th,tco_ratio\ngaudi2,h100,252.5,120.5,2.0954,0.4772\n");
  const auto m = run({"report", "mfu", "--bench", data("table3_thin_gemm.csv")});
  EXPECT_NE(m.out.find("# skipped line"), std::string::npos);
  const auto ingest = run({"ingest", "--bench", data("table4_square_gemm_power.csv")});
  EXPECT_NE(ingest.out.find("# 8 records"), std::string::npos);
  EXPECT_EQ(run({"ingest", "--bench", data("nope.csv")}).code, 1);
}

TEST(Cli, RegistrySources) {
  TempDir tmp;
  const std::string reg = tmp.file("r.cfg", R"({"models": [{"name": "toy", "layers": 1, "hidden": 4,
      "intermediate_ratio": 1, "head_size": 4, "gqa_group": 1, "vocab": 1}]})");
  EXPECT_EQ(run({"flops", "forward", "--model", "toy", "--seqlen", "1", "--registry", reg}).out, "240\n");
  EXPECT_EQ(run({"flops", "forward", "--model", "llama31-8b", "--seqlen", "1", "--registry", reg}).code, 1);
  EXPECT_EQ(run({"flops", "forward", "--model", "llama31-8b", "--seqlen", "1", "--registry", reg,
                 "--registry", data("models_llama.cfg")}).code,
            0);
  ::setenv("INFERCOST_REGISTRY", reg.c_str(), 1);
  EXPECT_EQ(run({"flops", "forward", "--model", "toy", "--seqlen", "1"}).out, "240\n");
  EXPECT_EQ(run({"flops", "forward", "--model", "llama31-8b", "--seqlen", "1", "--registry",
                 data("models_llama.cfg")}).out,
            "15009579008\n");
  ::unsetenv("INFERCOST_REGISTRY");
  EXPECT_EQ(run({"flops", "forward", "--model", "toy", "--seqlen", "1", "--registry", tmp.file("none.cfg")}).code, 1);
}

TEST(Cli, BuiltinRegistryMatchesFixtures) {
  auto reg = load_registry(testing::data_path("devices_paper.cfg"));
  reg.merge(load_registry(testing::data_path("models_llama.cfg")));
  EXPECT_EQ(builtin_registry(), reg);
}

tco::TcoRatioGrid derived_grid() { return tco::tco_grid(1, 1, 1, {0.5, 1, 1.5}, {0.5, 1, 1.5}); }

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

// Tags balance and every element is closed.
bool well_formed(const std::string& svg) {
  std::vector<std::string> stack;
  const std::regex tag(R"(<(/?)([a-zA-Z]+)[^>]*?(/?)>)");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tag); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    if (m[1] == "/") {
      if (stack.empty() || stack.back() != m[2]) return false;
      stack.pop_back();
    } else if (m[3] != "/") {
      stack.push_back(m[2]);
    }
  }
  return stack.empty() && count(svg, "<") == count(svg, ">");
}

TEST(Heatmap, SingleCell) {
  const auto svg = render_heatmap(tco::tco_grid(1, 1, 1, {1}, {1}), ReportFormat::kSvg);
  EXPECT_EQ(count(svg, "<rect class=\"cell\""), 1u);
  EXPECT_NE(svg.find(">1.00</text>"), std::string::npos);
  EXPECT_NE(svg.find("fill=\"#ffffff\""), std::string::npos);
  EXPECT_TRUE(well_formed(svg));
}

TEST(Heatmap, DerivedGrid) {
  const auto svg = render_heatmap(derived_grid(), ReportFormat::kSvg);
  EXPECT_EQ(count(svg, "<rect class=\"cell\""), 9u);
  EXPECT_TRUE(well_formed(svg));
  const std::regex corner("data-rsc=\"1.5\" data-rth=\"0.5\"/>\n<text class=\"value\"[^>]*>2.50</text>");
  EXPECT_TRUE(std::regex_search(svg, corner));
  // Below parity is green, above is red.
  EXPECT_NE(svg.find("fill=\"#1a9850\" stroke=\"#ffffff\" data-rsc=\"0.5\" data-rth=\"1.5\""), std::string::npos);
  EXPECT_NE(svg.find("fill=\"#d73027\" stroke=\"#ffffff\" data-rsc=\"1.5\" data-rth=\"0.5\""), std::string::npos);
  EXPECT_NE(svg.find("fill=\"#ffffff\" stroke=\"#ffffff\" data-rsc=\"1\" data-rth=\"1\""), std::string::npos);
  const auto text = render_heatmap(derived_grid(), ReportFormat::kText);
  EXPECT_NE(text.find("0.50       1.5000  2.0000  2.5000"), std::string::npos) << text;
}

TEST(Heatmap, CsvRoundTrip) {
  for (const auto& g : {derived_grid(), tco::tco_grid(3.5, 0.7, 1.3, {0.1, 0.37, 2.9}, {0.25, 1.0 / 3, 4})}) {
    std::istringstream in(render_heatmap(g, ReportFormat::kCsv));
    EXPECT_EQ(parse_grid_csv(in), g);
  }
  std::istringstream bad("R_Th\\R_SC,1\n1,x\n");
  EXPECT_THROW(parse_grid_csv(bad), ParseError);
}

TEST(Heatmap, CliCsvRoundTrip) {
  TempDir tmp;
  const std::string out = tmp.file("g.csv");
  const auto r = run({"tco-grid", "--rsc-axis", "0.5,1,1.5", "--rth-axis", "0.5:1.5:0.5", "--equal-costs",
                      "--format", "csv", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  EXPECT_EQ(parse_grid_csv(in), derived_grid());
}

TEST(Heatmap, EmptyGrid) {
  EXPECT_THROW(render_heatmap(tco::TcoRatioGrid{}, ReportFormat::kSvg), InvalidArgument);
  EXPECT_THROW(render_heatmap(tco::TcoRatioGrid{}, ReportFormat::kCsv), InvalidArgument);
}

}  // namespace
}  // namespace infercost::cli
