// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "infercost/bench.hpp"
#include "infercost/checked.hpp"
#include "infercost/cli/cli.hpp"
#include "infercost/cli/report.hpp"
#include "infercost/error.hpp"
#include "infercost/flops.hpp"
#include "infercost/fp8.hpp"
#include "infercost/hardware.hpp"
#include "infercost/quantize.hpp"
#include "infercost/roofline.hpp"
#include "infercost/tco.hpp"
#include "infercost/tensor_io.hpp"

namespace infercost::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20250101;

// Bad flag combination detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw UsageError(what + ": invalid number '" + s + "'");
  return v;
}

// "0.5,1,1.5" or "start:stop:step".
std::vector<double> parse_axis(const std::string& text, const std::string& what) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError(what + ": expected start:stop:step");
    const double start = parse_double(parts[0], what);
    const double stop = parse_double(parts[1], what);
    const double step = parse_double(parts[2], what);
    if (!(step > 0.0) || stop < start) throw UsageError(what + ": need step > 0 and stop >= start");
    const double span = (stop - start) / step;
    if (span > 10000.0) throw UsageError(what + ": too many points");
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> axis;
    for (std::size_t i = 0; i < n; ++i) axis.push_back(start + static_cast<double>(i) * step);
    return axis;
  }
  std::vector<double> axis;
  for (const auto& p : split(text, ',')) axis.push_back(parse_double(p, what));
  if (axis.empty()) throw UsageError(what + ": empty axis");
  return axis;
}

std::string shape_string(const bench::BenchRecord& r) {
  if (r.gemm) {
    return std::to_string(r.gemm->m) + "x" + std::to_string(r.gemm->k) + "x" +
           std::to_string(r.gemm->n);
  }
  if (r.phase) {
    return r.phase->model + "/b" + std::to_string(r.phase->batch) + "/s" +
           std::to_string(r.phase->seqlen);
  }
  return "";
}

ReportFormat report_format(const std::string& s) { return *parse_report_format(s); }

const std::vector<std::string> kTableFormats = {"text", "csv"};
const std::vector<std::string> kGridFormats = {"text", "csv", "svg"};
const std::vector<std::string> kDataFormatNames = {"bf16", "fp16", "fp8-e4m3-ocp", "fp8-e4m3-g2",
                                                   "fp8-e5m2"};

struct Shared {
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> registry_paths;
  std::string format = "text";
  std::optional<DeviceRegistry> cached;

  const DeviceRegistry& registry() {
    if (cached) return *cached;
    std::vector<std::string> paths = registry_paths;
    if (paths.empty()) {
      if (const char* env = std::getenv("INFERCOST_REGISTRY"); env && *env) paths = split(env, ':');
    }
    if (paths.empty()) {
      cached = builtin_registry();
    } else {
      DeviceRegistry reg;
      for (const auto& p : paths) reg.merge(load_registry(p));
      cached = std::move(reg);
    }
    return *cached;
  }
};

void add_registry_option(CLI::App* sub, Shared& s) {
  sub->add_option("--registry", s.registry_paths,
                  "Registry file; repeat to merge several (default: $INFERCOST_REGISTRY, "
                  "then the built-in devices and models)")
      ->type_name("PATH");
}

void add_format_option(CLI::App* sub, Shared& s, bool grid) {
  sub->add_option("--format", s.format, grid ? "Output: text, csv or svg" : "Output: text or csv")
      ->check(CLI::IsMember(grid ? kGridFormats : kTableFormats))
      ->capture_default_str();
}

CLI::Option* add_data_format(CLI::App* sub, const std::string& name, std::string& target,
                             const std::string& help) {
  return sub->add_option(name, target, help)
      ->check(CLI::IsMember(kDataFormatNames, CLI::ignore_case))
      ->capture_default_str();
}

DataFormat data_format(const std::string& s) { return data_format_from_string(s); }

void write_text(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw NotFound("cannot write '" + path + "'");
  f << text;
}

// ---- tco / tco-grid / break-even -----------------------------------------

struct CostFlags {
  double cost_server_b = 1.0;
  double cost_infra_b = 1.0;
  double r_ic = 1.0;
  bool equal_costs = false;

  // Applies --equal-costs; explicit values contradicting it are rejected.
  tco::GridAssumptions resolve() const {
    if (equal_costs) {
      if (r_ic != 1.0) throw UsageError("--equal-costs implies --ric 1");
      if (cost_server_b != cost_infra_b) {
        throw UsageError("--equal-costs implies --cost-server-b == --cost-infra-b");
      }
    }
    return {cost_server_b, cost_infra_b, r_ic};
  }
  tco::CostInputs inputs(double r_sc, double r_th) const {
    const auto a = resolve();
    return {a.cost_server_b, a.cost_infra_b, r_sc, a.r_ic, r_th};
  }
};

void add_cost_flags(CLI::App* sub, CostFlags& c) {
  sub->add_flag("--equal-costs", c.equal_costs, "Cost_Server,B = Cost_Infra,B and R_IC = 1");
  sub->add_option("--cost-server-b", c.cost_server_b, "Purchase cost of one B server")
      ->capture_default_str();
  sub->add_option("--cost-infra-b", c.cost_infra_b, "Infrastructure cost per B server")
      ->capture_default_str();
  sub->add_option("--ric", c.r_ic, "Infrastructure cost ratio A/B")->capture_default_str();
}

void register_tco(CLI::App& app, Shared& s) {
  auto* sub = app.add_subcommand("tco", "TCO_A / TCO_B at fixed traffic");
  auto c = std::make_shared<CostFlags>();
  auto rsc = std::make_shared<double>();
  auto rth = std::make_shared<double>();
  sub->add_option("--rsc", *rsc, "Server cost ratio A/B")->required();
  sub->add_option("--rth", *rth, "Throughput ratio A/B")->required();
  add_cost_flags(sub, *c);
  sub->callback([&s, c, rsc, rth] {
    s.out << fixed(tco::tco_ratio(c->inputs(*rsc, *rth)), 4) << '\n';
  });

  auto* grid = app.add_subcommand("tco-grid", "TCO ratio table over R_SC x R_Th");
  auto gc = std::make_shared<CostFlags>();
  auto rsc_axis = std::make_shared<std::string>("0.5:2:0.25");
  auto rth_axis = std::make_shared<std::string>("0.5:2:0.25");
  auto out_path = std::make_shared<std::string>();
  grid->add_option("--rsc-axis", *rsc_axis, "R_SC values: a,b,c or start:stop:step")
      ->capture_default_str();
  grid->add_option("--rth-axis", *rth_axis, "R_Th values: a,b,c or start:stop:step")
      ->capture_default_str();
  grid->add_option("--out", *out_path, "Write to a file instead of stdout")->type_name("PATH");
  add_cost_flags(grid, *gc);
  add_format_option(grid, s, true);
  grid->callback([&s, gc, rsc_axis, rth_axis, out_path] {
    const auto a = gc->resolve();
    const auto g = tco::tco_grid(a.cost_server_b, a.cost_infra_b, a.r_ic, parse_axis(*rsc_axis, "--rsc-axis"),
                                 parse_axis(*rth_axis, "--rth-axis"));
    write_text(s.out, *out_path, render_heatmap(g, report_format(s.format)));
  });

  auto* be = app.add_subcommand("break-even", "Throughput ratio at which TCO_A = TCO_B");
  auto bc = std::make_shared<CostFlags>();
  auto b_rsc = std::make_shared<double>();
  be->add_option("--rsc", *b_rsc, "Server cost ratio A/B")->required();
  add_cost_flags(be, *bc);
  be->callback([&s, bc, b_rsc] {
    const auto a = bc->resolve();
    s.out << fixed(tco::break_even_rth(a.cost_server_b, a.cost_infra_b, *b_rsc, a.r_ic), 4) << '\n';
  });
}

// ---- flops -----------------------------------------------------------------

struct GemmFlags {
  std::uint64_t m = 0, k = 0, n = 0;
};

void add_gemm_flags(CLI::App* sub, GemmFlags& g, bool required = true) {
  auto* m = sub->add_option("--m", g.m, "Rows of the left operand (batch)");
  auto* k = sub->add_option("--k", g.k, "Shared dimension");
  auto* n = sub->add_option("--n", g.n, "Columns of the right operand");
  if (required) {
    m->required();
    k->required();
    n->required();
  }
}

struct BatchFlags {
  std::uint64_t batch = 1;
  std::uint64_t seqlen = 0;
  std::vector<std::uint64_t> lengths;
  CLI::Option* seqlen_opt = nullptr;
  CLI::Option* lengths_opt = nullptr;

  SequenceBatch make() const {
    if (!lengths.empty()) return SequenceBatch(lengths);
    if (seqlen_opt->count() == 0) throw UsageError("one of --seqlen or --lengths is required");
    return SequenceBatch::uniform(batch, seqlen);
  }
};

void add_batch_flags(CLI::App* sub, BatchFlags& b) {
  auto* batch = sub->add_option("--batch", b.batch, "Sequences per step")->capture_default_str();
  b.seqlen_opt = sub->add_option("--seqlen", b.seqlen, "Context length of every sequence");
  b.lengths_opt = sub->add_option("--lengths", b.lengths, "Per-sequence context lengths")
                      ->delimiter(',')
                      ->excludes(b.seqlen_opt)
                      ->excludes(batch);
}

std::string flops_text(FlopCount f) { return std::to_string(f); }

void register_flops(CLI::App& app, Shared& s) {
  auto* flops = app.add_subcommand("flops", "Exact FLOP counts");
  flops->require_subcommand(1);

  auto* gemm = flops->add_subcommand("gemm", "2*M*K*N");
  auto g = std::make_shared<GemmFlags>();
  add_gemm_flags(gemm, *g);
  gemm->callback([&s, g] { s.out << flops_text(gemm_flops(GemmShape(g->m, g->k, g->n))) << '\n'; });

  auto model = std::make_shared<std::string>();
  auto seqlen = std::make_shared<std::uint64_t>();

  auto* fwd = flops->add_subcommand("forward", "Forward pass over s tokens");
  fwd->add_option("--model", *model, "Model name")->required();
  fwd->add_option("--seqlen", *seqlen, "Tokens")->required();
  add_registry_option(fwd, s);
  fwd->callback([&s, model, seqlen] {
    s.out << flops_text(forward_flops(s.registry().model(*model), *seqlen)) << '\n';
  });

  auto context = std::make_shared<std::uint64_t>();
  auto fresh = std::make_shared<std::uint64_t>(1);
  auto* delta = flops->add_subcommand("delta", "t new tokens on top of s cached ones");
  delta->add_option("--model", *model, "Model name")->required();
  delta->add_option("--context", *context, "Cached tokens s")->required();
  delta->add_option("--new", *fresh, "New tokens t")->capture_default_str();
  add_registry_option(delta, s);
  delta->callback([&s, model, context, fresh] {
    s.out << flops_text(decode_delta_flops(s.registry().model(*model), *context, *fresh)) << '\n';
  });

  auto batch = std::make_shared<BatchFlags>();
  auto* decode = flops->add_subcommand("decode", "One decode step over a batch");
  decode->add_option("--model", *model, "Model name")->required();
  add_batch_flags(decode, *batch);
  add_registry_option(decode, s);
  add_format_option(decode, s, false);
  decode->callback([&s, model, batch] {
    const auto b = decode_step_flops(s.registry().model(*model), batch->make());
    Table t{{"component", "flops"}, {}, {}};
    t.add_row({"linear", flops_text(b.linear)});
    t.add_row({"lm_head", flops_text(b.lm_head)});
    t.add_row({"attention", flops_text(b.attention)});
    t.add_row({"total", flops_text(b.total)});
    s.out << t.render(report_format(s.format));
  });

  auto exp_batch = std::make_shared<std::uint64_t>(1);
  auto* exp = flops->add_subcommand("exp", "Softmax exponentials of one decode step");
  exp->add_option("--model", *model, "Model name")->required();
  exp->add_option("--batch", *exp_batch, "Sequences")->capture_default_str();
  exp->add_option("--seqlen", *seqlen, "Context length")->required();
  add_registry_option(exp, s);
  exp->callback([&s, model, exp_batch, seqlen] {
    s.out << softmax_exp_ops(s.registry().model(*model), *exp_batch, *seqlen) << '\n';
  });

  auto* walk = flops->add_subcommand("walk", "Every GEMM of a forward pass");
  walk->add_option("--model", *model, "Model name")->required();
  walk->add_option("--seqlen", *seqlen, "Tokens")->required();
  add_registry_option(walk, s);
  add_format_option(walk, s, false);
  walk->callback([&s, model, seqlen] {
    const auto& m = s.registry().model(*model);
    Table t{{"gemm", "m", "k", "n", "repeat", "causal", "flops"}, {}, {}};
    for (const auto& w : layer_walk(m, *seqlen)) {
      FlopCount f = checked::mul(gemm_flops(w.shape), w.repeat);
      if (w.causal) f /= 2;
      t.add_row({w.name, std::to_string(w.shape.m), std::to_string(w.shape.k),
                 std::to_string(w.shape.n), std::to_string(w.repeat), w.causal ? "yes" : "no",
                 flops_text(f)});
    }
    t.add_row({"total", "", "", "", "", "", flops_text(layer_walk_flops(m, *seqlen))});
    s.out << t.render(report_format(s.format));
  });
}

// ---- roofline / mfu ---------------------------------------------------------

std::string render_estimate(const RooflineEstimate& e, ReportFormat fmt) {
  Table t{{"component", "flops", "bytes", "time_s", "bound", "tflops"}, {}, {}};
  for (const auto& c : e.components) {
    t.add_row({c.name, flops_text(c.flops), shortest(c.bytes), shortest(c.time_s),
               std::string(to_string(c.bound)), fixed(c.tflops(), 4)});
  }
  double bytes = 0.0;
  for (const auto& c : e.components) bytes += c.bytes;
  t.add_row({"total", flops_text(e.total_flops()), shortest(bytes), shortest(e.time_s),
             std::string(to_string(e.bound)), fixed(e.tflops, 4)});
  return t.render(fmt);
}

struct OperandFlags {
  std::string fmt = "bf16";
  std::string act, weight, output;
  std::string traffic = "weights";

  OperandFormats make() const {
    OperandFormats f = OperandFormats::uniform(data_format(fmt));
    if (!act.empty()) f.activation = data_format(act);
    if (!weight.empty()) f.weight = data_format(weight);
    if (!output.empty()) f.output = data_format(output);
    return f;
  }
  TrafficKind traffic_kind() const {
    return traffic == "full" ? TrafficKind::kFullIo : TrafficKind::kWeightsOnly;
  }
};

void add_operand_flags(CLI::App* sub, OperandFlags& o) {
  add_data_format(sub, "--fmt", o.fmt, "Format of every operand");
  add_data_format(sub, "--act-fmt", o.act, "Activation format override");
  add_data_format(sub, "--weight-fmt", o.weight, "Weight format override (also the math format)");
  add_data_format(sub, "--out-fmt", o.output, "Output format override");
  sub->add_option("--traffic", o.traffic, "Charged bytes: weights or full")
      ->check(CLI::IsMember({"weights", "full"}))
      ->capture_default_str();
}

void register_roofline(CLI::App& app, Shared& s) {
  auto* roof = app.add_subcommand("roofline", "Roofline bounds and estimates");
  roof->require_subcommand(1);
  auto device = std::make_shared<std::string>();
  auto model = std::make_shared<std::string>();

  auto* ci = roof->add_subcommand("ci", "Computational intensity of a GEMM (FLOPs/byte)");
  auto cg = std::make_shared<GemmFlags>();
  auto co = std::make_shared<OperandFlags>();
  add_gemm_flags(ci, *cg);
  add_operand_flags(ci, *co);
  ci->callback([&s, cg, co] {
    s.out << fixed(computational_intensity(GemmShape(cg->m, cg->k, cg->n), co->make(),
                                           co->traffic_kind()),
                   4)
          << '\n';
  });

  auto fmt = std::make_shared<std::string>("bf16");
  auto* sat = roof->add_subcommand("saturation", "Peak / bandwidth in FLOPs/byte");
  sat->add_option("--device", *device, "Device name")->required();
  add_data_format(sat, "--fmt", *fmt, "Math format");
  add_registry_option(sat, s);
  sat->callback([&s, device, fmt] {
    s.out << fixed(saturation_ci(s.registry().device(*device), data_format(*fmt)), 4) << '\n';
  });

  auto* gemm = roof->add_subcommand("gemm", "Roofline estimate of one GEMM");
  auto gg = std::make_shared<GemmFlags>();
  auto go = std::make_shared<OperandFlags>();
  gemm->add_option("--device", *device, "Device name")->required();
  add_gemm_flags(gemm, *gg);
  add_operand_flags(gemm, *go);
  add_registry_option(gemm, s);
  add_format_option(gemm, s, false);
  gemm->callback([&s, device, gg, go] {
    const auto e = gemm_estimate(s.registry().device(*device), GemmShape(gg->m, gg->k, gg->n),
                                 go->make(), go->traffic_kind());
    s.out << render_estimate(e, report_format(s.format));
  });

  auto group = std::make_shared<std::uint64_t>(0);
  auto kv_fmt = std::make_shared<std::string>("bf16");
  auto* kv = roof->add_subcommand("kv", "Upper bound on KV-cache attention throughput (TFLOPS)");
  kv->add_option("--device", *device, "Device name")->required();
  auto* gopt = kv->add_option("--group", *group, "GQA group size g");
  kv->add_option("--model", *model, "Take g from this model")->excludes(gopt);
  add_data_format(kv, "--kv-fmt", *kv_fmt, "KV cache format");
  add_registry_option(kv, s);
  kv->callback([&s, device, group, model, kv_fmt] {
    std::uint64_t g = *group;
    if (!model->empty()) g = s.registry().model(*model).gqa_group();
    if (g == 0) throw UsageError("one of --group or --model is required");
    s.out << fixed(kv_attention_bound(s.registry().device(*device), g, data_format(*kv_fmt)), 4)
          << '\n';
  });

  auto* decode = roof->add_subcommand("decode", "Roofline estimate of one decode step");
  auto batch = std::make_shared<BatchFlags>();
  auto fmts = std::make_shared<std::array<std::string, 3>>(
      std::array<std::string, 3>{"bf16", "bf16", "bf16"});
  decode->add_option("--device", *device, "Device name")->required();
  decode->add_option("--model", *model, "Model name")->required();
  add_batch_flags(decode, *batch);
  add_data_format(decode, "--linear-fmt", (*fmts)[0], "Format of the linear layers");
  add_data_format(decode, "--lm-head-fmt", (*fmts)[1], "Format of the LM head");
  add_data_format(decode, "--kv-fmt", (*fmts)[2], "KV cache format");
  add_registry_option(decode, s);
  add_format_option(decode, s, false);
  decode->callback([&s, device, model, batch, fmts] {
    const auto& reg = s.registry();
    const DecodeFormats f{data_format((*fmts)[0]), data_format((*fmts)[1]), data_format((*fmts)[2])};
    const auto e = decode_step_estimate(reg.device(*device), reg.model(*model), batch->make(), f);
    s.out << render_estimate(e, report_format(s.format));
  });

  auto seqlen = std::make_shared<std::uint64_t>();
  auto* prefill = roof->add_subcommand("prefill", "Compute-bound estimate of a prefill pass");
  prefill->add_option("--device", *device, "Device name")->required();
  prefill->add_option("--model", *model, "Model name")->required();
  prefill->add_option("--seqlen", *seqlen, "Prompt tokens")->required();
  add_data_format(prefill, "--fmt", *fmt, "Math format");
  add_registry_option(prefill, s);
  add_format_option(prefill, s, false);
  prefill->callback([&s, device, model, seqlen, fmt] {
    const auto& reg = s.registry();
    const auto e = prefill_estimate(reg.device(*device), reg.model(*model), *seqlen, data_format(*fmt));
    s.out << render_estimate(e, report_format(s.format));
  });
}

void register_mfu(CLI::App& app, Shared& s) {
  auto* sub = app.add_subcommand("mfu", "Model FLOPs utilization of one measurement");
  auto device = std::make_shared<std::string>();
  auto fmt = std::make_shared<std::string>("bf16");
  auto tflops = std::make_shared<double>(0.0);
  auto latency = std::make_shared<double>(0.0);
  auto g = std::make_shared<GemmFlags>();
  sub->add_option("--device", *device, "Device name")->required();
  add_data_format(sub, "--fmt", *fmt, "Math format");
  auto* t = sub->add_option("--tflops", *tflops, "Measured TFLOPS");
  auto* l = sub->add_option("--latency", *latency, "Measured GEMM latency in seconds")->excludes(t);
  add_gemm_flags(sub, *g, false);
  add_registry_option(sub, s);
  sub->callback([&s, device, fmt, tflops, latency, g, t, l] {
    double measured = *tflops;
    if (l->count()) {
      if (g->m == 0 || g->k == 0 || g->n == 0) throw UsageError("--latency needs --m, --k and --n");
      if (!(*latency > 0.0)) throw InvalidArgument("latency must be > 0");
      measured = static_cast<double>(gemm_flops(GemmShape(g->m, g->k, g->n))) / *latency / 1e12;
    } else if (!t->count()) {
      throw UsageError("one of --tflops or --latency is required");
    }
    const auto r = mfu(measured, s.registry().device(*device), data_format(*fmt));
    if (r.exceeds_peak) s.err << "warning: measured throughput exceeds the device peak\n";
    s.out << fixed(r.mfu * 100.0, 2) << "%\n";
  });
}

// ---- quantize -------------------------------------------------------------

void register_quantize(CLI::App& app, Shared& s) {
  struct Flags {
    std::string format = "e4m3-ocp";
    std::string mode = "rtn";
    std::string in;
    std::string from_dump;
    std::string granularity = "tensor";
    std::string scale = "pow2";
    std::uint64_t seed = kDefaultSeed;
    std::string out;
    bool stats = false;
  };
  auto f = std::make_shared<Flags>();
  auto* sub = app.add_subcommand("quantize", "Quantize a text matrix to FP8 and print it dequantized");
  sub->add_option("--format", f->format, "FP8 format: e4m3-ocp, e4m3-g2 or e5m2")
      ->check(CLI::IsMember({"e4m3-ocp", "e4m3-g2", "e5m2", "fp8-e4m3-ocp", "fp8-e4m3-g2", "fp8-e5m2"}))
      ->capture_default_str();
  sub->add_option("--mode", f->mode, "Rounding: rtn or sr")
      ->check(CLI::IsMember({"rtn", "sr"}))
      ->capture_default_str();
  auto* in = sub->add_option("--in", f->in, "Input matrix ('-' for stdin)")->type_name("PATH");
  sub->add_option("--from-dump", f->from_dump, "Dequantize a binary dump instead")
      ->type_name("PATH")
      ->excludes(in);
  sub->add_option("--granularity", f->granularity, "Scale granularity: tensor or row")
      ->check(CLI::IsMember({"tensor", "row"}))
      ->capture_default_str();
  sub->add_option("--scale", f->scale,
                  "Scale domain: pow2, unrestricted, gaudi2 (hardware set) or none")
      ->check(CLI::IsMember({"pow2", "unrestricted", "gaudi2", "none"}))
      ->capture_default_str();
  sub->add_option("--seed", f->seed, "Seed for stochastic rounding")->capture_default_str();
  sub->add_option("--out", f->out, "Also write the quantized tensor as a binary dump")->type_name("PATH");
  sub->add_flag("--stats", f->stats, "Append error statistics as '#' lines");
  sub->callback([&s, f] {
    if (!f->from_dump.empty()) {
      std::ifstream d(f->from_dump, std::ios::binary);
      if (!d) throw NotFound("cannot open '" + f->from_dump + "'");
      fp8::write_matrix(s.out, fp8::dequantize(fp8::read_quantized(d)));
      return;
    }
    if (f->in.empty()) throw UsageError("one of --in or --from-dump is required");
    fp8::Matrix m;
    if (f->in == "-") {
      m = fp8::read_matrix(std::cin, "<stdin>");
    } else {
      std::ifstream file(f->in);
      if (!file) throw NotFound("cannot open '" + f->in + "'");
      m = fp8::read_matrix(file, f->in);
    }
    const auto& fmt = fp8::Fp8Format::get(*fp8::parse_fp8_kind(f->format));
    const auto gran = f->granularity == "row" ? fp8::Granularity::kPerRow : fp8::Granularity::kPerTensor;
    std::optional<fp8::ScalingPolicy> policy;
    if (f->scale == "gaudi2") {
      if (gran == fp8::Granularity::kPerRow) throw UsageError("--scale gaudi2 is per-tensor only");
      policy = fp8::ScalingPolicy::gaudi2_fixed();
    } else if (f->scale == "none") {
      if (gran == fp8::Granularity::kPerRow) throw UsageError("--scale none is per-tensor only");
      policy = fp8::ScalingPolicy::fixed({1.0});
    } else {
      policy = fp8::ScalingPolicy(gran, f->scale == "pow2" ? fp8::ScaleDomain::kPowerOfTwo
                                                           : fp8::ScaleDomain::kUnrestricted);
    }
    const auto mode = f->mode == "sr" ? fp8::RoundingMode::kStochastic : fp8::RoundingMode::kNearestEven;
    fp8::UniformStream rng(f->seed);
    const auto qt = fp8::quantize_tensor(m, fmt, *policy, mode, &rng);
    if (!f->out.empty()) {
      std::ofstream d(f->out, std::ios::binary);
      if (!d) throw NotFound("cannot write '" + f->out + "'");
      fp8::write_quantized(d, qt);
    }
    fp8::write_matrix(s.out, fp8::dequantize(qt));
    if (f->stats) {
      const auto e = fp8::quant_error(m, qt);
      s.out << "# max_abs_err " << shortest(e.max_abs_err) << '\n'
            << "# mse " << shortest(e.mse) << '\n'
            << "# max_rel_err " << shortest(e.max_rel_err) << '\n';
    }
  });
}

// ---- ingest / report -------------------------------------------------------

std::string optional_number(const std::optional<double>& v) { return v ? shortest(*v) : ""; }

void register_ingest(CLI::App& app, Shared& s) {
  auto path = std::make_shared<std::string>();
  auto* sub = app.add_subcommand("ingest", "Validate a bench CSV and list its records");
  sub->add_option("--bench", *path, "Bench CSV file")->required()->type_name("PATH");
  add_registry_option(sub, s);
  add_format_option(sub, s, false);
  sub->callback([&s, path] {
    const auto ds = bench::ingest_records(*path);
    Table t{{"line", "device", "fmt", "kind", "shape", "variant", "power_cap_w", "latency_s", "tflops"},
            {},
            {std::to_string(ds.size()) + " records from " + *path}};
    for (const auto& r : ds.records()) {
      const double tf = bench::measured_tflops(r, r.tflops ? nullptr : &s.registry());
      t.add_row({std::to_string(r.line), r.device, std::string(to_string(r.fmt)),
                 std::string(bench::to_string(r.kind)), shape_string(r), r.variant,
                 optional_number(r.power_cap_w), optional_number(r.latency_s), fixed(tf, 4)});
    }
    s.out << t.render(report_format(s.format));
  });
}

void register_report(CLI::App& app, Shared& s) {
  auto* rep = app.add_subcommand("report", "Reports over benchmark and spec-sheet files");
  rep->require_subcommand(1);
  auto path = std::make_shared<std::string>();

  auto* m = rep->add_subcommand("mfu", "MFU of every record with a known peak");
  m->add_option("--bench", *path, "Bench CSV file")->required()->type_name("PATH");
  add_registry_option(m, s);
  add_format_option(m, s, false);
  m->callback([&s, path] {
    const auto ds = bench::ingest_records(*path);
    const auto table = bench::mfu_table(ds, s.registry());
    Table t{{"device", "fmt", "kind", "shape", "variant", "tflops", "peak_tflops", "mfu_pct"}, {}, {}};
    for (const auto& row : table.rows) {
      const auto& r = *row.record;
      t.add_row({r.device, std::string(to_string(r.fmt)), std::string(bench::to_string(r.kind)),
                 shape_string(r), r.variant, fixed(row.report.measured_tflops, 4),
                 shortest(row.report.peak_tflops), fixed(row.report.mfu * 100.0, 2)});
    }
    s.out << t.render(report_format(s.format));
    for (const auto& sk : table.skipped) {
      s.out << "# skipped line " << sk.record->line << ": " << sk.reason << '\n';
    }
  });

  auto* pc = rep->add_subcommand("powercap", "Slowdown of every capped record against its uncapped twin");
  pc->add_option("--bench", *path, "Bench CSV file")->required()->type_name("PATH");
  add_format_option(pc, s, false);
  pc->callback([&s, path] {
    const auto ds = bench::ingest_records(*path);
    Table t{{"device", "fmt", "kind", "shape", "power_cap_w", "uncapped_tflops", "capped_tflops",
             "slowdown_pct"},
            {},
            {}};
    for (const auto& row : bench::powercap_pairs(ds)) {
      const auto& r = *row.capped;
      t.add_row({r.device, std::string(to_string(r.fmt)), std::string(bench::to_string(r.kind)),
                 shape_string(r), shortest(*r.power_cap_w), shortest(row.comparison.uncapped_tflops),
                 shortest(row.comparison.capped_tflops),
                 fixed(row.comparison.slowdown_fraction * 100.0, 2)});
    }
    s.out << t.render(report_format(s.format));
  });

  struct RatioFlags {
    std::string a, b, fmt = "bf16", kind = "gemm", variant, model;
    GemmFlags gemm;
    std::uint64_t batch = 0, seqlen = 0;
    std::optional<double> power_cap;
    std::optional<double> rsc;
    CostFlags costs;
  };
  auto rf = std::make_shared<RatioFlags>();
  auto* ratio = rep->add_subcommand("ratio", "Throughput ratio R_Th = A/B from matching records");
  ratio->add_option("--bench", *path, "Bench CSV file")->required()->type_name("PATH");
  ratio->add_option("--device-a", rf->a, "Candidate device A")->required();
  ratio->add_option("--device-b", rf->b, "Baseline device B")->required();
  ratio->add_option("--fmt", rf->fmt, "Format name, or 'fp8' for any FP8 encoding")->capture_default_str();
  ratio->add_option("--kind", rf->kind, "gemm, prefill or decode")
      ->check(CLI::IsMember({"gemm", "prefill", "decode"}))
      ->capture_default_str();
  add_gemm_flags(ratio, rf->gemm, false);
  ratio->add_option("--model", rf->model, "Model of a prefill/decode record");
  ratio->add_option("--batch", rf->batch, "Batch of a prefill/decode record");
  ratio->add_option("--seqlen", rf->seqlen, "Sequence length of a prefill/decode record");
  ratio->add_option("--variant", rf->variant, "Measurement variant");
  ratio->add_option("--power-cap", rf->power_cap, "Select capped records");
  ratio->add_option("--rsc", rf->rsc, "Also report TCO_A/TCO_B at this server cost ratio");
  add_cost_flags(ratio, rf->costs);
  add_registry_option(ratio, s);
  add_format_option(ratio, s, false);
  ratio->callback([&s, path, rf] {
    bench::RecordSelector sel;
    sel.fmt = FormatSelector::parse(rf->fmt);
    sel.kind = *bench::parse_bench_kind(rf->kind);
    if (sel.kind == bench::BenchKind::kGemm) {
      if (rf->gemm.m == 0 || rf->gemm.k == 0 || rf->gemm.n == 0) {
        throw UsageError("gemm records need --m, --k and --n");
      }
      sel.gemm = GemmShape(rf->gemm.m, rf->gemm.k, rf->gemm.n);
    } else {
      if (rf->model.empty() || rf->batch == 0 || rf->seqlen == 0) {
        throw UsageError("phase records need --model, --batch and --seqlen");
      }
      sel.phase = bench::PhaseShape{rf->model, rf->batch, rf->seqlen};
    }
    sel.variant = rf->variant;
    sel.power_cap_w = rf->power_cap;
    const auto ds = bench::ingest_records(*path);
    const DeviceRegistry* reg = sel.kind == bench::BenchKind::kGemm ? nullptr : &s.registry();
    const double ta = bench::measured_tflops(bench::find_record(ds, rf->a, sel), reg);
    const double tb = bench::measured_tflops(bench::find_record(ds, rf->b, sel), reg);
    const double r_th = bench::throughput_ratio(ds, rf->a, rf->b, sel, reg);
    Table t{{"device_a", "device_b", "tflops_a", "tflops_b", "r_th"}, {}, {}};
    std::vector<std::string> row{rf->a, rf->b, shortest(ta), shortest(tb), fixed(r_th, 4)};
    if (rf->rsc) {
      t.header.push_back("tco_ratio");
      row.push_back(fixed(tco::tco_ratio(rf->costs.inputs(*rf->rsc, r_th)), 4));
    }
    t.add_row(std::move(row));
    s.out << t.render(report_format(s.format));
  });

  auto* gen = rep->add_subcommand("generations", "Peak TFLOPS per watt across device generations");
  gen->add_option("--sheet", *path, "Spec sheet CSV (device,fmt,tflops,tdp_w)")->required()->type_name("PATH");
  add_format_option(gen, s, false);
  gen->callback([&s, path] {
    const auto specs = bench::load_spec_sheet(*path);
    Table t{{"device", "fmt", "tflops", "tdp_w", "tflops_per_w", "increase"}, {}, {}};
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const auto& spec = specs[i];
      const DataFormat fmt = spec.peaks().begin()->first;
      std::string inc = "-";
      if (i > 0) {
        const DataFormat prev_fmt = specs[i - 1].peaks().begin()->first;
        inc = std::to_string(efficiency_increase(specs[i - 1], spec, prev_fmt, fmt)) + "%";
      }
      t.add_row({spec.name(), std::string(to_string(fmt)), shortest(spec.peaks().begin()->second),
                 shortest(spec.tdp_watts()), fixed(tflops_per_watt(spec, fmt), 2), inc});
    }
    s.out << t.render(report_format(s.format));
  });
}

const CLI::App* deepest(const CLI::App* app) {
  for (const auto* sub : app->get_subcommands()) return deepest(sub);
  return app;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("TCO, FLOPs, roofline and FP8 analysis for LLM inference accelerators", "infercost");
  app.require_subcommand(1);
  app.set_version_flag("--version", "infercost 0.1.0");
  Shared shared{out, err, {}, "text", std::nullopt};
  register_tco(app, shared);
  register_flops(app, shared);
  register_roofline(app, shared);
  register_mfu(app, shared);
  register_quantize(app, shared);
  register_ingest(app, shared);
  register_report(app, shared);

  std::vector<const char*> argv{"infercost"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << deepest(&app)->help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << deepest(&app)->help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace infercost::cli
