// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include "infercost/bench.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "csv.hpp"
#include "infercost/checked.hpp"
#include "infercost/error.hpp"

namespace infercost::bench {

std::string_view to_string(BenchKind kind) noexcept {
  switch (kind) {
    case BenchKind::kGemm: return "gemm";
    case BenchKind::kPrefill: return "prefill";
    case BenchKind::kDecode: return "decode";
  }
  return "unknown";
}

std::optional<BenchKind> parse_bench_kind(std::string_view name) noexcept {
  for (BenchKind k : {BenchKind::kGemm, BenchKind::kPrefill, BenchKind::kDecode}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

namespace {

bool positive(const std::optional<double>& v) { return !v || *v > 0.0; }

std::string format_number(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), end);
}

}  // namespace

void BenchRecord::validate() const {
  if (device.empty()) throw InvalidArgument("record has no device");
  if (latency_s.has_value() == tflops.has_value()) {
    throw InvalidArgument("record needs exactly one of latency_s or tflops");
  }
  if (!positive(latency_s) || !positive(tflops) || !positive(power_w) || !positive(power_cap_w)) {
    throw InvalidArgument("record numerics must be > 0");
  }
  if (kind == BenchKind::kGemm) {
    if (!gemm) throw InvalidArgument("gemm record needs M, K and N");
    if (phase) throw InvalidArgument("gemm record must not carry model/batch/seqlen");
  } else {
    if (!phase) throw InvalidArgument(std::string(to_string(kind)) + " record needs model, batch and seqlen");
    if (gemm) throw InvalidArgument(std::string(to_string(kind)) + " record must not carry M/K/N");
    if (phase->model.empty() || phase->batch == 0 || phase->seqlen == 0) {
      throw InvalidArgument("phase record needs a model and positive batch/seqlen");
    }
  }
}

std::string BenchRecord::key_without_cap() const {
  std::ostringstream os;
  os << device << '|' << to_string(fmt) << '|' << to_string(kind) << '|';
  if (gemm) os << gemm->m << 'x' << gemm->k << 'x' << gemm->n;
  if (phase) os << phase->model << '/' << phase->batch << '/' << phase->seqlen;
  os << '|' << variant;
  return os.str();
}

std::string BenchRecord::key() const {
  return key_without_cap() + "|cap=" + (power_cap_w ? format_number(*power_cap_w) : "");
}

BenchDataset::BenchDataset(std::vector<BenchRecord> records) : records_(std::move(records)) {
  std::set<std::string> seen;
  for (const auto& r : records_) {
    r.validate();
    if (!seen.insert(r.key()).second) {
      throw InvalidArgument("duplicate record " + r.key() +
                            (r.line ? " (line " + std::to_string(r.line) + ")" : ""));
    }
  }
}

namespace {

constexpr std::array<std::string_view, 14> kColumns = {
    "device", "fmt",    "kind",      "M",      "K",       "N",           "model",
    "batch",  "seqlen", "latency_s", "tflops", "power_w", "power_cap_w", "variant"};

}  // namespace

BenchDataset parse_records(std::istream& in, const std::string& source) {
  detail::CsvReader csv(in, source);
  if (!csv.read_header()) return {};

  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < csv.header().size(); ++i) {
    const auto& name = csv.header()[i];
    if (std::find(kColumns.begin(), kColumns.end(), name) == kColumns.end()) {
      csv.fail("unknown column '" + name + "'");
    }
    if (!col.emplace(name, i).second) csv.fail("duplicate column '" + name + "'");
  }
  for (const char* required : {"device", "fmt", "kind"}) {
    if (!col.count(required)) csv.fail(std::string("missing required column '") + required + "'");
  }
  if (!col.count("latency_s") && !col.count("tflops")) {
    csv.fail("header needs a latency_s or tflops column");
  }

  std::vector<BenchRecord> records;
  std::set<std::string> seen;
  std::vector<std::string> f;
  while (csv.next(f)) {
    auto cell = [&](const char* name) -> std::string {
      auto it = col.find(name);
      return it == col.end() ? std::string() : f[it->second];
    };
    BenchRecord r;
    r.line = csv.line();
    r.device = cell("device");
    auto fmt = parse_data_format(cell("fmt"));
    if (!fmt) csv.fail("unknown data format '" + cell("fmt") + "'");
    r.fmt = *fmt;
    auto kind = parse_bench_kind(cell("kind"));
    if (!kind) csv.fail("unknown kind '" + cell("kind") + "'");
    r.kind = *kind;

    const auto m = csv.count(cell("M"), "M");
    const auto k = csv.count(cell("K"), "K");
    const auto n = csv.count(cell("N"), "N");
    if (m || k || n) {
      if (!(m && k && n)) csv.fail("M, K and N must be given together");
      try {
        r.gemm = GemmShape(*m, *k, *n);
      } catch (const InvalidArgument& e) {
        csv.fail(e.what());
      }
    }
    const auto model = cell("model");
    const auto batch = csv.count(cell("batch"), "batch");
    const auto seqlen = csv.count(cell("seqlen"), "seqlen");
    if (!model.empty() || batch || seqlen) {
      r.phase = PhaseShape{model, batch.value_or(0), seqlen.value_or(0)};
    }
    r.latency_s = csv.number(cell("latency_s"), "latency_s");
    r.tflops = csv.number(cell("tflops"), "tflops");
    r.power_w = csv.number(cell("power_w"), "power_w");
    r.power_cap_w = csv.number(cell("power_cap_w"), "power_cap_w");
    r.variant = cell("variant");
    try {
      r.validate();
    } catch (const InvalidArgument& e) {
      csv.fail(e.what());
    }
    if (!seen.insert(r.key()).second) csv.fail("duplicate record " + r.key());
    records.push_back(std::move(r));
  }
  return BenchDataset(std::move(records));
}

BenchDataset ingest_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("cannot open bench file '" + path.string() + "'");
  return parse_records(in, path.string());
}

FlopCount record_flops(const BenchRecord& record, const DeviceRegistry& registry) {
  switch (record.kind) {
    case BenchKind::kGemm:
      return gemm_flops(*record.gemm);
    case BenchKind::kPrefill: {
      const auto& model = registry.model(record.phase->model);
      return checked::mul(record.phase->batch, forward_flops(model, record.phase->seqlen));
    }
    case BenchKind::kDecode: {
      const auto& model = registry.model(record.phase->model);
      return decode_step_flops(model, SequenceBatch::uniform(record.phase->batch, record.phase->seqlen))
          .total;
    }
  }
  throw InvalidArgument("unknown record kind");
}

double derive_tflops(const BenchRecord& record, FlopCount flops) {
  if (!record.latency_s) throw InvalidArgument("record has no latency to derive TFLOPS from");
  return static_cast<double>(flops) / *record.latency_s / 1e12;
}

double measured_tflops(const BenchRecord& record, const DeviceRegistry* registry) {
  if (record.tflops) return *record.tflops;
  if (record.kind == BenchKind::kGemm) return derive_tflops(record, gemm_flops(*record.gemm));
  if (!registry) throw Unavailable("latency record needs a model registry to derive TFLOPS");
  return derive_tflops(record, record_flops(record, *registry));
}

PowerCapComparison powercap_slowdown(const BenchRecord& uncapped, const BenchRecord& capped) {
  if (uncapped.key_without_cap() != capped.key_without_cap()) {
    throw InvalidArgument("power-cap comparison needs records that differ only in power_cap_w");
  }
  if (!uncapped.tflops || !capped.tflops) {
    throw InvalidArgument("power-cap comparison needs TFLOPS on both records");
  }
  PowerCapComparison c;
  c.uncapped_tflops = *uncapped.tflops;
  c.capped_tflops = *capped.tflops;
  c.slowdown_fraction = (c.uncapped_tflops - c.capped_tflops) / c.uncapped_tflops;
  return c;
}

std::vector<PowerCapRow> powercap_pairs(const BenchDataset& dataset) {
  std::map<std::string, const BenchRecord*> uncapped;
  for (const auto& r : dataset.records()) {
    if (!r.power_cap_w) uncapped.emplace(r.key_without_cap(), &r);
  }
  std::vector<PowerCapRow> rows;
  for (const auto& r : dataset.records()) {
    if (!r.power_cap_w) continue;
    auto it = uncapped.find(r.key_without_cap());
    if (it == uncapped.end()) continue;
    rows.push_back({it->second, &r, powercap_slowdown(*it->second, r)});
  }
  return rows;
}

bool RecordSelector::matches(const BenchRecord& r) const {
  return fmt.matches(r.fmt) && kind == r.kind && gemm == r.gemm && phase == r.phase &&
         variant == r.variant && power_cap_w == r.power_cap_w;
}

const BenchRecord& find_record(const BenchDataset& dataset, const std::string& device,
                               const RecordSelector& selector) {
  const BenchRecord* found = nullptr;
  for (const auto& r : dataset.records()) {
    if (r.device != device || !selector.matches(r)) continue;
    if (found) {
      throw InvalidArgument("selector matches more than one record of '" + device + "'");
    }
    found = &r;
  }
  if (!found) {
    throw NotFound("no " + selector.fmt.to_string() + " " + std::string(to_string(selector.kind)) +
                   " record for device '" + device + "'");
  }
  return *found;
}

double throughput_ratio(const BenchDataset& dataset, const std::string& device_a,
                        const std::string& device_b, const RecordSelector& selector,
                        const DeviceRegistry* registry) {
  const double a = measured_tflops(find_record(dataset, device_a, selector), registry);
  const double b = measured_tflops(find_record(dataset, device_b, selector), registry);
  return a / b;
}

MfuTable mfu_table(const BenchDataset& dataset, const DeviceRegistry& registry) {
  MfuTable table;
  for (const auto& r : dataset.records()) {
    const HardwareSpec* spec = registry.find_device(r.device);
    if (!spec) {
      table.skipped.push_back({&r, "device '" + r.device + "' not in registry"});
      continue;
    }
    if (!spec->peak_tflops(r.fmt)) {
      table.skipped.push_back({&r, "no peak for " + std::string(to_string(r.fmt))});
      continue;
    }
    try {
      table.rows.push_back({&r, mfu(measured_tflops(r, &registry), *spec, r.fmt)});
    } catch (const Error& e) {
      table.skipped.push_back({&r, e.what()});
    }
  }
  return table;
}

std::vector<HardwareSpec> parse_spec_sheet(std::istream& in, const std::string& source) {
  detail::CsvReader csv(in, source);
  if (!csv.read_header()) return {};
  const std::vector<std::string> expected = {"device", "fmt", "tflops", "tdp_w"};
  if (csv.header() != expected) csv.fail("spec sheet header must be device,fmt,tflops,tdp_w");

  std::vector<HardwareSpec> out;
  std::vector<std::string> f;
  while (csv.next(f)) {
    auto fmt = parse_data_format(f[1]);
    if (!fmt) csv.fail("unknown data format '" + f[1] + "'");
    const auto tflops = csv.number(f[2], "tflops");
    const auto tdp = csv.number(f[3], "tdp_w");
    if (!tflops || !tdp) csv.fail("tflops and tdp_w are required");
    try {
      out.emplace_back(f[0], std::map<DataFormat, double>{{*fmt, *tflops}}, *tdp);
    } catch (const InvalidArgument& e) {
      csv.fail(e.what());
    }
  }
  return out;
}

std::vector<HardwareSpec> load_spec_sheet(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("cannot open spec sheet '" + path.string() + "'");
  return parse_spec_sheet(in, path.string());
}

}  // namespace infercost::bench
