// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "infercost/data_format.hpp"
#include "infercost/flops.hpp"
#include "infercost/registry.hpp"
#include "infercost/roofline.hpp"

namespace infercost::bench {

enum class BenchKind { kGemm, kPrefill, kDecode };
std::string_view to_string(BenchKind kind) noexcept;
std::optional<BenchKind> parse_bench_kind(std::string_view name) noexcept;

// Shape of a whole-model phase measurement.
struct PhaseShape {
  std::string model;
  std::uint64_t batch = 0;
  std::uint64_t seqlen = 0;

  bool operator==(const PhaseShape&) const = default;
};

// One measured data point. Exactly one of latency_s / tflops is set; gemm
// records carry `gemm`, prefill/decode records carry `phase`.
struct BenchRecord {
  std::string device;
  DataFormat fmt = DataFormat::kBF16;
  BenchKind kind = BenchKind::kGemm;
  std::optional<GemmShape> gemm;
  std::optional<PhaseShape> phase;
  std::optional<double> latency_s;
  std::optional<double> tflops;
  std::optional<double> power_w;
  std::optional<double> power_cap_w;
  // Free-form measurement variant (e.g. scaling mode); part of the key.
  std::string variant;
  std::size_t line = 0;

  // Throws InvalidArgument on a broken invariant.
  void validate() const;
  // Identity used for duplicate detection.
  std::string key() const;
  // Identity ignoring the power cap.
  std::string key_without_cap() const;
};

class BenchDataset {
 public:
  BenchDataset() = default;
  explicit BenchDataset(std::vector<BenchRecord> records);

  const std::vector<BenchRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

 private:
  std::vector<BenchRecord> records_;
};

// CSV with a mandatory header. Recognised columns:
//   device,fmt,kind,M,K,N,model,batch,seqlen,latency_s,tflops,power_w,power_cap_w,variant
// Columns may be omitted or reordered; unknown columns are rejected. Lines
// starting with '#' are comments. Blank cells mean "absent".
BenchDataset parse_records(std::istream& in, const std::string& source = "<bench>");
BenchDataset ingest_records(const std::filesystem::path& path);

// FLOPs of the measured operation: gemm -> 2MKN, prefill -> batch * forward,
// decode -> one decode step over `batch` sequences of length `seqlen`.
FlopCount record_flops(const BenchRecord& record, const DeviceRegistry& registry);

// flops / latency / 1e12. Throws InvalidArgument if the record has no latency.
double derive_tflops(const BenchRecord& record, FlopCount flops);

// Stored TFLOPS, or derived from latency when needed.
double measured_tflops(const BenchRecord& record, const DeviceRegistry* registry = nullptr);

struct PowerCapComparison {
  double uncapped_tflops = 0.0;
  double capped_tflops = 0.0;
  double slowdown_fraction = 0.0;  // (uncapped - capped) / uncapped
};

// Records must agree on every key except power_cap_w and both carry TFLOPS.
PowerCapComparison powercap_slowdown(const BenchRecord& uncapped, const BenchRecord& capped);

struct PowerCapRow {
  const BenchRecord* uncapped;
  const BenchRecord* capped;
  PowerCapComparison comparison;
};

// Pairs every capped record with its uncapped twin, in file order.
std::vector<PowerCapRow> powercap_pairs(const BenchDataset& dataset);

struct RecordSelector {
  FormatSelector fmt = DataFormat::kBF16;
  BenchKind kind = BenchKind::kGemm;
  std::optional<GemmShape> gemm;
  std::optional<PhaseShape> phase;
  std::string variant;
  std::optional<double> power_cap_w;

  bool matches(const BenchRecord& r) const;
};

// The single record of `device` matching the selector; NotFound when none,
// InvalidArgument when ambiguous.
const BenchRecord& find_record(const BenchDataset& dataset, const std::string& device,
                               const RecordSelector& selector);

// tflops_A / tflops_B, the R_Th input of the TCO model.
double throughput_ratio(const BenchDataset& dataset, const std::string& device_a,
                        const std::string& device_b, const RecordSelector& selector,
                        const DeviceRegistry* registry = nullptr);

struct MfuRow {
  const BenchRecord* record;
  MfuReport report;
};

struct SkippedRecord {
  const BenchRecord* record;
  std::string reason;
};

struct MfuTable {
  std::vector<MfuRow> rows;
  std::vector<SkippedRecord> skipped;
};

// MFU of every record whose device has a peak for its format; the rest are
// listed in `skipped` with the reason.
MfuTable mfu_table(const BenchDataset& dataset, const DeviceRegistry& registry);

// Datasheet rows `device,fmt,tflops,tdp_w` (GPU generation tables).
std::vector<HardwareSpec> parse_spec_sheet(std::istream& in, const std::string& source = "<spec sheet>");
std::vector<HardwareSpec> load_spec_sheet(const std::filesystem::path& path);

}  // namespace infercost::bench
