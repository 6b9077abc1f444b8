// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include "infercost/data_format.hpp"

#include <algorithm>
#include <cctype>

#include "infercost/error.hpp"

namespace infercost {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(DataFormat fmt) noexcept {
  switch (fmt) {
    case DataFormat::kBF16: return "bf16";
    case DataFormat::kFP16: return "fp16";
    case DataFormat::kFP8E4M3Ocp: return "fp8-e4m3-ocp";
    case DataFormat::kFP8E4M3G2: return "fp8-e4m3-g2";
    case DataFormat::kFP8E5M2: return "fp8-e5m2";
  }
  return "unknown";
}

std::optional<DataFormat> parse_data_format(std::string_view name) noexcept {
  const std::string key = lowercase(name);
  for (DataFormat fmt : kAllDataFormats) {
    if (key == to_string(fmt)) return fmt;
  }
  return std::nullopt;
}

DataFormat data_format_from_string(std::string_view name) {
  if (auto fmt = parse_data_format(name)) return *fmt;
  throw NotFound("unknown data format '" + std::string(name) + "'");
}

FormatFamily family(DataFormat fmt) noexcept {
  switch (fmt) {
    case DataFormat::kBF16:
    case DataFormat::kFP16: return FormatFamily::k16Bit;
    default: return FormatFamily::kFP8;
  }
}

int bytes_per_element(DataFormat fmt) noexcept {
  return family(fmt) == FormatFamily::kFP8 ? 1 : 2;
}

FormatSelector FormatSelector::parse(std::string_view text) {
  if (lowercase(text) == "fp8") return any_fp8();
  return FormatSelector(data_format_from_string(text));
}

bool FormatSelector::matches(DataFormat fmt) const noexcept {
  if (exact_) return *exact_ == fmt;
  return family_ && family(fmt) == *family_;
}

std::string FormatSelector::to_string() const {
  if (exact_) return std::string(infercost::to_string(*exact_));
  return "fp8";
}

}  // namespace infercost
