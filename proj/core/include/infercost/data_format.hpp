// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace infercost {

enum class DataFormat {
  kBF16,
  kFP16,
  kFP8E4M3Ocp,
  kFP8E4M3G2,
  kFP8E5M2,
};

inline constexpr std::array<DataFormat, 5> kAllDataFormats = {
    DataFormat::kBF16, DataFormat::kFP16, DataFormat::kFP8E4M3Ocp,
    DataFormat::kFP8E4M3G2, DataFormat::kFP8E5M2};

enum class FormatFamily { k16Bit, kFP8 };

std::string_view to_string(DataFormat fmt) noexcept;

// Accepts the canonical lowercase names ("bf16", "fp8-e4m3-ocp", ...),
// case-insensitively.
std::optional<DataFormat> parse_data_format(std::string_view name) noexcept;

// Throws NotFound for names outside the enumeration.
DataFormat data_format_from_string(std::string_view name);

FormatFamily family(DataFormat fmt) noexcept;

// Storage width of one element in bytes.
int bytes_per_element(DataFormat fmt) noexcept;

// Matches either one exact format or any member of a family. Used by
// benchmark selectors that only say "fp8".
class FormatSelector {
 public:
  FormatSelector(DataFormat exact) : exact_(exact) {}  // NOLINT(google-explicit-constructor)
  static FormatSelector any_fp8() { return FormatSelector(FormatFamily::kFP8); }

  // "fp8" selects the family; anything else must be an exact format name.
  static FormatSelector parse(std::string_view text);

  bool matches(DataFormat fmt) const noexcept;
  std::string to_string() const;

 private:
  explicit FormatSelector(FormatFamily fam) : family_(fam) {}

  std::optional<DataFormat> exact_;
  std::optional<FormatFamily> family_;
};

}  // namespace infercost
