// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infercost/tco.hpp"

namespace infercost::cli {

enum class ReportFormat { kText, kCsv, kSvg };

std::string_view to_string(ReportFormat f) noexcept;
std::optional<ReportFormat> parse_report_format(std::string_view name) noexcept;

// Fixed-point with `precision` digits ("%.4f").
std::string fixed(double v, int precision);
// Shortest decimal that round-trips.
std::string shortest(double v);

// Column-aligned text table or CSV. Cells are preformatted strings.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // '#' comment lines emitted before the header.
  std::vector<std::string> notes;

  void add_row(std::vector<std::string> row);
  // kSvg is rejected with InvalidArgument: only grids render to SVG.
  std::string render(ReportFormat fmt) const;
};

// text: aligned table with axis headers and 4-digit cells.
// csv:  `# cost_server_B=..,cost_infra_B=..,R_IC=..`, then `R_Th\R_SC,<rsc...>`
//       and one row per R_Th, all numbers in shortest round-trip form.
// svg:  one <rect class="cell"> per cell on a diverging scale centred at 1.0,
//       annotated to 2 decimals.
// Throws InvalidArgument for an empty grid.
std::string render_heatmap(const tco::TcoRatioGrid& grid, ReportFormat fmt);

// Reads the csv form of render_heatmap back. Throws ParseError.
tco::TcoRatioGrid parse_grid_csv(std::istream& in, const std::string& source = "<grid>");

}  // namespace infercost::cli
