// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include "infercost/cli/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

#include "infercost/error.hpp"

namespace infercost::cli {

std::string_view to_string(ReportFormat f) noexcept {
  switch (f) {
    case ReportFormat::kText: return "text";
    case ReportFormat::kCsv: return "csv";
    case ReportFormat::kSvg: return "svg";
  }
  return "text";
}

std::optional<ReportFormat> parse_report_format(std::string_view name) noexcept {
  for (auto f : {ReportFormat::kText, ReportFormat::kCsv, ReportFormat::kSvg}) {
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

std::string fixed(double v, int precision) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*f", precision, v);
  return buf.data();
}

std::string shortest(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), end);
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) throw InvalidArgument("table row width does not match header");
  rows.push_back(std::move(row));
}

std::string Table::render(ReportFormat fmt) const {
  std::ostringstream os;
  for (const auto& n : notes) os << "# " << n << '\n';
  if (fmt == ReportFormat::kSvg) throw InvalidArgument("svg output is only available for grids");
  if (fmt == ReportFormat::kCsv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string pad(width[i] - cells[i].size(), ' ');
      if (i) out += "  ";
      out += i == 0 ? cells[i] + pad : pad + cells[i];
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    os << out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

namespace {

std::string assumptions_note(const tco::GridAssumptions& a, const char* sep) {
  return "cost_server_B=" + shortest(a.cost_server_b) + sep + "cost_infra_B=" +
         shortest(a.cost_infra_b) + sep + "R_IC=" + shortest(a.r_ic);
}

// Green below parity, red above, white at 1. Saturates at a factor of 2.
std::string cell_colour(double ratio) {
  const double t = std::clamp(std::log2(ratio), -1.0, 1.0);
  const std::array<double, 3> white = {255, 255, 255};
  const std::array<double, 3> green = {26, 152, 80};
  const std::array<double, 3> red = {215, 48, 39};
  const auto& end = t < 0 ? green : red;
  const double w = std::abs(t);
  std::array<char, 8> buf{};
  std::array<int, 3> c{};
  for (int i = 0; i < 3; ++i) c[i] = static_cast<int>(std::lround(white[i] + (end[i] - white[i]) * w));
  std::snprintf(buf.data(), buf.size(), "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf.data();
}

std::string render_svg(const tco::TcoRatioGrid& g) {
  constexpr int kCellW = 64, kCellH = 36, kLeft = 80, kTop = 56, kBottom = 48;
  const int cols = static_cast<int>(g.rsc_axis.size());
  const int rows = static_cast<int>(g.rth_axis.size());
  const int width = kLeft + cols * kCellW + 16;
  const int height = kTop + rows * kCellH + kBottom;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\">\n"
     << "<title>TCO_A / TCO_B at fixed traffic</title>\n"
     << "<text x=\"" << kLeft << "\" y=\"20\" font-size=\"13\">TCO_A / TCO_B ("
     << assumptions_note(g.assumptions, ", ") << ")</text>\n";
  // Highest R_Th on top so the vertical axis grows upward.
  for (int i = 0; i < rows; ++i) {
    const int y = kTop + (rows - 1 - i) * kCellH;
    os << "<text class=\"axis\" x=\"" << kLeft - 8 << "\" y=\"" << y + kCellH / 2 + 4
       << "\" font-size=\"11\" text-anchor=\"end\">" << fixed(g.rth_axis[i], 2) << "</text>\n";
    for (int j = 0; j < cols; ++j) {
      const int x = kLeft + j * kCellW;
      const double v = g.cells[i][j];
      os << "<rect class=\"cell\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCellW
         << "\" height=\"" << kCellH << "\" fill=\"" << cell_colour(v)
         << "\" stroke=\"#ffffff\" data-rsc=\"" << shortest(g.rsc_axis[j]) << "\" data-rth=\""
         << shortest(g.rth_axis[i]) << "\"/>\n"
         << "<text class=\"value\" x=\"" << x + kCellW / 2 << "\" y=\"" << y + kCellH / 2 + 4
         << "\" font-size=\"11\" text-anchor=\"middle\">" << fixed(v, 2) << "</text>\n";
    }
  }
  const int axis_y = kTop + rows * kCellH;
  for (int j = 0; j < cols; ++j) {
    os << "<text class=\"axis\" x=\"" << kLeft + j * kCellW + kCellW / 2 << "\" y=\"" << axis_y + 16
       << "\" font-size=\"11\" text-anchor=\"middle\">" << fixed(g.rsc_axis[j], 2) << "</text>\n";
  }
  os << "<text class=\"label\" x=\"" << kLeft + cols * kCellW / 2 << "\" y=\"" << axis_y + 38
     << "\" font-size=\"12\" text-anchor=\"middle\">R_SC (server cost ratio A/B)</text>\n"
     << "<text class=\"label\" x=\"14\" y=\"" << kTop + rows * kCellH / 2
     << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
     << kTop + rows * kCellH / 2 << ")\">R_Th</text>\n"
     << "</svg>\n";
  return os.str();
}

}  // namespace

std::string render_heatmap(const tco::TcoRatioGrid& grid, ReportFormat fmt) {
  if (grid.empty() || grid.cells.size() != grid.rth_axis.size()) {
    throw InvalidArgument("cannot render an empty grid");
  }
  if (fmt == ReportFormat::kSvg) return render_svg(grid);
  const bool csv = fmt == ReportFormat::kCsv;
  Table t;
  t.notes.push_back(assumptions_note(grid.assumptions, csv ? "," : " "));
  t.header.push_back("R_Th\\R_SC");
  for (double r : grid.rsc_axis) t.header.push_back(csv ? shortest(r) : fixed(r, 2));
  for (std::size_t i = 0; i < grid.rth_axis.size(); ++i) {
    std::vector<std::string> row{csv ? shortest(grid.rth_axis[i]) : fixed(grid.rth_axis[i], 2)};
    for (double v : grid.cells[i]) row.push_back(csv ? shortest(v) : fixed(v, 4));
    t.add_row(std::move(row));
  }
  return t.render(fmt);
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

tco::TcoRatioGrid parse_grid_csv(std::istream& in, const std::string& source) {
  tco::TcoRatioGrid g;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  auto number = [&](const std::string& s) {
    double v = 0.0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) {
      throw ParseError(source, lineno, "invalid number '" + s + "'");
    }
    return v;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      for (const auto& kv : split(line.substr(line.find_first_not_of("# ")), ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = kv.substr(0, eq);
        const double v = number(kv.substr(eq + 1));
        if (key == "cost_server_B") g.assumptions.cost_server_b = v;
        else if (key == "cost_infra_B") g.assumptions.cost_infra_b = v;
        else if (key == "R_IC") g.assumptions.r_ic = v;
      }
      continue;
    }
    const auto cells = split(line, ',');
    if (!have_header) {
      if (cells.empty() || cells.front() != "R_Th\\R_SC") {
        throw ParseError(source, lineno, "expected header starting with R_Th\\R_SC");
      }
      for (std::size_t j = 1; j < cells.size(); ++j) g.rsc_axis.push_back(number(cells[j]));
      have_header = true;
      continue;
    }
    if (cells.size() != g.rsc_axis.size() + 1) {
      throw ParseError(source, lineno, "expected " + std::to_string(g.rsc_axis.size() + 1) + " fields");
    }
    g.rth_axis.push_back(number(cells.front()));
    std::vector<double> row;
    for (std::size_t j = 1; j < cells.size(); ++j) row.push_back(number(cells[j]));
    g.cells.push_back(std::move(row));
  }
  if (!have_header || g.empty()) throw ParseError(source, lineno, "grid has no cells");
  return g;
}

}  // namespace infercost::cli
