// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "infercost/error.hpp"

namespace infercost::detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Header-driven reader for comma-separated tables without quoting.
class CsvReader {
 public:
  CsvReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  // Reads the header; false on an empty document.
  bool read_header() {
    std::vector<std::string> fields;
    if (!next(fields)) return false;
    header_ = std::move(fields);
    return true;
  }

  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      const std::string t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      fields = split_fields(line);
      if (!header_.empty() && fields.size() != header_.size()) {
        fail("expected " + std::to_string(header_.size()) + " fields, got " +
             std::to_string(fields.size()));
      }
      return true;
    }
    return false;
  }

  const std::vector<std::string>& header() const { return header_; }
  std::size_t line() const { return line_; }
  const std::string& source() const { return source_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_, what); }

  std::optional<double> number(const std::string& cell, const std::string& column) const {
    if (cell.empty()) return std::nullopt;
    double v = 0.0;
    auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || end != cell.data() + cell.size() || !std::isfinite(v)) {
      fail("column '" + column + "': invalid number '" + cell + "'");
    }
    return v;
  }

  std::optional<std::uint64_t> count(const std::string& cell, const std::string& column) const {
    if (cell.empty()) return std::nullopt;
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || end != cell.data() + cell.size()) {
      fail("column '" + column + "': invalid integer '" + cell + "'");
    }
    return v;
  }

 private:
  std::istream& in_;
  std::string source_;
  std::vector<std::string> header_;
  std::size_t line_ = 0;
};

}  // namespace infercost::detail
