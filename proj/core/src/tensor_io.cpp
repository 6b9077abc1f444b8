// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include "infercost/tensor_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "infercost/error.hpp"

namespace infercost::fp8 {

Matrix read_matrix(std::istream& in, const std::string& source) {
  std::vector<double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;

    std::size_t count = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p == end) break;
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc() || (next < end && *next != ' ' && *next != '\t' && *next != '\r')) {
        throw ParseError(source, line_no, "invalid number");
      }
      if (!std::isfinite(v)) throw ParseError(source, line_no, "non-finite value");
      data.push_back(v);
      ++count;
      p = next;
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw ParseError(source, line_no,
                       "row has " + std::to_string(count) + " values, expected " + std::to_string(cols));
    }
    ++rows;
  }
  return Matrix(rows, cols, std::move(data));
}

void write_matrix(std::ostream& out, const Matrix& m) {
  std::array<char, 32> buf{};
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), m(r, c));
      (void)ec;
      if (c) out << ' ';
      out.write(buf.data(), end - buf.data());
    }
    out << '\n';
  }
}

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
    throw ParseError("quantized dump truncated");
  }
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_quantized(std::ostream& out, const QuantizedTensor& qt) {
  out.write(kQuantizedMagic, sizeof(kQuantizedMagic));
  put_le<std::uint8_t>(out, kQuantizedVersion);
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(qt.format));
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(qt.granularity));
  put_le<std::uint64_t>(out, qt.rows);
  put_le<std::uint64_t>(out, qt.cols);
  out.write(reinterpret_cast<const char*>(qt.codes.data()),
            static_cast<std::streamsize>(qt.codes.size()));
  for (double s : qt.scales) put_le<double>(out, s);
}

QuantizedTensor read_quantized(std::istream& in) {
  char magic[4];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kQuantizedMagic, sizeof(magic)) != 0) {
    throw ParseError("not a quantized tensor dump (bad magic)");
  }
  const auto version = get_le<std::uint8_t>(in);
  if (version != kQuantizedVersion) {
    throw ParseError("unsupported quantized dump version " + std::to_string(version));
  }
  QuantizedTensor qt;
  const auto format = get_le<std::uint8_t>(in);
  if (format > static_cast<std::uint8_t>(Fp8Kind::kE5M2)) throw ParseError("unknown FP8 format id");
  qt.format = static_cast<Fp8Kind>(format);
  const auto gran = get_le<std::uint8_t>(in);
  if (gran > 1) throw ParseError("unknown scale granularity");
  qt.granularity = static_cast<Granularity>(gran);
  qt.rows = get_le<std::uint64_t>(in);
  qt.cols = get_le<std::uint64_t>(in);
  if (qt.cols != 0 && qt.rows > (std::uint64_t{1} << 40) / qt.cols) {
    throw ParseError("quantized dump shape too large");
  }
  qt.codes.resize(qt.rows * qt.cols);
  if (!in.read(reinterpret_cast<char*>(qt.codes.data()), static_cast<std::streamsize>(qt.codes.size()))) {
    throw ParseError("quantized dump truncated");
  }
  const Fp8Format& f = Fp8Format::get(qt.format);
  for (std::uint8_t c : qt.codes) {
    if (!f.is_finite_code(c)) throw ParseError("quantized dump holds a non-finite code");
  }
  const std::size_t n_scales = qt.granularity == Granularity::kPerRow ? qt.rows : 1;
  qt.scales.reserve(n_scales);
  for (std::size_t i = 0; i < n_scales; ++i) {
    const double s = get_le<double>(in);
    if (!std::isfinite(s) || !(s > 0.0)) throw ParseError("quantized dump holds an invalid scale");
    qt.scales.push_back(s);
  }
  return qt;
}

}  // namespace infercost::fp8
