// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "infercost/quantize.hpp"

namespace infercost::fp8 {

// Plain-text matrices: one row per line, whitespace-separated values. Blank
// lines and lines starting with '#' are ignored; rows must have equal
// length.
Matrix read_matrix(std::istream& in, const std::string& source = "<matrix>");

// Writes the shortest decimal form that round-trips each double.
void write_matrix(std::ostream& out, const Matrix& m);

// Binary dump, little-endian:
//   "FP8Q"        4 bytes magic
//   version       u8 (= 1)
//   format id     u8 (Fp8Kind)
//   granularity   u8 (0 per-tensor, 1 per-row)
//   rows, cols    u64 each
//   codes         rows*cols bytes, row-major
//   scales        f64 each, 1 or `rows` of them
inline constexpr char kQuantizedMagic[4] = {'F', 'P', '8', 'Q'};
inline constexpr std::uint8_t kQuantizedVersion = 1;

void write_quantized(std::ostream& out, const QuantizedTensor& qt);
QuantizedTensor read_quantized(std::istream& in);

}  // namespace infercost::fp8
