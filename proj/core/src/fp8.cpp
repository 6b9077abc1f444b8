// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include "infercost/fp8.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "infercost/error.hpp"

namespace infercost::fp8 {

namespace {

struct FormatTable {
  Fp8Format format;
  std::vector<double> grid;
};

double decode_bits(const Fp8Format& f, std::uint8_t code) noexcept {
  const int exp_max = (1 << f.exponent_bits) - 1;
  const int man_max = (1 << f.mantissa_bits) - 1;
  const bool negative = (code & 0x80) != 0;
  const int exponent = (code >> f.mantissa_bits) & exp_max;
  const int mantissa = code & man_max;

  double magnitude;
  if (f.special_values == SpecialValuePolicy::kSingleNaN && exponent == exp_max &&
      mantissa == man_max) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (f.special_values == SpecialValuePolicy::kIeeeReserved && exponent == exp_max) {
    if (mantissa != 0) return std::numeric_limits<double>::quiet_NaN();
    magnitude = std::numeric_limits<double>::infinity();
  } else if (exponent == 0) {
    magnitude = std::ldexp(mantissa, 1 - f.bias - f.mantissa_bits);
  } else {
    magnitude = std::ldexp((1 << f.mantissa_bits) + mantissa, exponent - f.bias - f.mantissa_bits);
  }
  return negative ? -magnitude : magnitude;
}

FormatTable make_table(Fp8Format format) {
  FormatTable t{format, {}};
  for (int code = 0; code < 0x80; ++code) {
    const double v = decode_bits(format, static_cast<std::uint8_t>(code));
    if (std::isfinite(v)) t.grid.push_back(v);
  }
  return t;
}

const std::array<FormatTable, 3>& tables() {
  static const std::array<FormatTable, 3> kTables = {
      make_table({Fp8Kind::kE4M3Ocp, "e4m3-ocp", 4, 3, 7, SpecialValuePolicy::kSingleNaN, 448.0}),
      make_table({Fp8Kind::kE4M3G2, "e4m3-g2", 4, 3, 7, SpecialValuePolicy::kIeeeReserved, 240.0}),
      make_table({Fp8Kind::kE5M2, "e5m2", 5, 2, 15, SpecialValuePolicy::kIeeeReserved, 57344.0}),
  };
  return kTables;
}

const FormatTable& table(Fp8Kind kind) { return tables()[static_cast<std::size_t>(kind)]; }

struct MagnitudeBracket {
  std::size_t down;
  std::size_t up;
};

// Indices of the grid magnitudes bracketing `mag` (already <= max_finite).
MagnitudeBracket bracket(std::span<const double> grid, double mag) {
  auto it = std::lower_bound(grid.begin(), grid.end(), mag);
  const auto up = static_cast<std::size_t>(it - grid.begin());
  if (grid[up] == mag) return {up, up};
  return {up - 1, up};
}

void require_finite(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("cannot round a non-finite value to FP8");
}

}  // namespace

const Fp8Format& Fp8Format::get(Fp8Kind kind) noexcept { return table(kind).format; }

double Fp8Format::decode(std::uint8_t code) const noexcept { return decode_bits(*this, code); }

bool Fp8Format::is_finite_code(std::uint8_t code) const noexcept {
  return std::isfinite(decode(code));
}

std::span<const double> Fp8Format::grid() const noexcept { return table(kind).grid; }

std::uint8_t Fp8Format::encode_exact(double value) const {
  require_finite(value);
  const double mag = std::fabs(value);
  const auto g = grid();
  auto it = std::lower_bound(g.begin(), g.end(), mag);
  if (it == g.end() || *it != mag) {
    throw InvalidArgument(std::to_string(value) + " is not representable in " + std::string(name));
  }
  const auto index = static_cast<std::uint8_t>(it - g.begin());
  return std::signbit(value) ? static_cast<std::uint8_t>(index | 0x80) : index;
}

std::optional<Fp8Kind> parse_fp8_kind(std::string_view name) noexcept {
  if (name.starts_with("fp8-")) name.remove_prefix(4);
  for (const auto& t : tables()) {
    if (t.format.name == name) return t.format.kind;
  }
  return std::nullopt;
}

std::vector<double> enumerate_grid(const Fp8Format& format) {
  const auto g = format.grid();
  return {g.begin(), g.end()};
}

GridNeighbors neighbors(double x, const Fp8Format& format) {
  require_finite(x);
  const auto g = format.grid();
  const double mag = std::min(std::fabs(x), format.max_finite);
  const auto [down, up] = bracket(g, mag);
  const double lo = g[down];
  const double hi = g[up];
  if (down == up) {
    const double v = std::copysign(lo, x);
    return {v, v, 0.0};
  }
  if (std::signbit(x)) return {-hi, -lo, (hi - mag) / (hi - lo)};
  return {lo, hi, (mag - lo) / (hi - lo)};
}

std::uint8_t quantize_value(double x, const Fp8Format& format, RoundingMode mode,
                            UniformStream* rng) {
  require_finite(x);
  if (mode == RoundingMode::kStochastic && rng == nullptr) {
    throw InvalidArgument("stochastic rounding needs a uniform stream");
  }
  // SR draws exactly one uniform per element, on-grid or not, so element i
  // of a tensor always consumes draw i of the stream.
  const double u = mode == RoundingMode::kStochastic ? rng->next() : 0.0;

  const auto g = format.grid();
  const double mag = std::min(std::fabs(x), format.max_finite);
  const auto [down, up] = bracket(g, mag);

  std::size_t index = down;
  if (down != up) {
    const double below = mag - g[down];
    const double above = g[up] - mag;
    if (mode == RoundingMode::kNearestEven) {
      if (above < below || (above == below && up % 2 == 0)) index = up;
    } else if (u < below / (g[up] - g[down])) {
      index = up;
    }
  }
  const auto code = static_cast<std::uint8_t>(index);
  return std::signbit(x) ? static_cast<std::uint8_t>(code | 0x80) : code;
}

double round_to_grid(double x, const Fp8Format& format, RoundingMode mode, UniformStream* rng) {
  return format.decode(quantize_value(x, format, mode, rng));
}

}  // namespace infercost::fp8
