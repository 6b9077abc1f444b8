// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace infercost::fp8 {

enum class Fp8Kind : std::uint8_t {
  kE4M3Ocp = 0,  // single NaN code (S.1111.111), max 448
  kE4M3G2 = 1,   // IEEE-style: exponent 1111 reserved, max 240
  kE5M2 = 2,     // IEEE 754: exponent 11111 reserved, max 57344
};

enum class SpecialValuePolicy { kSingleNaN, kIeeeReserved };

struct Fp8Format {
  Fp8Kind kind;
  std::string_view name;
  int exponent_bits;
  int mantissa_bits;
  int bias;
  SpecialValuePolicy special_values;
  double max_finite;

  static const Fp8Format& get(Fp8Kind kind) noexcept;
  static const Fp8Format& e4m3_ocp() noexcept { return get(Fp8Kind::kE4M3Ocp); }
  static const Fp8Format& e4m3_g2() noexcept { return get(Fp8Kind::kE4M3G2); }
  static const Fp8Format& e5m2() noexcept { return get(Fp8Kind::kE5M2); }

  // Decodes any byte, returning NaN or +-infinity for special codes.
  double decode(std::uint8_t code) const noexcept;
  bool is_finite_code(std::uint8_t code) const noexcept;

  // Code of an exact grid value. Throws InvalidArgument if `value` is not
  // representable.
  std::uint8_t encode_exact(double value) const;

  // Sorted nonnegative finite magnitudes, zero and subnormals included.
  // The index of a magnitude equals its (positive) code.
  std::span<const double> grid() const noexcept;

  bool operator==(const Fp8Format& o) const noexcept { return kind == o.kind; }
};

// Accepts "e4m3-ocp", "e4m3-g2", "e5m2" (optionally prefixed "fp8-").
std::optional<Fp8Kind> parse_fp8_kind(std::string_view name) noexcept;

enum class RoundingMode { kNearestEven, kStochastic };

// Seedable stream of uniforms in [0, 1). The sequence is fully determined by
// the seed on every platform: mt19937_64 output is specified by the
// standard and the conversion to double uses the top 53 bits.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
  double next() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// Grid values bracketing |x| (after saturation) together with the
// probability of rounding up under stochastic rounding.
struct GridNeighbors {
  double x_down;
  double x_up;
  double p_up;
};

// Neighbours of a finite value on the signed grid: x_down <= x <= x_up.
// Values outside +-max_finite are clamped first, so both neighbours equal
// the saturated value.
GridNeighbors neighbors(double x, const Fp8Format& format);

std::vector<double> enumerate_grid(const Fp8Format& format);

// Rounds a finite real to the grid. RTN breaks ties to the even mantissa;
// SR returns x_up with probability p_up. Magnitudes beyond max_finite
// saturate in both modes. `rng` is required for SR.
double round_to_grid(double x, const Fp8Format& format, RoundingMode mode,
                     UniformStream* rng = nullptr);

// Same as round_to_grid but returns the 8-bit code. Never produces a
// NaN/infinity code.
std::uint8_t quantize_value(double x, const Fp8Format& format, RoundingMode mode,
                            UniformStream* rng = nullptr);

}  // namespace infercost::fp8
