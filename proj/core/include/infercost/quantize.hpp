// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "infercost/fp8.hpp"

namespace infercost::fp8 {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const noexcept {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }
  std::span<const double> values() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class Granularity : std::uint8_t { kPerTensor = 0, kPerRow = 1 };

enum class ScaleDomain {
  kUnrestricted,  // max_finite / amax
  kPowerOfTwo,    // 2^floor(log2(max_finite / amax))
  kFixedSet,      // largest allowed power of two <= the unrestricted ideal
};

class ScalingPolicy {
 public:
  // Validates the combination: a fixed set must be nonempty, ascending and
  // made of positive powers of two, and is only allowed per-tensor (hardware
  // exponent-bias scaling applies to whole tensors).
  ScalingPolicy(Granularity granularity, ScaleDomain domain, std::vector<double> fixed_set = {});

  static ScalingPolicy per_tensor(ScaleDomain domain = ScaleDomain::kUnrestricted) {
    return ScalingPolicy(Granularity::kPerTensor, domain);
  }
  static ScalingPolicy per_row(ScaleDomain domain = ScaleDomain::kUnrestricted) {
    return ScalingPolicy(Granularity::kPerRow, domain);
  }
  static ScalingPolicy fixed(std::vector<double> set) {
    return ScalingPolicy(Granularity::kPerTensor, ScaleDomain::kFixedSet, std::move(set));
  }
  // Exponent-bias scales available on Gaudi 2 for E4M3: 2^-8, 2^-4, 2^0, 2^4.
  static ScalingPolicy gaudi2_fixed();

  Granularity granularity() const noexcept { return granularity_; }
  ScaleDomain domain() const noexcept { return domain_; }
  const std::vector<double>& fixed_set() const noexcept { return fixed_set_; }

 private:
  Granularity granularity_;
  ScaleDomain domain_;
  std::vector<double> fixed_set_;
};

// Multiplier applied before rounding, so that amax * scale lands at (or
// below) max_finite. amax == 0 yields 1.
double compute_scale(double amax, const Fp8Format& format, const ScalingPolicy& policy);

struct QuantizedTensor {
  Fp8Kind format = Fp8Kind::kE4M3Ocp;
  Granularity granularity = Granularity::kPerTensor;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> codes;  // row-major
  std::vector<double> scales;       // one, or one per row

  double scale_for_row(std::size_t r) const noexcept {
    return granularity == Granularity::kPerRow ? scales[r] : scales.front();
  }

  bool operator==(const QuantizedTensor&) const = default;
};

// Quantizes t into code space: code = round(x * scale). SR consumes one
// uniform per element in row-major order.
QuantizedTensor quantize_tensor(const Matrix& t, const Fp8Format& format,
                                const ScalingPolicy& policy, RoundingMode mode,
                                UniformStream* rng = nullptr);

Matrix dequantize(const QuantizedTensor& qt);

struct QuantError {
  double max_abs_err = 0.0;
  double mse = 0.0;
  // Over nonzero reference elements only.
  double max_rel_err = 0.0;
};

QuantError quant_error(const Matrix& reference, const QuantizedTensor& qt);

}  // namespace infercost::fp8
