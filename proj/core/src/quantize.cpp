// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include "infercost/quantize.hpp"

#include <algorithm>
#include <cmath>

#include "infercost/error.hpp"

namespace infercost::fp8 {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw InvalidArgument("matrix data does not match its shape");
}

ScalingPolicy::ScalingPolicy(Granularity granularity, ScaleDomain domain,
                             std::vector<double> fixed_set)
    : granularity_(granularity), domain_(domain), fixed_set_(std::move(fixed_set)) {
  if (domain_ != ScaleDomain::kFixedSet) return;
  if (granularity_ != Granularity::kPerTensor) {
    throw InvalidArgument("fixed power-of-two scale sets are per-tensor only");
  }
  if (fixed_set_.empty()) throw InvalidArgument("fixed scale set is empty");
  for (std::size_t i = 0; i < fixed_set_.size(); ++i) {
    int exp = 0;
    const double v = fixed_set_[i];
    if (!(v > 0.0) || !std::isfinite(v) || std::frexp(v, &exp) != 0.5) {
      throw InvalidArgument("fixed scale set entries must be positive powers of two");
    }
    if (i > 0 && !(fixed_set_[i - 1] < v)) {
      throw InvalidArgument("fixed scale set must be strictly ascending");
    }
  }
}

ScalingPolicy ScalingPolicy::gaudi2_fixed() {
  return fixed({0x1.0p-8, 0x1.0p-4, 1.0, 0x1.0p4});
}

double compute_scale(double amax, const Fp8Format& format, const ScalingPolicy& policy) {
  if (!std::isfinite(amax) || amax < 0.0) throw InvalidArgument("amax must be finite and >= 0");
  const double ideal = amax == 0.0 ? 1.0 : format.max_finite / amax;
  switch (policy.domain()) {
    case ScaleDomain::kUnrestricted:
      return ideal;
    case ScaleDomain::kPowerOfTwo: {
      if (amax == 0.0) return 1.0;
      // ideal = m * 2^exp with m in [0.5, 1), so floor(log2(ideal)) = exp - 1.
      int exp = 0;
      std::frexp(ideal, &exp);
      return std::ldexp(1.0, exp - 1);
    }
    case ScaleDomain::kFixedSet: {
      const auto& set = policy.fixed_set();
      auto it = std::upper_bound(set.begin(), set.end(), ideal);
      return it == set.begin() ? set.front() : *std::prev(it);
    }
  }
  return ideal;
}

namespace {

double row_amax(std::span<const double> row) {
  double amax = 0.0;
  for (double v : row) {
    if (!std::isfinite(v)) throw InvalidArgument("tensor contains a non-finite value");
    amax = std::max(amax, std::fabs(v));
  }
  return amax;
}

double checked_scale(double amax, const Fp8Format& format, const ScalingPolicy& policy) {
  const double s = compute_scale(amax, format, policy);
  if (!std::isfinite(s) || !(s > 0.0)) {
    throw InvalidArgument("scale for amax " + std::to_string(amax) + " is not representable");
  }
  return s;
}

}  // namespace

QuantizedTensor quantize_tensor(const Matrix& t, const Fp8Format& format,
                                const ScalingPolicy& policy, RoundingMode mode,
                                UniformStream* rng) {
  QuantizedTensor qt;
  qt.format = format.kind;
  qt.granularity = policy.granularity();
  qt.rows = t.rows();
  qt.cols = t.cols();
  qt.codes.reserve(t.size());

  if (policy.granularity() == Granularity::kPerTensor) {
    qt.scales.push_back(checked_scale(row_amax(t.values()), format, policy));
  } else {
    qt.scales.reserve(t.rows());
    for (std::size_t r = 0; r < t.rows(); ++r) {
      qt.scales.push_back(checked_scale(row_amax(t.row(r)), format, policy));
    }
  }
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const double scale = qt.scale_for_row(r);
    for (double v : t.row(r)) qt.codes.push_back(quantize_value(v * scale, format, mode, rng));
  }
  return qt;
}

Matrix dequantize(const QuantizedTensor& qt) {
  const Fp8Format& format = Fp8Format::get(qt.format);
  Matrix out(qt.rows, qt.cols);
  for (std::size_t r = 0; r < qt.rows; ++r) {
    const double scale = qt.scale_for_row(r);
    for (std::size_t c = 0; c < qt.cols; ++c) {
      out(r, c) = format.decode(qt.codes[r * qt.cols + c]) / scale;
    }
  }
  return out;
}

QuantError quant_error(const Matrix& reference, const QuantizedTensor& qt) {
  if (reference.rows() != qt.rows || reference.cols() != qt.cols) {
    throw InvalidArgument("quant_error: shape mismatch");
  }
  const Matrix approx = dequantize(qt);
  QuantError err;
  if (reference.size() == 0) return err;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double ref = reference.values()[i];
    const double diff = std::fabs(approx.values()[i] - ref);
    err.max_abs_err = std::max(err.max_abs_err, diff);
    sum_sq += diff * diff;
    if (ref != 0.0) err.max_rel_err = std::max(err.max_rel_err, diff / std::fabs(ref));
  }
  err.mse = sum_sq / static_cast<double>(reference.size());
  return err;
}

}  // namespace infercost::fp8
