// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>

namespace infercost::checked {

// Unsigned 64-bit arithmetic that throws std::overflow_error instead of
// wrapping. FLOP counts are exact integers and must never silently wrap.
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("FLOP count overflow");
  return out;
}

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("FLOP count overflow");
  return out;
}

}  // namespace infercost::checked
