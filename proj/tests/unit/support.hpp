// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "infercost/fp8.hpp"
#include "infercost/hardware.hpp"

namespace infercost::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(INFERCOST_DATA_DIR) / name;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline ModelConfig llama8b() { return ModelConfig("llama31-8b", 32, 4096, 3.5, 128, 4, 128256); }
inline ModelConfig llama70b() { return ModelConfig("llama33-70b", 80, 8192, 3.5, 128, 8, 128256); }

// Magnitudes written straight from the bit layout, independent of the
// library's decoder.
inline std::vector<double> oracle_grid(int ebits, int mbits, int bias, bool ieee) {
  std::vector<double> out;
  const int emax = (1 << ebits) - 1;
  const int mmax = (1 << mbits) - 1;
  for (int e = 0; e <= emax; ++e) {
    if (ieee && e == emax) break;
    for (int m = 0; m <= mmax; ++m) {
      if (!ieee && e == emax && m == mmax) break;
      const double frac = static_cast<double>(m) / (1 << mbits);
      out.push_back(e == 0 ? std::ldexp(frac, 1 - bias) : std::ldexp(1.0 + frac, e - bias));
    }
  }
  return out;
}

// Nearest grid value by exhaustive search; ties go to the even index.
inline double oracle_rtn(double x, const std::vector<double>& grid) {
  const double mag = std::min(std::abs(x), grid.back());
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double d = std::abs(grid[i] - mag);
    const double b = std::abs(grid[best] - mag);
    if (d < b || (d == b && i % 2 == 0)) best = i;
  }
  return std::copysign(grid[best], x);
}

}  // namespace infercost::testing
