// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "infercost/registry.hpp"

namespace infercost::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

// Runs one invocation. `args` excludes the program name. Results go to
// `out`, diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Devices and models compiled into the binary, used when neither --registry
// nor INFERCOST_REGISTRY is given.
DeviceRegistry builtin_registry();

}  // namespace infercost::cli
