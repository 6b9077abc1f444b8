// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace infercost {

// Base class for every domain error raised by the library. The CLI maps these
// to exit status 1; anything else escaping is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document (registry file, bench CSV, tensor file).
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

// A value violates a documented precondition or type invariant.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Lookup by name or key failed.
class NotFound : public Error {
 public:
  using Error::Error;
};

// A quantity needed for the computation is absent from the input data
// (e.g. a device without a stated memory bandwidth).
class Unavailable : public Error {
 public:
  using Error::Error;
};

}  // namespace infercost
