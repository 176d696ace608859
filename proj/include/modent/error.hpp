// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace modent {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad occupation, register
/// mismatch, non-unitary matrix, dimension mismatch, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// The state left the physical sector a model is defined on (double
/// occupation in a single-particle model, reservoir cutoff too small, ...).
class SectorError : public Error {
 public:
  using Error::Error;
};

/// A measurement setting is not realizable under the particle-number
/// superselection rule.
class SuperselectionError : public SectorError {
 public:
  using SectorError::SectorError;
};

/// A run-time consistency check tripped.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration (CLI / config file).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Short scientific rendering of a number for error messages.
inline std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace modent
