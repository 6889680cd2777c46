// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gajd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Attribute sets do not line up (X not a subset of R, schemes differ, ...).
class SchemeError : public Error {
 public:
  using Error::Error;
};

class NotHypertreeError : public Error {
 public:
  NotHypertreeError(std::string what, std::vector<std::size_t> witness)
      : Error(std::move(what)), witness_(std::move(witness)) {}

  /// Edge indices of the irreducible remainder: none of them is a twig.
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  std::vector<std::size_t> witness_;
};

/// Two valuations of a tableau mapped the same distinguished tuple to
/// different weights.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class DomainTooLarge : public Error {
 public:
  using Error::Error;
};

class ChaseLimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace gajd
