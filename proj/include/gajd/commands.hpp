// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>

namespace gajd {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,
  kExitUsage = 2,
  kExitChaseLimit = 3,
};

inline constexpr std::size_t kDefaultChaseMaxRows = 100000;

/// GAJD_CHASE_MAX_ROWS if set, else the default. Throws UsageError unless
/// the variable holds a positive integer.
std::size_t chase_max_rows_from_env();

struct ImpliesFlags {
  bool trace = false;
  bool factorize = false;
  bool json = false;
  std::optional<bool> expect;
  std::size_t max_rows = kDefaultChaseMaxRows;
};

/// Per query: a "query K: ..." header, then the trace, rewrites and verdict
/// lines as requested (or JSON Lines records with `json`).
int cmd_implies(std::string_view text, const ImpliesFlags& flags, std::ostream& out, std::ostream& err);

struct VerifyFlags {
  std::uint64_t seed = 0;
  std::size_t trials = 50;
  std::size_t max_rows = kDefaultChaseMaxRows;
};

/// Soundness report for implied queries, counterexample search otherwise.
int cmd_verify(std::string_view text, const VerifyFlags& flags, std::ostream& out, std::ostream& err);

/// Figure of the initial tableau of query `query` (1-based).
int cmd_tableau(std::string_view text, std::size_t query, std::ostream& out, std::ostream& err);

}  // namespace gajd
