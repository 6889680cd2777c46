// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gajd/chase.hpp"
#include "gajd/error.hpp"

namespace gajd {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct NamedConstraint {
  std::string name;
  std::vector<AttrSet> edges;

  bool operator==(const NamedConstraint&) const = default;
};

struct Query {
  std::vector<AttrSet> edges;
  std::vector<std::string> given;

  bool operator==(const Query&) const = default;
};

/// Line-oriented problem description:
///
///     attrs A1 A2 A3 A4
///     domain A1 3
///     gajd C1 = {A1 A2} {A2 A3 A4}
///     query {A1 A2} {A2 A3} {A3 A4} given C1
///
/// `#` starts a comment. Edges are attribute sets over positions of `attrs`.
struct ProblemFile {
  std::vector<std::string> attrs;
  /// Explicit domain declarations in file order; undeclared sizes are 2.
  std::vector<std::pair<std::string, std::size_t>> domains;
  std::vector<NamedConstraint> constraints;
  std::vector<Query> queries;

  bool operator==(const ProblemFile&) const = default;

  UniversePtr universe() const;
  /// The query's target and the rules it is given.
  Gajd target(const UniversePtr& u, std::size_t query) const;
  std::vector<JRule> rules(const UniversePtr& u, std::size_t query) const;
  std::string format_query(std::size_t query) const;
};

/// Throws ParseError for syntax errors, a missing or repeated attrs line,
/// unknown attributes or constraint names, duplicate constraint names,
/// constraints or queries that are not hypertrees over the declared
/// attributes, and empty queries.
ProblemFile parse_problem(std::string_view text);

/// Canonical text; parse_problem(print_problem(f)) == f.
std::string print_problem(const ProblemFile& f);

}  // namespace gajd
