// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gajd/dependency.hpp"
#include "gajd/symbolic.hpp"
#include "gajd/tableau.hpp"

namespace gajd {

/// The chase rule of a GAJD constraint. Selections list one row per edge,
/// in the constraint's certificate order.
struct JRule {
  std::string name;
  Gajd constraint;
};

struct JoinResult {
  enum class Status { Candidate, NotJoinable, AlreadyPresent };
  Status status = Status::NotJoinable;
  /// The new row (Candidate) with its J-rule expression.
  std::optional<Row> row;
  /// Index of the existing row with the candidate's pattern (AlreadyPresent).
  std::optional<std::size_t> existing;
};

/// Rows w_k1..w_kq are joinable when they agree pairwise on every overlap of
/// the rule's edges; the candidate takes w_ki's cells on edge i. Throws
/// UsageError on an arity mismatch or a row index out of range and
/// SchemeError if the rule's scheme differs from the tableau's.
JoinResult joinable(const Tableau& t, const JRule& rule, std::span<const std::size_t> selection);

/// Columns holding a distinguished variable.
AttrSet distinguished_columns(std::span<const Variable> cells);

/// True when the candidate's distinguished columns are covered by those of
/// one of the rows it was joined from.
bool dominated(const Tableau& t, std::span<const std::size_t> selection,
               std::span<const Variable> candidate);

enum class Admission {
  /// Every joinable candidate with a new pattern is added.
  All,
  /// Dominated candidates are skipped.
  NonDominated,
};

enum class ChaseOrder {
  /// Most distinguished cells first, then rule input order, then the
  /// selection in lexicographic order.
  BestFirst,
  /// Uniformly random among pending candidates, driven by `seed`.
  Random,
};

struct ChaseOptions {
  Admission admission = Admission::NonDominated;
  ChaseOrder order = ChaseOrder::BestFirst;
  std::uint64_t seed = 0;
  /// Stop as soon as the all-distinguished row appears.
  bool stop_at_goal = false;
  std::size_t max_rows = 100000;
};

struct ChaseStep {
  std::size_t rule = 0;
  std::vector<std::size_t> selected;
  Row produced;
};

struct ChaseStats {
  std::uint64_t candidates = 0;
  std::uint64_t dominated = 0;
  /// Candidates whose pattern was already in the tableau.
  std::uint64_t alternative_derivations = 0;
};

struct ChaseTrace {
  Tableau initial;
  std::vector<JRule> rules;
  std::vector<ChaseStep> steps;
  Tableau final;
  ChaseStats stats;
};

/// Applies the rules until no admissible candidate adds a new pattern (or
/// the goal row appears when asked). Throws ChaseLimitExceeded when the
/// tableau would exceed `max_rows`, SchemeError if a rule's scheme is not
/// the tableau's.
ChaseTrace chase(const Tableau& t, std::span<const JRule> rules, const ChaseOptions& options = {});

/// Re-derives every step from its selection with the trace's rules; throws
/// UsageError on the first step that does not reproduce its row.
Tableau replay(const ChaseTrace& trace);

/// "step k: rule C1 rows [1,2] -> row (a1,a2,a3,b4) expr ..." with 1-based rows.
std::string format_step(const ChaseTrace& trace, std::size_t k);

/// A rewrite of one atom of a derived row into its row's expression with
/// the columns outside the atom summed out.
struct Rewrite {
  MarginalAtom atom;
  std::size_t row = 0;
  std::vector<Variable> summed;
  /// Empty when some variable could not be summed out and the atom was kept.
  std::optional<RationalExpression> result;
};

struct Verdict {
  bool holds = false;
  std::optional<RationalExpression> factorization;
  std::vector<Rewrite> rewrites;
  ChaseTrace trace;
};

/// Chases the target's tableau under the constraints; holds iff the
/// all-distinguished row is derived. Constraints must be over the target's
/// scheme (SchemeError otherwise).
Verdict implies(std::span<const JRule> constraints, const Gajd& target,
                const ChaseOptions& options = {.stop_at_goal = true});

/// Expression of row `row` of the trace's final tableau with atoms taken
/// from derived rows expanded recursively; appends each expansion to `log`.
RationalExpression expand_row(const ChaseTrace& trace, std::size_t row, std::vector<Rewrite>& log);

std::string format_rewrite(const Rewrite& r);

/// Steps, rewrites and verdict lines: "IMPLIES: yes|no" and, with
/// `factorize`, "FACTORIZATION: ...".
std::string format_verdict(const Verdict& v, bool trace, bool factorize);

/// The same content as JSON Lines: one record per initial row, step and
/// rewrite, then a verdict record; every record carries `query`.
std::string verdict_to_jsonl(const Verdict& v, std::size_t query);

}  // namespace gajd
