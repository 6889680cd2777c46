// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gajd/attributes.hpp"
#include "gajd/dependency.hpp"
#include "gajd/execution.hpp"
#include "gajd/relation.hpp"
#include "gajd/symbolic.hpp"

namespace gajd {

struct Row {
  /// One variable per scheme column, in column order.
  std::vector<Variable> cells;
  RationalExpression weight_expr;

  bool operator==(const Row&) const = default;
};

/// A symbolic relation over a scheme: rows of variables plus a weight
/// expression per row, and the mapping expression psi over the
/// distinguished variables that run() emits for each valuation.
///
/// Row patterns are unique; rows keep insertion order.
class Tableau {
 public:
  Tableau(UniversePtr universe, AttrSet scheme);

  /// The single all-distinguished row, weighted and mapped by phi(w_d).
  static Tableau identity(UniversePtr universe, AttrSet scheme);

  const Universe& universe() const noexcept { return *universe_; }
  const UniversePtr& universe_ptr() const noexcept { return universe_; }
  AttrSet scheme() const noexcept { return scheme_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  const Row& row(std::size_t i) const { return rows_.at(i); }
  std::size_t size() const noexcept { return rows_.size(); }

  const RationalExpression& mapping() const noexcept { return mapping_; }
  /// Throws UsageError unless every atom is over distinguished variables.
  void set_mapping(RationalExpression psi);

  /// Index of the row with this pattern.
  std::optional<std::size_t> find(std::span<const Variable> cells) const;

  /// Appends a row; throws UsageError if the pattern is malformed or
  /// already present.
  std::size_t add_row(Row row);

  /// A nondistinguished variable not used anywhere else in the tableau.
  Variable fresh(std::size_t column);
  std::uint32_t fresh_counter() const noexcept { return next_fresh_; }

  /// w_d = (a_1, ..., a_l) over the scheme.
  std::vector<Variable> distinguished_pattern() const;
  std::optional<std::size_t> find_distinguished() const { return find(distinguished_pattern()); }

  /// Throws UsageError if some distinguished variable of the scheme never
  /// appears.
  void validate() const;

  /// Padded columns named after the attributes, then "| f" and each row's
  /// weight expression.
  std::string to_figure() const;

  /// Row patterns only, as a sorted list; compares chase results up to order.
  std::vector<std::vector<Variable>> pattern_set() const;

 private:
  UniversePtr universe_;
  AttrSet scheme_;
  std::vector<std::size_t> columns_;
  std::vector<Row> rows_;
  std::map<std::vector<Variable>, std::size_t> index_;
  std::map<std::uint32_t, std::uint32_t> nd_columns_;
  RationalExpression mapping_;
  std::uint32_t next_fresh_ = 1;
};

/// The tableau of a GAJD's marginalize-product-join mapping: one row per
/// edge in certificate order with a_j where A_j is in the edge and fresh
/// b's elsewhere, numbered row by row, left to right. Row weights are
/// phi(w_i); the mapping is the decomposition expression.
Tableau build_tr(const Gajd& g);

/// Every valuation sending each row to a tuple of `rel` with positive weight
/// yields the distinguished tuple, weighted by the mapping expression.
/// Valuations whose mapping has a zero denominator are dropped. Throws
/// SchemeError on a scheme mismatch and InconsistencyError if two valuations
/// give the same tuple weights differing by more than 1e-12.
WeightedRelation run(const Tableau& t, const WeightedRelation& rel,
                     Execution exec = Execution::Parallel);

/// Naive evaluation over every assignment of domain values to the tableau's
/// variables. Exponential; throws DomainTooLarge past 2^22 assignments.
WeightedRelation run_reference(const Tableau& t, const WeightedRelation& rel);

}  // namespace gajd
