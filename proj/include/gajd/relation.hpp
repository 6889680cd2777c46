// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gajd/attributes.hpp"
#include "gajd/dependency.hpp"

namespace gajd {

/// Tuple over some X, encoded with the universe's strides (see Universe).
using TupleCode = std::uint64_t;

struct Entry {
  TupleCode code = 0;
  double weight = 0.0;

  bool operator==(const Entry&) const = default;
};

/// A finite table of tuples over a scheme with one nonnegative weight column.
/// Absent tuples have weight 0. Entries are kept sorted by code.
class WeightedRelation {
 public:
  WeightedRelation(UniversePtr universe, AttrSet scheme);
  /// Throws UsageError on duplicate codes, negative or non-finite weights,
  /// or codes that are not tuples over `scheme`.
  WeightedRelation(UniversePtr universe, AttrSet scheme, std::vector<Entry> entries);

  /// Every tuple over `scheme`, weighted by `weight_of(code)`.
  static WeightedRelation dense(UniversePtr universe, AttrSet scheme,
                                const std::function<double(TupleCode)>& weight_of);

  const Universe& universe() const noexcept { return *universe_; }
  const UniversePtr& universe_ptr() const noexcept { return universe_; }
  AttrSet scheme() const noexcept { return scheme_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  double weight(TupleCode code) const noexcept;
  /// Same attributes, scheme and entries (weights compared exactly).
  bool operator==(const WeightedRelation& other) const;
  double total() const noexcept;
  bool is_normalized(double tol = 1e-12) const noexcept;
  bool strictly_positive() const noexcept;

  /// values[k] is the value index of the k-th attribute of the scheme.
  TupleCode encode(std::span<const std::uint32_t> values) const;
  std::vector<std::uint32_t> decode(TupleCode code) const;

  /// Header line of attribute names followed by `f`, then one row per
  /// entry: value labels and the weight with 17 significant digits.
  std::string to_text() const;
  /// Inverse of to_text; the header must list the scheme's attributes.
  static WeightedRelation from_text(UniversePtr universe, std::string_view text);

 private:
  UniversePtr universe_;
  AttrSet scheme_;
  std::vector<Entry> entries_;
};

/// max over all tuples of |a - b|, treating absent tuples as 0.
/// Throws SchemeError if the schemes differ.
double max_abs_difference(const WeightedRelation& a, const WeightedRelation& b);

/// Sum out scheme - x. Throws SchemeError unless x is a subset of the scheme.
WeightedRelation marginalize(const WeightedRelation& rel, AttrSet x);

/// Natural join of the tuple sets with multiplied weights.
WeightedRelation product_join(const WeightedRelation& p, const WeightedRelation& q);

/// Reciprocal weights; zero-weight rows are dropped.
WeightedRelation inverse(const WeightedRelation& rel);

/// p x q x (q marginalized onto the shared attributes)^-1. Tuples whose
/// shared marginal is 0 disappear with the inverse.
WeightedRelation monotone_join(const WeightedRelation& p, const WeightedRelation& q);

/// Left fold of monotone_join over the marginals of `rel` on the GAJD's
/// edges, in certificate order. Throws SchemeError unless the schemes match.
WeightedRelation mpj_map(const WeightedRelation& rel, const Gajd& g);

struct Satisfaction {
  bool holds = false;
  double residual = 0.0;
};

Satisfaction satisfies(const WeightedRelation& rel, const Gajd& g, double tol);

/// Residual of the two-edge GAJD over {x, y}: conditional independence of x
/// and y given x & y. Throws SchemeError unless x | y is the scheme.
double ci_residual(const WeightedRelation& rel, AttrSet x, AttrSet y);

}  // namespace gajd
