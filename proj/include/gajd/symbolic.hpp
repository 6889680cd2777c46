// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gajd/attributes.hpp"
#include "gajd/dependency.hpp"
#include "gajd/relation.hpp"

namespace gajd {

/// A tableau variable. Distinguished variables are named after their column
/// (a_i lives in the column of attribute i, 1-based); nondistinguished ones
/// carry a tableau-wide index. A variable belongs to exactly one column.
struct Variable {
  enum class Kind : std::uint8_t { Distinguished, Nondistinguished };

  Kind kind = Kind::Distinguished;
  std::uint32_t index = 0;
  std::uint32_t column = 0;

  static Variable distinguished(std::size_t column) {
    return {Kind::Distinguished, static_cast<std::uint32_t>(column + 1),
            static_cast<std::uint32_t>(column)};
  }
  static Variable nondistinguished(std::uint32_t index, std::size_t column) {
    return {Kind::Nondistinguished, index, static_cast<std::uint32_t>(column)};
  }

  bool is_distinguished() const noexcept { return kind == Kind::Distinguished; }
  std::string name() const;

  auto operator<=>(const Variable&) const = default;
};

/// phi(pattern) for a pattern over X: the marginal of the joint on X,
/// evaluated at the pattern's values.
class MarginalAtom {
 public:
  /// `pattern` lists one variable per member of `over`, in column order.
  MarginalAtom(AttrSet over, std::vector<Variable> pattern);

  /// Restriction of a row (one variable per column) to `over`.
  static MarginalAtom from_cells(std::span<const Variable> cells, AttrSet over);

  AttrSet over() const noexcept { return over_; }
  const std::vector<Variable>& pattern() const noexcept { return pattern_; }
  bool mentions(const Variable& v) const;
  bool all_distinguished() const;

  /// Drops the columns outside `to`. Throws UsageError unless to is a subset of over().
  MarginalAtom restrict(AttrSet to) const;

  /// "phi(a1,a2,b4)"
  std::string to_string() const;

  /// Attribute sets compared lexicographically, then the patterns.
  std::strong_ordering operator<=>(const MarginalAtom& other) const;
  bool operator==(const MarginalAtom& other) const = default;

 private:
  AttrSet over_;
  std::vector<Variable> pattern_;
};

/// A quotient of two multisets of atoms. Always canonical: both sides are
/// sorted and no atom occurs on both sides. The empty quotient is 1.
class RationalExpression {
 public:
  RationalExpression() = default;
  RationalExpression(std::vector<MarginalAtom> numerator, std::vector<MarginalAtom> denominator);

  static RationalExpression atom(MarginalAtom a) { return RationalExpression({std::move(a)}, {}); }

  const std::vector<MarginalAtom>& numerator() const noexcept { return numerator_; }
  const std::vector<MarginalAtom>& denominator() const noexcept { return denominator_; }
  bool is_one() const noexcept { return numerator_.empty() && denominator_.empty(); }

  RationalExpression reciprocal() const { return RationalExpression(denominator_, numerator_); }

  /// "phi(a1,a2)*phi(a2,a3)/(phi(a2)*phi(a3))"; a single denominator atom is
  /// not parenthesised, an empty numerator prints as 1.
  std::string to_string() const;

  bool operator==(const RationalExpression&) const = default;

 private:
  std::vector<MarginalAtom> numerator_;
  std::vector<MarginalAtom> denominator_;
};

/// Multiset union of both sides followed by cancellation.
RationalExpression multiply(const RationalExpression& a, const RationalExpression& b);
inline RationalExpression operator*(const RationalExpression& a, const RationalExpression& b) {
  return multiply(a, b);
}

/// The J-rule weight of a new row w: numerator atoms phi(w_k_i[Q_i]) for the
/// rule's edges in certificate order, denominator atoms phi(w[Q_j(i) & Q_i]).
/// `selected[i]` is the full row chosen for position i.
RationalExpression eq5_expression(std::span<const std::vector<Variable>> selected,
                                  std::span<const Variable> new_row, const Gajd& rule);

/// The decomposition of a GAJD over the all-distinguished pattern: product of
/// edge marginals over the product of interaction-set marginals.
RationalExpression decomposition_expression(const Gajd& g);

/// Summing `v` out of `expr` when v occurs in exactly one numerator atom and
/// in no denominator atom: that atom loses v's column.
struct SumOut {
  RationalExpression result;
  MarginalAtom before;
  MarginalAtom after;
};
std::optional<SumOut> sum_out(const RationalExpression& expr, const Variable& v);

/// Marginals of a joint, computed on demand. Not thread-safe.
class MarginalCache {
 public:
  explicit MarginalCache(const WeightedRelation& joint) : joint_(joint) {}
  const WeightedRelation& joint() const noexcept { return joint_; }
  const WeightedRelation& marginal(AttrSet x);

 private:
  const WeightedRelation& joint_;
  std::map<std::uint64_t, WeightedRelation> cache_;
};

struct Evaluation {
  double value = 0.0;
  /// A denominator atom evaluated to 0; value is then reported as 0.
  bool degenerate = false;
};

using Binding = std::map<Variable, std::uint32_t>;

/// Product of numerator atom values over product of denominator atom values,
/// each atom being the joint's marginal at the bound pattern. Throws
/// UsageError for unbound variables or out-of-domain values and SchemeError
/// for atoms outside the joint's scheme.
Evaluation evaluate(const RationalExpression& expr, const WeightedRelation& joint,
                    const Binding& binding);
Evaluation evaluate(const RationalExpression& expr, MarginalCache& cache, const Binding& binding);

/// Expression with marginals resolved up front and variables mapped to slots
/// of a value vector; evaluation is thread-safe.
class CompiledExpression {
 public:
  CompiledExpression(const RationalExpression& expr, MarginalCache& cache,
                     const std::function<std::size_t(const Variable&)>& slot_of);

  Evaluation operator()(std::span<const std::uint32_t> slots) const;

 private:
  struct Term {
    const WeightedRelation* marginal;
    std::vector<std::pair<std::size_t, std::uint64_t>> parts;  // slot, stride
  };
  double term_value(const Term& t, std::span<const std::uint32_t> slots) const;

  std::vector<Term> numerator_;
  std::vector<Term> denominator_;
};

}  // namespace gajd
