// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gajd/symbolic.hpp"

#include <algorithm>

#include "gajd/error.hpp"

namespace gajd {

std::string Variable::name() const {
  return (is_distinguished() ? "a" : "b") + std::to_string(index);
}

MarginalAtom::MarginalAtom(AttrSet over, std::vector<Variable> pattern)
    : over_(over), pattern_(std::move(pattern)) {
  const auto members = over_.members();
  if (members.size() != pattern_.size()) throw UsageError("atom pattern arity mismatch");
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (pattern_[k].column != members[k]) throw UsageError("atom variable in the wrong column");
    if (pattern_[k].is_distinguished() && pattern_[k].index != members[k] + 1) {
      throw UsageError("distinguished variable outside its own column");
    }
  }
}

MarginalAtom MarginalAtom::from_cells(std::span<const Variable> cells, AttrSet over) {
  std::vector<Variable> pattern;
  AttrSet found;
  for (const Variable& v : cells) {
    if (over.contains(v.column)) {
      pattern.push_back(v);
      found |= AttrSet::single(v.column);
    }
  }
  if (found != over) throw UsageError("row does not cover the atom's attributes");
  std::sort(pattern.begin(), pattern.end(),
            [](const Variable& a, const Variable& b) { return a.column < b.column; });
  return MarginalAtom(over, std::move(pattern));
}

bool MarginalAtom::mentions(const Variable& v) const {
  return std::find(pattern_.begin(), pattern_.end(), v) != pattern_.end();
}

bool MarginalAtom::all_distinguished() const {
  return std::all_of(pattern_.begin(), pattern_.end(),
                     [](const Variable& v) { return v.is_distinguished(); });
}

MarginalAtom MarginalAtom::restrict(AttrSet to) const {
  if (!to.subset_of(over_)) throw UsageError("cannot restrict an atom to a larger attribute set");
  return from_cells(pattern_, to);
}

std::string MarginalAtom::to_string() const {
  std::string out = "phi(";
  for (std::size_t k = 0; k < pattern_.size(); ++k) {
    if (k > 0) out += ',';
    out += pattern_[k].name();
  }
  return out + ")";
}

std::strong_ordering MarginalAtom::operator<=>(const MarginalAtom& other) const {
  if (auto c = lex_compare(over_, other.over_); c != 0) return c;
  return std::lexicographical_compare_three_way(pattern_.begin(), pattern_.end(),
                                                other.pattern_.begin(), other.pattern_.end());
}

RationalExpression::RationalExpression(std::vector<MarginalAtom> numerator,
                                       std::vector<MarginalAtom> denominator) {
  std::sort(numerator.begin(), numerator.end());
  std::sort(denominator.begin(), denominator.end());
  // Multiset difference in both directions.
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < numerator.size() || j < denominator.size()) {
    if (j == denominator.size() || (i < numerator.size() && numerator[i] < denominator[j])) {
      numerator_.push_back(std::move(numerator[i++]));
    } else if (i == numerator.size() || denominator[j] < numerator[i]) {
      denominator_.push_back(std::move(denominator[j++]));
    } else {
      ++i;
      ++j;
    }
  }
}

std::string RationalExpression::to_string() const {
  auto join = [](const std::vector<MarginalAtom>& atoms) {
    std::string out;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (k > 0) out += '*';
      out += atoms[k].to_string();
    }
    return out;
  };
  std::string out = numerator_.empty() ? "1" : join(numerator_);
  if (denominator_.size() == 1) {
    out += "/" + join(denominator_);
  } else if (denominator_.size() > 1) {
    out += "/(" + join(denominator_) + ")";
  }
  return out;
}

RationalExpression multiply(const RationalExpression& a, const RationalExpression& b) {
  std::vector<MarginalAtom> num = a.numerator();
  num.insert(num.end(), b.numerator().begin(), b.numerator().end());
  std::vector<MarginalAtom> den = a.denominator();
  den.insert(den.end(), b.denominator().begin(), b.denominator().end());
  return RationalExpression(std::move(num), std::move(den));
}

RationalExpression eq5_expression(std::span<const std::vector<Variable>> selected,
                                  std::span<const Variable> new_row, const Gajd& rule) {
  const auto edges = rule.ordered_edges();
  if (selected.size() != edges.size()) throw UsageError("selection arity does not match the rule");
  std::vector<MarginalAtom> num;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    num.push_back(MarginalAtom::from_cells(selected[i], edges[i]));
  }
  std::vector<MarginalAtom> den;
  for (AttrSet l : rule.interactions()) den.push_back(MarginalAtom::from_cells(new_row, l));
  return RationalExpression(std::move(num), std::move(den));
}

RationalExpression decomposition_expression(const Gajd& g) {
  std::vector<Variable> wd;
  for (std::size_t a : g.scheme().members()) wd.push_back(Variable::distinguished(a));
  std::vector<MarginalAtom> num;
  for (AttrSet e : g.ordered_edges()) num.push_back(MarginalAtom::from_cells(wd, e));
  std::vector<MarginalAtom> den;
  for (AttrSet l : g.interactions()) den.push_back(MarginalAtom::from_cells(wd, l));
  return RationalExpression(std::move(num), std::move(den));
}

std::optional<SumOut> sum_out(const RationalExpression& expr, const Variable& v) {
  for (const auto& a : expr.denominator()) {
    if (a.mentions(v)) return std::nullopt;
  }
  std::optional<std::size_t> hit;
  for (std::size_t k = 0; k < expr.numerator().size(); ++k) {
    if (expr.numerator()[k].mentions(v)) {
      if (hit) return std::nullopt;
      hit = k;
    }
  }
  if (!hit) return std::nullopt;
  std::vector<MarginalAtom> num = expr.numerator();
  const MarginalAtom before = num[*hit];
  num[*hit] = before.restrict(before.over() - AttrSet::single(v.column));
  const MarginalAtom after = num[*hit];
  return SumOut{RationalExpression(std::move(num), expr.denominator()), before, after};
}

const WeightedRelation& MarginalCache::marginal(AttrSet x) {
  auto it = cache_.find(x.bits());
  if (it == cache_.end()) it = cache_.emplace(x.bits(), gajd::marginalize(joint_, x)).first;
  return it->second;
}

namespace {

std::uint32_t bound_value(const Binding& binding, const Variable& v, const Universe& u) {
  const auto it = binding.find(v);
  if (it == binding.end()) throw UsageError("variable " + v.name() + " is unbound");
  if (it->second >= u.domain_size(v.column)) {
    throw UsageError("value bound to " + v.name() + " is outside its domain");
  }
  return it->second;
}

void check_atom_scheme(const MarginalAtom& a, const WeightedRelation& joint) {
  if (!a.over().subset_of(joint.scheme())) {
    throw SchemeError("atom " + a.to_string() + " is not over the joint's scheme");
  }
}

}  // namespace

Evaluation evaluate(const RationalExpression& expr, MarginalCache& cache, const Binding& binding) {
  const WeightedRelation& joint = cache.joint();
  const Universe& u = joint.universe();
  auto atom_value = [&](const MarginalAtom& a) {
    check_atom_scheme(a, joint);
    TupleCode code = 0;
    for (const Variable& v : a.pattern()) code += bound_value(binding, v, u) * u.stride(v.column);
    return cache.marginal(a.over()).weight(code);
  };
  double num = 1.0;
  for (const auto& a : expr.numerator()) num *= atom_value(a);
  double den = 1.0;
  for (const auto& a : expr.denominator()) den *= atom_value(a);
  if (den == 0.0) return {0.0, true};
  return {num / den, false};
}

Evaluation evaluate(const RationalExpression& expr, const WeightedRelation& joint,
                    const Binding& binding) {
  MarginalCache cache(joint);
  return evaluate(expr, cache, binding);
}

CompiledExpression::CompiledExpression(const RationalExpression& expr, MarginalCache& cache,
                                       const std::function<std::size_t(const Variable&)>& slot_of) {
  const WeightedRelation& joint = cache.joint();
  auto compile = [&](const MarginalAtom& a) {
    check_atom_scheme(a, joint);
    Term t{&cache.marginal(a.over()), {}};
    for (const Variable& v : a.pattern()) {
      t.parts.emplace_back(slot_of(v), joint.universe().stride(v.column));
    }
    return t;
  };
  for (const auto& a : expr.numerator()) numerator_.push_back(compile(a));
  for (const auto& a : expr.denominator()) denominator_.push_back(compile(a));
}

double CompiledExpression::term_value(const Term& t, std::span<const std::uint32_t> slots) const {
  TupleCode code = 0;
  for (const auto& [slot, stride] : t.parts) code += slots[slot] * stride;
  return t.marginal->weight(code);
}

Evaluation CompiledExpression::operator()(std::span<const std::uint32_t> slots) const {
  double num = 1.0;
  for (const Term& t : numerator_) num *= term_value(t, slots);
  double den = 1.0;
  for (const Term& t : denominator_) den *= term_value(t, slots);
  if (den == 0.0) return {0.0, true};
  return {num / den, false};
}

}  // namespace gajd
