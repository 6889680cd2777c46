// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gajd/tableau.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gajd/error.hpp"

namespace gajd {

Tableau::Tableau(UniversePtr universe, AttrSet scheme)
    : universe_(std::move(universe)), scheme_(scheme), columns_(scheme.members()) {
  if (!universe_) throw UsageError("tableau needs a universe");
  if (scheme_.empty() || !scheme_.subset_of(universe_->all())) {
    throw SchemeError("tableau scheme must be a nonempty part of the universe");
  }
}

Tableau Tableau::identity(UniversePtr universe, AttrSet scheme) {
  Tableau t(std::move(universe), scheme);
  const auto wd = t.distinguished_pattern();
  const auto phi = RationalExpression::atom(MarginalAtom::from_cells(wd, scheme));
  t.add_row({wd, phi});
  t.set_mapping(phi);
  return t;
}

void Tableau::set_mapping(RationalExpression psi) {
  for (const auto* side : {&psi.numerator(), &psi.denominator()}) {
    for (const auto& a : *side) {
      if (!a.all_distinguished() || !a.over().subset_of(scheme_)) {
        throw UsageError("mapping atoms must be over distinguished variables of the scheme");
      }
    }
  }
  mapping_ = std::move(psi);
}

std::optional<std::size_t> Tableau::find(std::span<const Variable> cells) const {
  const auto it = index_.find(std::vector<Variable>(cells.begin(), cells.end()));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Tableau::add_row(Row row) {
  if (row.cells.size() != columns_.size()) throw UsageError("row arity does not match the scheme");
  for (std::size_t k = 0; k < columns_.size(); ++k) {
    const Variable& v = row.cells[k];
    if (v.column != columns_[k]) throw UsageError("row variable " + v.name() + " in the wrong column");
    if (v.is_distinguished() && v.index != columns_[k] + 1) {
      throw UsageError("distinguished variable outside its own column");
    }
    if (!v.is_distinguished()) {
      const auto it = nd_columns_.find(v.index);
      if (it != nd_columns_.end() && it->second != v.column) {
        throw UsageError("variable " + v.name() + " used in two columns");
      }
    }
  }
  if (index_.contains(row.cells)) throw UsageError("row pattern already present");
  for (const Variable& v : row.cells) {
    if (v.is_distinguished()) continue;
    nd_columns_.emplace(v.index, v.column);
    next_fresh_ = std::max(next_fresh_, v.index + 1);
  }
  index_.emplace(row.cells, rows_.size());
  rows_.push_back(std::move(row));
  return rows_.size() - 1;
}

Variable Tableau::fresh(std::size_t column) {
  if (!scheme_.contains(column)) throw UsageError("fresh variable outside the scheme");
  return Variable::nondistinguished(next_fresh_++, column);
}

std::vector<Variable> Tableau::distinguished_pattern() const {
  std::vector<Variable> out;
  for (std::size_t c : columns_) out.push_back(Variable::distinguished(c));
  return out;
}

void Tableau::validate() const {
  for (std::size_t k = 0; k < columns_.size(); ++k) {
    const bool seen = std::any_of(rows_.begin(), rows_.end(),
                                  [&](const Row& r) { return r.cells[k].is_distinguished(); });
    if (!seen) throw UsageError("distinguished variable a" + std::to_string(columns_[k] + 1) + " never appears");
  }
}

std::string Tableau::to_figure() const {
  std::vector<std::size_t> width;
  for (std::size_t k = 0; k < columns_.size(); ++k) {
    std::size_t w = universe_->name(columns_[k]).size();
    for (const Row& r : rows_) w = std::max(w, r.cells[k].name().size());
    width.push_back(w);
  }
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  std::string out;
  for (std::size_t k = 0; k < columns_.size(); ++k) {
    out += pad(universe_->name(columns_[k]), width[k]) + "  ";
  }
  out += "| f\n";
  for (const Row& r : rows_) {
    for (std::size_t k = 0; k < columns_.size(); ++k) out += pad(r.cells[k].name(), width[k]) + "  ";
    out += "| " + r.weight_expr.to_string() + "\n";
  }
  return out;
}

std::vector<std::vector<Variable>> Tableau::pattern_set() const {
  std::vector<std::vector<Variable>> out;
  out.reserve(rows_.size());
  for (const Row& r : rows_) out.push_back(r.cells);
  std::sort(out.begin(), out.end());
  return out;
}

Tableau build_tr(const Gajd& g) {
  Tableau t(g.universe_ptr(), g.scheme());
  const auto columns = g.scheme().members();
  for (AttrSet edge : g.ordered_edges()) {
    std::vector<Variable> cells;
    for (std::size_t c : columns) {
      cells.push_back(edge.contains(c) ? Variable::distinguished(c) : t.fresh(c));
    }
    auto phi = RationalExpression::atom(MarginalAtom::from_cells(cells, g.scheme()));
    t.add_row({std::move(cells), std::move(phi)});
  }
  t.set_mapping(decomposition_expression(g));
  return t;
}

namespace {

void check_run_inputs(const Tableau& t, const WeightedRelation& rel) {
  if (!t.universe().same_attributes(rel.universe())) {
    throw SchemeError("tableau and relation live in different universes");
  }
  if (t.scheme() != rel.scheme()) {
    throw SchemeError("relation scheme " + rel.universe().format(rel.scheme()) +
                      " does not match tableau scheme " + t.universe().format(t.scheme()));
  }
}

bool same_weight(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Sorts by code (stably, so the first valuation wins) and checks that
// repeated tuples agree.
WeightedRelation collect(const Tableau& t, std::vector<Entry> emitted) {
  std::stable_sort(emitted.begin(), emitted.end(),
                   [](const Entry& a, const Entry& b) { return a.code < b.code; });
  std::vector<Entry> out;
  for (const Entry& e : emitted) {
    if (!out.empty() && out.back().code == e.code) {
      if (!same_weight(out.back().weight, e.weight)) {
        throw InconsistencyError("valuations disagree on the weight of a distinguished tuple");
      }
      continue;
    }
    out.push_back(e);
  }
  return WeightedRelation(t.universe_ptr(), t.scheme(), std::move(out));
}

std::map<Variable, std::size_t> assign_slots(const Tableau& t) {
  std::map<Variable, std::size_t> slots;
  for (const Variable& v : t.distinguished_pattern()) slots.emplace(v, slots.size());
  for (const Row& r : t.rows()) {
    for (const Variable& v : r.cells) slots.emplace(v, slots.size());
  }
  return slots;
}

// Conjunctive-query plan: rows are matched in order; columns whose variable
// was bound by an earlier row form the lookup key of the row's index.
class RunPlan {
 public:
  RunPlan(const Tableau& t, const WeightedRelation& rel, MarginalCache& cache)
      : universe_(t.universe()), slots_(assign_slots(t)) {
    const auto slot_of = [this](const Variable& v) { return slots_.at(v); };
    psi_.emplace(t.mapping(), cache, slot_of);
    std::vector<bool> bound(slots_.size(), false);
    for (const Row& r : t.rows()) {
      Step step;
      for (const Variable& v : r.cells) {
        const std::size_t s = slots_.at(v);
        if (bound[s]) {
          step.key_columns |= AttrSet::single(v.column);
          step.checks.emplace_back(s, universe_.stride(v.column));
        } else {
          step.binds.emplace_back(s, v.column);
        }
      }
      for (const auto& [s, column] : step.binds) bound[s] = true;
      for (const Entry& e : rel.entries()) {
        if (e.weight > 0.0) step.index.emplace_back(universe_.project(e.code, step.key_columns), e.code);
      }
      std::sort(step.index.begin(), step.index.end());
      steps_.push_back(std::move(step));
    }
    for (const Variable& v : t.distinguished_pattern()) {
      output_.emplace_back(slots_.at(v), universe_.stride(v.column));
    }
  }

  std::size_t slot_count() const noexcept { return slots_.size(); }
  std::size_t first_candidates() const noexcept { return steps_.front().index.size(); }

  /// Explores valuations whose first row is mapped to the `i`-th candidate.
  void explore_from(std::size_t i, std::vector<std::uint32_t>& values, std::vector<Entry>& out) const {
    bind(steps_.front(), steps_.front().index[i].second, values);
    descend(1, values, out);
  }

 private:
  struct Step {
    AttrSet key_columns;
    std::vector<std::pair<std::size_t, std::uint64_t>> checks;  // slot, stride
    std::vector<std::pair<std::size_t, std::size_t>> binds;     // slot, column
    std::vector<std::pair<TupleCode, TupleCode>> index;         // key, full code
  };

  void bind(const Step& step, TupleCode code, std::vector<std::uint32_t>& values) const {
    for (const auto& [s, column] : step.binds) values[s] = universe_.digit(code, column);
  }

  void descend(std::size_t depth, std::vector<std::uint32_t>& values, std::vector<Entry>& out) const {
    if (depth == steps_.size()) {
      const Evaluation e = (*psi_)(values);
      if (e.degenerate) return;
      TupleCode code = 0;
      for (const auto& [s, stride] : output_) code += values[s] * stride;
      out.push_back({code, e.value});
      return;
    }
    const Step& step = steps_[depth];
    TupleCode key = 0;
    for (const auto& [s, stride] : step.checks) key += values[s] * stride;
    auto it = std::lower_bound(step.index.begin(), step.index.end(), std::pair<TupleCode, TupleCode>{key, 0});
    for (; it != step.index.end() && it->first == key; ++it) {
      bind(step, it->second, values);
      descend(depth + 1, values, out);
    }
  }

  const Universe& universe_;
  std::map<Variable, std::size_t> slots_;
  std::optional<CompiledExpression> psi_;
  std::vector<Step> steps_;
  std::vector<std::pair<std::size_t, std::uint64_t>> output_;
};

}  // namespace

WeightedRelation run(const Tableau& t, const WeightedRelation& rel, Execution exec) {
  check_run_inputs(t, rel);
  if (t.size() == 0) return WeightedRelation(t.universe_ptr(), t.scheme());
  t.validate();
  MarginalCache cache(rel);
  const RunPlan plan(t, rel, cache);
  const std::size_t n = plan.first_candidates();
  std::vector<Entry> emitted;
  if (exec == Execution::Serial) {
    std::vector<std::uint32_t> values(plan.slot_count(), 0);
    for (std::size_t i = 0; i < n; ++i) plan.explore_from(i, values, emitted);
    return collect(t, std::move(emitted));
  }
  std::vector<std::vector<Entry>> per_thread(static_cast<std::size_t>(max_threads()));
#pragma omp parallel
  {
#ifdef _OPENMP
    auto& mine = per_thread[static_cast<std::size_t>(omp_get_thread_num())];
#else
    auto& mine = per_thread.front();
#endif
    std::vector<std::uint32_t> values(plan.slot_count(), 0);
    // Static schedule: thread k gets the k-th contiguous block, so joining the
    // buffers in thread order reproduces the serial emission order.
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < n; ++i) plan.explore_from(i, values, mine);
  }
  for (auto& part : per_thread) emitted.insert(emitted.end(), part.begin(), part.end());
  return collect(t, std::move(emitted));
}

WeightedRelation run_reference(const Tableau& t, const WeightedRelation& rel) {
  check_run_inputs(t, rel);
  t.validate();
  const Universe& u = t.universe();
  std::vector<Variable> vars;
  for (const auto& [v, slot] : assign_slots(t)) vars.push_back(v);
  double assignments = 1.0;
  for (const Variable& v : vars) assignments *= static_cast<double>(u.domain_size(v.column));
  if (assignments > double(1 << 22)) throw DomainTooLarge("too many assignments for the reference run");

  MarginalCache cache(rel);
  Binding binding;
  for (const Variable& v : vars) binding[v] = 0;
  std::vector<Entry> emitted;
  while (true) {
    const bool embedded = std::all_of(t.rows().begin(), t.rows().end(), [&](const Row& r) {
      TupleCode code = 0;
      for (const Variable& v : r.cells) code += binding.at(v) * u.stride(v.column);
      return rel.weight(code) > 0.0;
    });
    if (embedded) {
      const Evaluation e = evaluate(t.mapping(), cache, binding);
      if (!e.degenerate) {
        TupleCode code = 0;
        for (const Variable& v : t.distinguished_pattern()) code += binding.at(v) * u.stride(v.column);
        emitted.push_back({code, e.value});
      }
    }
    std::size_t k = 0;
    for (; k < vars.size(); ++k) {
      auto& value = binding[vars[k]];
      if (++value < u.domain_size(vars[k].column)) break;
      value = 0;
    }
    if (k == vars.size()) break;
  }
  return collect(t, std::move(emitted));
}

}  // namespace gajd
