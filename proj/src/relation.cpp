// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gajd/relation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gajd/error.hpp"

namespace gajd {

namespace {

void sort_and_check(std::vector<Entry>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.code < b.code; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].code == entries[i - 1].code) throw UsageError("duplicate tuple in relation");
  }
}

// Sorts (code, weight) pairs and sums weights of equal codes.
std::vector<Entry> accumulate(std::vector<Entry> raw) {
  std::sort(raw.begin(), raw.end(),
            [](const Entry& a, const Entry& b) { return a.code < b.code; });
  std::vector<Entry> out;
  out.reserve(raw.size());
  for (const Entry& e : raw) {
    if (!out.empty() && out.back().code == e.code) {
      out.back().weight += e.weight;
    } else {
      out.push_back(e);
    }
  }
  return out;
}

void require_same_universe(const WeightedRelation& a, const WeightedRelation& b) {
  if (!a.universe().same_attributes(b.universe())) {
    throw SchemeError("relations live in different universes");
  }
}

std::string format_weight(double w) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", w);
  return buf;
}

}  // namespace

WeightedRelation::WeightedRelation(UniversePtr universe, AttrSet scheme)
    : universe_(std::move(universe)), scheme_(scheme) {
  if (!universe_) throw UsageError("relation needs a universe");
  if (!scheme_.subset_of(universe_->all())) {
    throw SchemeError("relation scheme is not part of the universe");
  }
}

WeightedRelation::WeightedRelation(UniversePtr universe, AttrSet scheme, std::vector<Entry> entries)
    : WeightedRelation(std::move(universe), scheme) {
  for (const Entry& e : entries) {
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw UsageError("relation weights must be finite and nonnegative");
    }
    if (universe_->project(e.code, scheme_) != e.code) {
      throw UsageError("tuple code is not a tuple over the relation scheme");
    }
  }
  sort_and_check(entries);
  entries_ = std::move(entries);
}

WeightedRelation WeightedRelation::dense(UniversePtr universe, AttrSet scheme,
                                         const std::function<double(TupleCode)>& weight_of) {
  const auto members = scheme.members();
  std::vector<std::uint32_t> digits(members.size(), 0);
  std::vector<Entry> entries;
  entries.reserve(universe->cell_count(scheme));
  while (true) {
    TupleCode code = 0;
    for (std::size_t k = 0; k < members.size(); ++k) code += digits[k] * universe->stride(members[k]);
    entries.push_back({code, weight_of(code)});
    std::size_t k = 0;
    for (; k < members.size(); ++k) {
      if (++digits[k] < universe->domain_size(members[k])) break;
      digits[k] = 0;
    }
    if (k == members.size()) break;
  }
  return WeightedRelation(std::move(universe), scheme, std::move(entries));
}

double WeightedRelation::weight(TupleCode code) const noexcept {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), code,
                                   [](const Entry& e, TupleCode c) { return e.code < c; });
  return it != entries_.end() && it->code == code ? it->weight : 0.0;
}

double WeightedRelation::total() const noexcept {
  double sum = 0.0;
  for (const Entry& e : entries_) sum += e.weight;
  return sum;
}

bool WeightedRelation::is_normalized(double tol) const noexcept {
  return std::abs(total() - 1.0) <= tol;
}

bool WeightedRelation::strictly_positive() const noexcept {
  if (entries_.size() != universe_->cell_count(scheme_)) return false;
  return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.weight > 0; });
}

TupleCode WeightedRelation::encode(std::span<const std::uint32_t> values) const {
  const auto members = scheme_.members();
  if (values.size() != members.size()) throw UsageError("tuple arity does not match scheme");
  TupleCode code = 0;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (values[k] >= universe_->domain_size(members[k])) {
      throw UsageError("value out of domain for attribute " + universe_->name(members[k]));
    }
    code += values[k] * universe_->stride(members[k]);
  }
  return code;
}

std::vector<std::uint32_t> WeightedRelation::decode(TupleCode code) const {
  std::vector<std::uint32_t> out;
  for (std::size_t a : scheme_.members()) out.push_back(universe_->digit(code, a));
  return out;
}

bool WeightedRelation::operator==(const WeightedRelation& other) const {
  return scheme_ == other.scheme_ && entries_ == other.entries_ &&
         (universe_ == other.universe_ || universe_->same_attributes(*other.universe_));
}

std::string WeightedRelation::to_text() const {
  std::string out;
  for (std::size_t a : scheme_.members()) out += universe_->name(a) + " ";
  out += "f\n";
  for (const Entry& e : entries_) {
    for (std::size_t a : scheme_.members()) {
      out += universe_->attribute(a).labels[universe_->digit(e.code, a)] + " ";
    }
    out += format_weight(e.weight) + "\n";
  }
  return out;
}

WeightedRelation WeightedRelation::from_text(UniversePtr universe, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw UsageError("relation text is empty");
  std::istringstream header(line);
  std::vector<std::size_t> columns;
  AttrSet scheme;
  std::string token;
  std::vector<std::string> tokens;
  while (header >> token) tokens.push_back(token);
  if (tokens.empty() || tokens.back() != "f") throw UsageError("relation header must end with f");
  tokens.pop_back();
  for (const auto& name : tokens) {
    const auto idx = universe->index_of(name);
    if (!idx) throw SchemeError("unknown attribute '" + name + "' in relation header");
    columns.push_back(*idx);
    scheme |= AttrSet::single(*idx);
  }
  std::vector<Entry> entries;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::vector<std::string> cells;
    while (row >> token) cells.push_back(token);
    if (cells.empty()) continue;
    if (cells.size() != columns.size() + 1) throw UsageError("relation row has wrong arity");
    TupleCode code = 0;
    for (std::size_t k = 0; k < columns.size(); ++k) {
      const auto& labels = universe->attribute(columns[k]).labels;
      const auto it = std::find(labels.begin(), labels.end(), cells[k]);
      if (it == labels.end()) throw UsageError("unknown value label '" + cells[k] + "'");
      code += static_cast<TupleCode>(it - labels.begin()) * universe->stride(columns[k]);
    }
    entries.push_back({code, std::stod(cells.back())});
  }
  return WeightedRelation(std::move(universe), scheme, std::move(entries));
}

double max_abs_difference(const WeightedRelation& a, const WeightedRelation& b) {
  require_same_universe(a, b);
  if (a.scheme() != b.scheme()) throw SchemeError("cannot compare relations over different schemes");
  double worst = 0.0;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() || ib != b.entries().end()) {
    if (ib == b.entries().end() || (ia != a.entries().end() && ia->code < ib->code)) {
      worst = std::max(worst, std::abs(ia->weight));
      ++ia;
    } else if (ia == a.entries().end() || ib->code < ia->code) {
      worst = std::max(worst, std::abs(ib->weight));
      ++ib;
    } else {
      worst = std::max(worst, std::abs(ia->weight - ib->weight));
      ++ia;
      ++ib;
    }
  }
  return worst;
}

WeightedRelation marginalize(const WeightedRelation& rel, AttrSet x) {
  if (!x.subset_of(rel.scheme())) {
    throw SchemeError("cannot marginalize " + rel.universe().format(rel.scheme()) + " onto " +
                      rel.universe().format(x));
  }
  if (x == rel.scheme()) return rel;
  std::vector<Entry> raw;
  raw.reserve(rel.size());
  for (const Entry& e : rel.entries()) raw.push_back({rel.universe().project(e.code, x), e.weight});
  return WeightedRelation(rel.universe_ptr(), x, accumulate(std::move(raw)));
}

WeightedRelation product_join(const WeightedRelation& p, const WeightedRelation& q) {
  require_same_universe(p, q);
  const Universe& u = p.universe();
  const AttrSet shared = p.scheme() & q.scheme();
  std::vector<std::pair<TupleCode, const Entry*>> index;
  index.reserve(q.size());
  for (const Entry& e : q.entries()) index.emplace_back(u.project(e.code, shared), &e);
  std::stable_sort(index.begin(), index.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Entry> out;
  for (const Entry& e : p.entries()) {
    const TupleCode key = u.project(e.code, shared);
    auto lo = std::lower_bound(index.begin(), index.end(), key,
                               [](const auto& item, TupleCode k) { return item.first < k; });
    for (; lo != index.end() && lo->first == key; ++lo) {
      out.push_back({e.code + lo->second->code - key, e.weight * lo->second->weight});
    }
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.code < b.code; });
  return WeightedRelation(p.universe_ptr(), p.scheme() | q.scheme(), std::move(out));
}

WeightedRelation inverse(const WeightedRelation& rel) {
  std::vector<Entry> out;
  out.reserve(rel.size());
  for (const Entry& e : rel.entries()) {
    if (e.weight != 0.0) out.push_back({e.code, 1.0 / e.weight});
  }
  return WeightedRelation(rel.universe_ptr(), rel.scheme(), std::move(out));
}

WeightedRelation monotone_join(const WeightedRelation& p, const WeightedRelation& q) {
  const AttrSet shared = p.scheme() & q.scheme();
  return product_join(product_join(p, q), inverse(marginalize(q, shared)));
}

WeightedRelation mpj_map(const WeightedRelation& rel, const Gajd& g) {
  if (!rel.universe().same_attributes(g.universe())) {
    throw SchemeError("relation and GAJD live in different universes");
  }
  if (rel.scheme() != g.scheme()) {
    throw SchemeError("relation scheme " + rel.universe().format(rel.scheme()) +
                      " does not match GAJD scheme " + rel.universe().format(g.scheme()));
  }
  const auto edges = g.ordered_edges();
  WeightedRelation acc = marginalize(rel, edges.front());
  for (std::size_t i = 1; i < edges.size(); ++i) acc = monotone_join(acc, marginalize(rel, edges[i]));
  return acc;
}

Satisfaction satisfies(const WeightedRelation& rel, const Gajd& g, double tol) {
  const double residual = max_abs_difference(rel, mpj_map(rel, g));
  return {residual <= tol, residual};
}

double ci_residual(const WeightedRelation& rel, AttrSet x, AttrSet y) {
  if ((x | y) != rel.scheme()) {
    throw SchemeError("conditional independence sets must cover the relation scheme");
  }
  std::vector<AttrSet> edges{x};
  if (y != x) edges.push_back(y);
  return satisfies(rel, Gajd::from_edges(rel.universe_ptr(), std::move(edges)), 0.0).residual;
}

}  // namespace gajd
