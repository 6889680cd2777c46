// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gajd/chase.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "gajd/error.hpp"

namespace gajd {

namespace {

void check_rule(const Tableau& t, const JRule& rule) {
  if (!rule.constraint.universe().same_attributes(t.universe())) {
    throw SchemeError("rule " + rule.name + " lives in a different universe");
  }
  if (rule.constraint.scheme() != t.scheme()) {
    throw SchemeError("rule " + rule.name + " is over " + t.universe().format(rule.constraint.scheme()) +
                      " but the tableau is over " + t.universe().format(t.scheme()));
  }
}

// For each edge of the rule (certificate order), the tableau cell positions
// it covers.
std::vector<std::vector<std::size_t>> edge_positions(const Tableau& t, const JRule& rule) {
  const auto columns = t.scheme().members();
  std::vector<std::vector<std::size_t>> out;
  for (AttrSet edge : rule.constraint.ordered_edges()) {
    std::vector<std::size_t> pos;
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (edge.contains(columns[k])) pos.push_back(k);
    }
    out.push_back(std::move(pos));
  }
  return out;
}

// Incrementally assembled candidate pattern: one optional cell per column.
class Assembly {
 public:
  explicit Assembly(std::size_t width) : cells_(width) {}

  bool fits(const Row& r, const std::vector<std::size_t>& pos) const {
    return std::all_of(pos.begin(), pos.end(),
                       [&](std::size_t k) { return !cells_[k] || *cells_[k] == r.cells[k]; });
  }

  // Returns the positions newly filled so they can be undone.
  std::vector<std::size_t> place(const Row& r, const std::vector<std::size_t>& pos) {
    std::vector<std::size_t> filled;
    for (std::size_t k : pos) {
      if (!cells_[k]) {
        cells_[k] = r.cells[k];
        filled.push_back(k);
      }
    }
    return filled;
  }

  void undo(const std::vector<std::size_t>& filled) {
    for (std::size_t k : filled) cells_[k].reset();
  }

  std::vector<Variable> pattern() const {
    std::vector<Variable> out;
    for (const auto& c : cells_) out.push_back(*c);
    return out;
  }

 private:
  std::vector<std::optional<Variable>> cells_;
};

Row make_row(const Tableau& t, const JRule& rule, std::span<const std::size_t> selection,
             std::vector<Variable> cells) {
  std::vector<std::vector<Variable>> selected;
  for (std::size_t k : selection) selected.push_back(t.row(k).cells);
  auto expr = eq5_expression(selected, cells, rule.constraint);
  return {std::move(cells), std::move(expr)};
}

struct Candidate {
  std::size_t distinguished = 0;
  std::size_t rule = 0;
  std::vector<std::size_t> selection;
  std::vector<Variable> cells;
};

// Best candidate first.
struct BetterFirst {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.distinguished != b.distinguished) return a.distinguished > b.distinguished;
    if (a.rule != b.rule) return a.rule < b.rule;
    return a.selection < b.selection;
  }
};

class Pool {
 public:
  Pool(ChaseOrder order, std::uint64_t seed) : order_(order), rng_(seed) {}

  void push(Candidate c) {
    if (order_ == ChaseOrder::BestFirst) {
      ranked_.insert(std::move(c));
    } else {
      shuffled_.push_back(std::move(c));
    }
  }

  bool empty() const { return ranked_.empty() && shuffled_.empty(); }

  Candidate pop() {
    if (order_ == ChaseOrder::BestFirst) {
      return std::move(ranked_.extract(ranked_.begin()).value());
    }
    std::uniform_int_distribution<std::size_t> pick(0, shuffled_.size() - 1);
    const std::size_t i = pick(rng_);
    std::swap(shuffled_[i], shuffled_.back());
    Candidate c = std::move(shuffled_.back());
    shuffled_.pop_back();
    return c;
  }

 private:
  ChaseOrder order_;
  std::mt19937_64 rng_;
  std::set<Candidate, BetterFirst> ranked_;
  std::vector<Candidate> shuffled_;
};

// Rows selected at one rule position matter only through their cells on
// that position's edge and, for the admission test, their distinguished
// columns. Each position keeps the first row of every such class.
class PositionClasses {
 public:
  /// Returns true if row `k` opens a new class.
  bool add(const Row& r, std::size_t k, const std::vector<std::size_t>& pos, bool keep_distinguished) {
    std::vector<Variable> key;
    for (std::size_t c : pos) key.push_back(r.cells[c]);
    const std::uint64_t d = keep_distinguished ? distinguished_columns(r.cells).bits() : 0;
    if (!seen_.emplace(std::move(key), d).second) return false;
    reps_.push_back(k);
    return true;
  }
  const std::vector<std::size_t>& reps() const noexcept { return reps_; }

 private:
  std::set<std::pair<std::vector<Variable>, std::uint64_t>> seen_;
  std::vector<std::size_t> reps_;
};

// Every joinable selection over class representatives in which row `m`
// (the newest representative) occurs, each exactly once: m's first
// occurrence is fixed at position p, earlier positions use older rows.
template <typename Visit>
void selections_with(const Tableau& t, const std::vector<std::vector<std::size_t>>& edges,
                     const std::vector<PositionClasses>& classes, std::size_t m, Visit&& visit) {
  const std::size_t q = edges.size();
  Assembly assembly(t.scheme().size());
  std::vector<std::size_t> selection(q);
  for (std::size_t p = 0; p < q; ++p) {
    const auto& at_p = classes[p].reps();
    if (at_p.empty() || at_p.back() != m) continue;
    auto descend = [&](auto&& self, std::size_t i) -> void {
      if (i == q) {
        visit(selection, assembly.pattern());
        return;
      }
      for (std::size_t k : classes[i].reps()) {
        if (i == p ? k != m : (i < p ? k >= m : k > m)) continue;
        if (!assembly.fits(t.row(k), edges[i])) continue;
        const auto filled = assembly.place(t.row(k), edges[i]);
        selection[i] = k;
        self(self, i + 1);
        assembly.undo(filled);
      }
    };
    descend(descend, 0);
  }
}

}  // namespace

AttrSet distinguished_columns(std::span<const Variable> cells) {
  AttrSet out;
  for (const Variable& v : cells) {
    if (v.is_distinguished()) out |= AttrSet::single(v.column);
  }
  return out;
}

bool dominated(const Tableau& t, std::span<const std::size_t> selection,
               std::span<const Variable> candidate) {
  const AttrSet d = distinguished_columns(candidate);
  return std::any_of(selection.begin(), selection.end(), [&](std::size_t k) {
    return d.subset_of(distinguished_columns(t.row(k).cells));
  });
}

JoinResult joinable(const Tableau& t, const JRule& rule, std::span<const std::size_t> selection) {
  check_rule(t, rule);
  const auto edges = edge_positions(t, rule);
  if (selection.size() != edges.size()) {
    throw UsageError("rule " + rule.name + " needs " + std::to_string(edges.size()) + " rows, got " +
                     std::to_string(selection.size()));
  }
  for (std::size_t k : selection) {
    if (k >= t.size()) throw UsageError("row " + std::to_string(k + 1) + " does not exist");
  }
  Assembly assembly(t.scheme().size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!assembly.fits(t.row(selection[i]), edges[i])) return {};
    assembly.place(t.row(selection[i]), edges[i]);
  }
  auto cells = assembly.pattern();
  if (auto existing = t.find(cells)) {
    return {JoinResult::Status::AlreadyPresent, std::nullopt, existing};
  }
  return {JoinResult::Status::Candidate, make_row(t, rule, selection, std::move(cells)), std::nullopt};
}

ChaseTrace chase(const Tableau& t, std::span<const JRule> rules, const ChaseOptions& options) {
  for (const JRule& r : rules) check_rule(t, r);
  ChaseTrace trace{t, {rules.begin(), rules.end()}, {}, t, {}};
  Tableau& cur = trace.final;
  if (cur.size() > options.max_rows) throw ChaseLimitExceeded("initial tableau exceeds the row limit");

  std::vector<std::vector<std::vector<std::size_t>>> edges;
  for (const JRule& r : rules) edges.push_back(edge_positions(cur, r));

  const bool keep_d = options.admission == Admission::NonDominated;
  std::vector<std::vector<PositionClasses>> classes;
  for (const auto& e : edges) classes.emplace_back(e.size());

  Pool pool(options.order, options.seed);
  auto generate = [&](std::size_t m) {
    for (std::size_t r = 0; r < rules.size(); ++r) {
      bool opened = false;
      for (std::size_t i = 0; i < edges[r].size(); ++i) {
        opened |= classes[r][i].add(cur.row(m), m, edges[r][i], keep_d);
      }
      if (!opened) continue;
      selections_with(cur, edges[r], classes[r], m, [&](const std::vector<std::size_t>& sel, std::vector<Variable> cells) {
        ++trace.stats.candidates;
        if (cur.find(cells)) {
          ++trace.stats.alternative_derivations;
          return;
        }
        if (options.admission == Admission::NonDominated && dominated(cur, sel, cells)) {
          ++trace.stats.dominated;
          return;
        }
        const std::size_t d = distinguished_columns(cells).size();
        pool.push({d, r, sel, std::move(cells)});
      });
    }
  };

  const auto goal = cur.distinguished_pattern();
  if (options.stop_at_goal && cur.find(goal)) return trace;
  for (std::size_t m = 0; m < cur.size(); ++m) generate(m);
  while (!pool.empty()) {
    Candidate c = pool.pop();
    if (cur.find(c.cells)) {
      ++trace.stats.alternative_derivations;
      continue;
    }
    if (cur.size() >= options.max_rows) {
      throw ChaseLimitExceeded("chase exceeded " + std::to_string(options.max_rows) + " rows");
    }
    Row row = make_row(cur, rules[c.rule], c.selection, c.cells);
    const std::size_t m = cur.add_row(row);
    trace.steps.push_back({c.rule, std::move(c.selection), std::move(row)});
    if (options.stop_at_goal && c.cells == goal) break;
    generate(m);
  }
  return trace;
}

Tableau replay(const ChaseTrace& trace) {
  const auto& rules = trace.rules;
  Tableau t = trace.initial;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const ChaseStep& step = trace.steps[k];
    if (step.rule >= rules.size()) throw UsageError("step names an unknown rule");
    JoinResult j = joinable(t, rules[step.rule], step.selected);
    if (j.status != JoinResult::Status::Candidate || *j.row != step.produced) {
      throw UsageError("step " + std::to_string(k + 1) + " does not replay");
    }
    t.add_row(std::move(*j.row));
  }
  return t;
}

namespace {

std::string pattern_string(std::span<const Variable> cells) {
  std::string out = "(";
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k > 0) out += ',';
    out += cells[k].name();
  }
  return out + ")";
}

std::string rows_string(std::span<const std::size_t> rows) {
  std::string out = "[";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k > 0) out += ',';
    out += std::to_string(rows[k] + 1);
  }
  return out + "]";
}

class Expander {
 public:
  Expander(const ChaseTrace& trace, std::vector<Rewrite>& log) : trace_(trace), log_(log) {}

  RationalExpression row(std::size_t k) {
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    const Tableau& t = trace_.final;
    const std::size_t initial = trace_.initial.size();
    RationalExpression out;
    if (k < initial) {
      out = t.row(k).weight_expr;
    } else {
      const ChaseStep& step = trace_.steps.at(k - initial);
      const Gajd& g = rule_gajd(step);
      const auto edges = g.ordered_edges();
      std::vector<MarginalAtom> den;
      for (AttrSet l : g.interactions()) den.push_back(MarginalAtom::from_cells(step.produced.cells, l));
      out = RationalExpression({}, std::move(den));
      for (std::size_t i = 0; i < edges.size(); ++i) out = out * atom(step.selected[i], edges[i]);
    }
    memo_.emplace(k, out);
    return out;
  }


 private:
  const Gajd& rule_gajd(const ChaseStep& step) const { return trace_.rules.at(step.rule).constraint; }

  // phi(w_k[x]) rewritten as the sum of row k's expression over the
  // variables outside x.
  RationalExpression atom(std::size_t k, AttrSet x) {
    const Row& r = trace_.final.row(k);
    MarginalAtom a = MarginalAtom::from_cells(r.cells, x);
    if (k < trace_.initial.size()) return RationalExpression::atom(std::move(a));
    Rewrite rw{a, k, {}, std::nullopt};
    for (const Variable& v : r.cells) {
      if (!x.contains(v.column)) rw.summed.push_back(v);
    }
    RationalExpression e = row(k);
    for (const Variable& v : rw.summed) {
      auto s = sum_out(e, v);
      if (!s) {
        log_.push_back(rw);
        return RationalExpression::atom(std::move(a));
      }
      e = std::move(s->result);
    }
    rw.result = e;
    log_.push_back(std::move(rw));
    return e;
  }

  const ChaseTrace& trace_;
  std::vector<Rewrite>& log_;
  std::map<std::size_t, RationalExpression> memo_;
};

}  // namespace

std::string format_step(const ChaseTrace& trace, std::size_t k) {
  const ChaseStep& s = trace.steps.at(k);
  return "step " + std::to_string(k + 1) + ": rule " + trace.rules.at(s.rule).name + " rows " +
         rows_string(s.selected) + " -> row " + pattern_string(s.produced.cells) + " expr " +
         s.produced.weight_expr.to_string();
}

RationalExpression expand_row(const ChaseTrace& trace, std::size_t row, std::vector<Rewrite>& log) {
  Expander ex(trace, log);
  return ex.row(row);
}

Verdict implies(std::span<const JRule> constraints, const Gajd& target, const ChaseOptions& options) {
  const Tableau tr = build_tr(target);
  Verdict v{false, std::nullopt, {}, chase(tr, constraints, options)};
  const auto goal = v.trace.final.find_distinguished();
  v.holds = goal.has_value();
  if (v.holds) {
    v.factorization = expand_row(v.trace, *goal, v.rewrites);
  }
  return v;
}

std::string format_rewrite(const Rewrite& r) {
  std::string out = "rewrite " + r.atom.to_string() + " from row " + std::to_string(r.row + 1);
  if (!r.summed.empty()) {
    out += " summing";
    for (const Variable& v : r.summed) out += " " + v.name();
  }
  return out + (r.result ? " -> " + r.result->to_string() : " kept");
}

std::string format_verdict(const Verdict& v, bool trace, bool factorize) {
  std::string out;
  if (trace) {
    for (std::size_t k = 0; k < v.trace.steps.size(); ++k) out += format_step(v.trace, k) + "\n";
    if (factorize) {
      for (const Rewrite& r : v.rewrites) out += format_rewrite(r) + "\n";
    }
  }
  out += std::string("IMPLIES: ") + (v.holds ? "yes" : "no") + "\n";
  if (factorize && v.factorization) out += "FACTORIZATION: " + v.factorization->to_string() + "\n";
  return out;
}

std::string verdict_to_jsonl(const Verdict& v, std::size_t query) {
  using nlohmann::json;
  std::string out;
  auto emit = [&](json record) {
    record["query"] = query;
    out += record.dump() + "\n";
  };
  for (std::size_t k = 0; k < v.trace.initial.size(); ++k) {
    const Row& r = v.trace.initial.row(k);
    emit({{"record", "initial"}, {"row_id", k + 1}, {"row", pattern_string(r.cells)},
          {"expr", r.weight_expr.to_string()}});
  }
  for (std::size_t k = 0; k < v.trace.steps.size(); ++k) {
    const ChaseStep& s = v.trace.steps[k];
    json rows = json::array();
    for (std::size_t r : s.selected) rows.push_back(r + 1);
    emit({{"record", "step"}, {"step", k + 1}, {"rule", v.trace.rules.at(s.rule).name},
          {"rows", std::move(rows)}, {"row", pattern_string(s.produced.cells)},
          {"expr", s.produced.weight_expr.to_string()}});
  }
  for (const Rewrite& r : v.rewrites) {
    json summed = json::array();
    for (const Variable& x : r.summed) summed.push_back(x.name());
    emit({{"record", "rewrite"}, {"atom", r.atom.to_string()}, {"row_id", r.row + 1},
          {"summed", std::move(summed)},
          {"result", r.result ? json(r.result->to_string()) : json(nullptr)}});
  }
  emit({{"record", "verdict"},
        {"implies", v.holds},
        {"final_rows", v.trace.final.size()},
        {"candidates", v.trace.stats.candidates},
        {"dominated", v.trace.stats.dominated},
        {"alternative_derivations", v.trace.stats.alternative_derivations},
        {"factorization", v.factorization ? json(v.factorization->to_string()) : json(nullptr)}});
  return out;
}

}  // namespace gajd
