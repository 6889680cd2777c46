// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gajd/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "gajd/error.hpp"
#include "gajd/symbolic.hpp"

namespace gajd {

namespace {

constexpr double kFloorMix = 1e-4;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// Runs `body(i)` for every trial; results are stored by index, so the merge
// does not depend on scheduling.
template <typename Result, typename Body>
std::vector<Result> run_trials(std::size_t n, Execution exec, Body&& body) {
  std::vector<std::optional<Result>> out(n);
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = body(i);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < n; ++i) out[i] = body(i);
  }
  std::vector<Result> flat;
  flat.reserve(n);
  for (auto& r : out) flat.push_back(std::move(*r));
  return flat;
}

void check_same_scheme(std::span<const Gajd> constraints, const Gajd& target) {
  for (const Gajd& c : constraints) {
    if (!c.universe().same_attributes(target.universe()) || c.scheme() != target.scheme()) {
      throw SchemeError("constraint " + c.to_string() + " is not over the target's scheme");
    }
  }
}

struct Trial {
  Projection projection;
  double target_residual = 0.0;
};

Trial trial(std::span<const Gajd> constraints, const Gajd& target, const OracleConfig& cfg,
            std::size_t i) {
  const auto rel = random_positive(target.universe_ptr(), target.scheme(), mix_seed(cfg.seed, i));
  Projection p = project_onto(rel, constraints, cfg.ipf_sweeps);
  const double r = satisfies(p.rel, target, 0.0).residual;
  return {std::move(p), r};
}

}  // namespace

void OracleConfig::validate() const {
  if (trials == 0) throw UsageError("trials must be at least 1");
  if (!(sat_tol > 0.0) || !(check_tol > 0.0) || !(sat_tol < check_tol)) {
    throw UsageError("tolerances must satisfy 0 < sat_tol < check_tol");
  }
}

WeightedRelation random_positive(UniversePtr universe, AttrSet scheme, std::uint64_t seed) {
  const std::uint64_t cells = universe->cell_count(scheme, kMaxOracleCells);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> w(cells);
  double sum = 0.0;
  for (double& x : w) sum += (x = unit(rng));
  const double floor = kFloorMix / static_cast<double>(cells);
  for (double& x : w) x = (1.0 - kFloorMix) * (x / sum) + floor;
  std::size_t next = 0;
  return WeightedRelation::dense(std::move(universe), scheme, [&](TupleCode) { return w[next++]; });
}

bool Projection::converged(double tol) const {
  return std::all_of(residuals.begin(), residuals.end(), [tol](double r) { return r <= tol; });
}

Projection project_onto(const WeightedRelation& rel, std::span<const Gajd> constraints,
                        std::size_t sweeps) {
  if (!rel.strictly_positive()) throw UsageError("projection needs a strictly positive relation");
  WeightedRelation cur = rel;
  for (std::size_t s = 0; s < sweeps && !constraints.empty(); ++s) {
    WeightedRelation next = cur;
    for (const Gajd& c : constraints) next = mpj_map(next, c);
    if (!next.strictly_positive()) throw UsageError("projection lost strict positivity");
    const bool fixed = std::equal(next.entries().begin(), next.entries().end(), cur.entries().begin(),
                                  cur.entries().end());
    cur = std::move(next);
    if (fixed) break;
  }
  std::vector<double> residuals;
  for (const Gajd& c : constraints) residuals.push_back(satisfies(cur, c, 0.0).residual);
  return {std::move(cur), std::move(residuals)};
}

SoundnessReport check_soundness(std::span<const Gajd> constraints, const Gajd& target,
                                const OracleConfig& cfg, Execution exec) {
  cfg.validate();
  check_same_scheme(constraints, target);
  auto trials = run_trials<Trial>(cfg.trials, exec,
                                  [&](std::size_t i) { return trial(constraints, target, cfg, i); });
  SoundnessReport rep;
  rep.trials = cfg.trials;
  for (Trial& t : trials) {
    if (!t.projection.converged(cfg.sat_tol)) continue;
    ++rep.converged;
    rep.worst_target_residual = std::max(rep.worst_target_residual, t.target_residual);
    if (t.target_residual <= cfg.check_tol) {
      ++rep.passed;
    } else {
      ++rep.failed;
      if (!rep.first_failure) rep.first_failure = std::move(t.projection.rel);
    }
  }
  if (rep.failed > 0) {
    rep.status = OracleStatus::Fail;
  } else if (2 * rep.converged < rep.trials) {
    rep.status = OracleStatus::Inconclusive;
  } else {
    rep.status = OracleStatus::Pass;
  }
  return rep;
}

CounterexampleSearch search_counterexample(std::span<const Gajd> constraints, const Gajd& target,
                                           const OracleConfig& cfg, Execution exec) {
  cfg.validate();
  check_same_scheme(constraints, target);
  auto trials = run_trials<Trial>(cfg.trials, exec,
                                  [&](std::size_t i) { return trial(constraints, target, cfg, i); });
  CounterexampleSearch out;
  out.trials = cfg.trials;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    Trial& t = trials[i];
    if (!t.projection.converged(cfg.sat_tol)) continue;
    ++out.converged;
    if (!out.found && t.target_residual > cfg.check_tol) {
      out.found = Counterexample{i, std::move(t.projection.rel), std::move(t.projection.residuals),
                                 t.target_residual};
    }
  }
  return out;
}

Lemma1Report check_lemma1(const Gajd& g, const OracleConfig& cfg, Execution exec) {
  cfg.validate();
  const RationalExpression formula = decomposition_expression(g);
  struct Residuals {
    double formula;
    double gajd;
  };
  auto results = run_trials<Residuals>(cfg.trials, exec, [&](std::size_t i) {
    const auto rel = mpj_map(random_positive(g.universe_ptr(), g.scheme(), mix_seed(cfg.seed, i)), g);
    MarginalCache cache(rel);
    const CompiledExpression eq(formula, cache, [](const Variable& v) { return std::size_t{v.column}; });
    std::vector<std::uint32_t> values(g.universe().size(), 0);
    double worst = 0.0;
    for (const Entry& e : rel.entries()) {
      for (std::size_t a : g.scheme().members()) values[a] = g.universe().digit(e.code, a);
      const Evaluation ev = eq(values);
      worst = std::max(worst, ev.degenerate ? e.weight : std::abs(ev.value - e.weight));
    }
    return Residuals{worst, satisfies(rel, g, 0.0).residual};
  });
  Lemma1Report rep;
  rep.trials = cfg.trials;
  for (const Residuals& r : results) {
    rep.worst_formula_residual = std::max(rep.worst_formula_residual, r.formula);
    rep.worst_gajd_residual = std::max(rep.worst_gajd_residual, r.gajd);
  }
  rep.passed = rep.worst_formula_residual <= 1e-10 && rep.worst_gajd_residual <= 1e-12;
  return rep;
}

std::string format_report(const SoundnessReport& r) {
  const char* status = r.status == OracleStatus::Pass   ? "pass"
                       : r.status == OracleStatus::Fail ? "FAIL"
                                                        : "inconclusive";
  std::string out = "SOUNDNESS: " + std::string(status) + "\n";
  out += "trials " + std::to_string(r.trials) + " converged " + std::to_string(r.converged) +
         " passed " + std::to_string(r.passed) + " failed " + std::to_string(r.failed) +
         " worst-target-residual " + sci(r.worst_target_residual) + "\n";
  if (r.first_failure) out += "failing distribution:\n" + r.first_failure->to_text();
  return out;
}

std::string format_report(const CounterexampleSearch& r) {
  std::string out = std::string("COUNTEREXAMPLE: ") + (r.found ? "found" : "not found (inconclusive)") + "\n";
  out += "trials " + std::to_string(r.trials) + " converged " + std::to_string(r.converged) + "\n";
  if (r.found) {
    out += "trial " + std::to_string(r.found->trial) + " target-residual " + sci(r.found->target_residual);
    for (double c : r.found->constraint_residuals) out += " constraint-residual " + sci(c);
    out += "\n" + r.found->distribution.to_text();
  }
  return out;
}

}  // namespace gajd
