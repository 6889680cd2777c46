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
#include "gajd/execution.hpp"
#include "gajd/relation.hpp"

namespace gajd {

/// Cells allowed in a random distribution.
inline constexpr std::uint64_t kMaxOracleCells = 4096;

struct OracleConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 50;
  std::size_t ipf_sweeps = 200;
  double sat_tol = 1e-10;
  double check_tol = 1e-8;

  /// Throws UsageError unless trials >= 1 and 0 < sat_tol < check_tol.
  void validate() const;
};

/// Uniform i.i.d. weights, normalised, then mixed with the uniform
/// distribution at ratio 1e-4. Throws DomainTooLarge past kMaxOracleCells.
WeightedRelation random_positive(UniversePtr universe, AttrSet scheme, std::uint64_t seed);

struct Projection {
  WeightedRelation rel;
  /// satisfies() residual of each constraint after the last sweep.
  std::vector<double> residuals;

  bool converged(double tol) const;
};

/// `sweeps` rounds of mpj_map through every constraint in turn; stops early
/// once a round leaves the relation bit-for-bit unchanged. Throws UsageError
/// if `rel` is not strictly positive or positivity is lost.
Projection project_onto(const WeightedRelation& rel, std::span<const Gajd> constraints,
                        std::size_t sweeps);

enum class OracleStatus { Pass, Fail, Inconclusive };

struct SoundnessReport {
  std::size_t trials = 0;
  std::size_t converged = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  double worst_target_residual = 0.0;
  OracleStatus status = OracleStatus::Inconclusive;
  /// Lowest-index converged trial whose target residual exceeded check_tol.
  std::optional<WeightedRelation> first_failure;
};

/// Draws `trials` distributions, projects each onto the constraints, keeps
/// those with every residual <= sat_tol and requires the target residual to
/// stay <= check_tol. Fail if any kept trial violates the target;
/// Inconclusive if fewer than half the trials converge.
SoundnessReport check_soundness(std::span<const Gajd> constraints, const Gajd& target,
                                const OracleConfig& cfg, Execution exec = Execution::Parallel);

struct Counterexample {
  std::size_t trial = 0;
  WeightedRelation distribution;
  std::vector<double> constraint_residuals;
  double target_residual = 0.0;
};

struct CounterexampleSearch {
  std::size_t trials = 0;
  std::size_t converged = 0;
  /// Lowest-index trial satisfying the constraints but not the target.
  /// Absent means inconclusive, not a proof.
  std::optional<Counterexample> found;
};

CounterexampleSearch search_counterexample(std::span<const Gajd> constraints, const Gajd& target,
                                           const OracleConfig& cfg,
                                           Execution exec = Execution::Parallel);

struct Lemma1Report {
  std::size_t trials = 0;
  /// max |rel - product of edge marginals / product of interaction marginals|.
  double worst_formula_residual = 0.0;
  /// max satisfies() residual of rel against g.
  double worst_gajd_residual = 0.0;
  bool passed = false;
};

/// For each trial rel = mpj_map(random_positive, g); rel must match the
/// explicit marginal quotient within 1e-10 and satisfy g within 1e-12.
Lemma1Report check_lemma1(const Gajd& g, const OracleConfig& cfg, Execution exec = Execution::Parallel);

std::string format_report(const SoundnessReport& r);
std::string format_report(const CounterexampleSearch& r);

}  // namespace gajd
