// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "gajd/census.hpp"
#include "gajd/error.hpp"
#include "gajd/oracle.hpp"
#include "gajd/symbolic.hpp"
#include "support/brute.hpp"

using namespace gajd;
using brute::attrs;

namespace {

UniversePtr four() { return Universe::make({"A1", "A2", "A3", "A4"}); }
Gajd chain(const UniversePtr& u) { return Gajd::from_edges(u, {attrs({1, 2}), attrs({2, 3}), attrs({3, 4})}); }
Gajd c1(const UniversePtr& u) { return Gajd::from_edges(u, {attrs({1, 2}), attrs({2, 3, 4})}); }
Gajd c2(const UniversePtr& u) { return Gajd::from_edges(u, {attrs({1, 2, 3}), attrs({3, 4})}); }

bool same(const SoundnessReport& a, const SoundnessReport& b) {
  return a.trials == b.trials && a.converged == b.converged && a.passed == b.passed && a.failed == b.failed &&
         a.worst_target_residual == b.worst_target_residual && a.status == b.status &&
         a.first_failure == b.first_failure;
}

}  // namespace

TEST_CASE("random_positive") {
  const auto u = Universe::make({"A", "B"});
  const auto r = random_positive(u, u->all(), 17);
  CHECK(r.size() == 4);
  CHECK(std::abs(r.total() - 1.0) <= 1e-15);
  CHECK(r.strictly_positive());
  CHECK(random_positive(u, u->all(), 17) == r);
  CHECK_FALSE(random_positive(u, u->all(), 18) == r);
  const auto v = Universe::make({"A", "B", "C"}, {8, 8, 8});
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto big = random_positive(v, v->all(), s);
    for (const auto& e : big.entries()) CHECK(e.weight >= 1e-4 / 512.0);
  }
  const auto w = Universe::make({"A", "B", "C"}, {16, 16, 17});
  CHECK_THROWS_AS(random_positive(w, w->all(), 0), DomainTooLarge);
}

TEST_CASE("config validation") {
  OracleConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg = {};
  cfg.sat_tol = 1e-6;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg = {};
  cfg.sat_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
}

TEST_CASE("project_onto") {
  const auto u = Universe::make({"A", "B", "C"});
  const auto rel = random_positive(u, u->all(), 3);
  SUBCASE("single edge leaves the relation alone") {
    const std::vector<Gajd> cs{Gajd::from_edges(u, {u->all()})};
    const auto p = project_onto(rel, cs, 200);
    CHECK(p.rel == rel);
    CHECK(p.residuals == std::vector<double>{0.0});
  }
  SUBCASE("one sweep suffices for a single constraint") {
    const std::vector<Gajd> cs{Gajd::from_edges(u, {attrs({1, 2}), attrs({2, 3})})};
    const auto p = project_onto(rel, cs, 1);
    CHECK(p.residuals[0] <= 1e-12);
  }
  SUBCASE("no constraints") {
    const auto p = project_onto(rel, std::vector<Gajd>{}, 5);
    CHECK(p.rel == rel);
    CHECK(p.residuals.empty());
    CHECK(p.converged(0.0));
  }
  SUBCASE("zero weights are rejected") {
    const WeightedRelation sparse(u, u->all(), {{0, 1.0}});
    CHECK_THROWS_AS(project_onto(sparse, std::vector<Gajd>{Gajd::from_edges(u, {u->all()})}, 1), UsageError);
  }
}

TEST_CASE("project_onto converges on the two chain constraints") {
  const auto u = four();
  const std::vector<Gajd> cs{c1(u), c2(u)};
  std::size_t converged = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto p = project_onto(random_positive(u, u->all(), mix_seed(0, s)), cs, 200);
    CHECK(p.rel.strictly_positive());
    CHECK(std::abs(p.rel.total() - 1.0) <= 1e-12);
    converged += p.converged(1e-10) ? 1 : 0;
  }
  CHECK(converged >= 95);
}

TEST_CASE("check_soundness") {
  const auto u = four();
  OracleConfig cfg;
  SUBCASE("both chain constraints imply the chain") {
    const std::vector<Gajd> cs{c1(u), c2(u)};
    const auto r = check_soundness(cs, chain(u), cfg);
    CHECK(r.status == OracleStatus::Pass);
    CHECK(r.failed == 0);
    CHECK(r.converged >= 45);
    CHECK(r.passed == r.converged);
    CHECK(r.worst_target_residual <= 1e-8);
    CHECK(format_report(r).rfind("SOUNDNESS: pass\n", 0) == 0);
  }
  SUBCASE("a target among the constraints") {
    const std::vector<Gajd> cs{chain(u)};
    CHECK(check_soundness(cs, chain(u), cfg).status == OracleStatus::Pass);
  }
  SUBCASE("single edge target") {
    const auto v = Universe::make({"A", "B"});
    const std::vector<Gajd> cs{Gajd::from_edges(v, {attrs({1}), attrs({2})})};
    const auto r = check_soundness(cs, Gajd::from_edges(v, {v->all()}), cfg);
    CHECK(r.status == OracleStatus::Pass);
    CHECK(r.worst_target_residual == 0.0);
  }
  SUBCASE("a false implication is caught") {
    const std::vector<Gajd> cs{c1(u)};
    const auto r = check_soundness(cs, chain(u), cfg);
    CHECK(r.status == OracleStatus::Fail);
    REQUIRE(r.first_failure.has_value());
    CHECK(format_report(r).find("failing distribution:\nA1 A2 A3 A4 f\n") != std::string::npos);
  }
  SUBCASE("scheme mismatch") {
    const auto v = Universe::make({"A1", "A2", "A3"});
    const std::vector<Gajd> cs{Gajd::from_edges(v, {attrs({1, 2}), attrs({2, 3})})};
    CHECK_THROWS_AS(check_soundness(cs, chain(u), cfg), SchemeError);
  }
}

TEST_CASE("search_counterexample") {
  const auto u = four();
  OracleConfig cfg;
  cfg.trials = 100;
  SUBCASE("C1 does not imply the chain") {
    const std::vector<Gajd> cs{c1(u)};
    const auto r = search_counterexample(cs, chain(u), cfg);
    REQUIRE(r.found.has_value());
    for (double c : r.found->constraint_residuals) CHECK(c <= cfg.sat_tol);
    CHECK(r.found->target_residual > cfg.check_tol);
    // Independent recheck of the witness.
    CHECK(satisfies(r.found->distribution, c1(u), 1e-10).holds);
    CHECK_FALSE(satisfies(r.found->distribution, chain(u), 1e-8).holds);
    CHECK(format_report(r).rfind("COUNTEREXAMPLE: found\n", 0) == 0);
  }
  SUBCASE("target among the constraints") {
    const std::vector<Gajd> cs{c1(u), chain(u)};
    const auto r = search_counterexample(cs, chain(u), cfg);
    CHECK_FALSE(r.found.has_value());
    CHECK(format_report(r).rfind("COUNTEREXAMPLE: not found (inconclusive)\n", 0) == 0);
  }
  SUBCASE("no constraints against a conditional independence") {
    const auto v = Universe::make({"A", "B", "C"});
    const auto r = search_counterexample(std::vector<Gajd>{}, Gajd::from_edges(v, {attrs({1, 2}), attrs({2, 3})}), cfg);
    REQUIRE(r.found.has_value());
    CHECK(r.found->trial < 10);
  }
}

TEST_CASE("determinism and serial/parallel agreement") {
  const auto u = four();
  const std::vector<Gajd> cs{c1(u)};
  OracleConfig cfg;
  cfg.seed = 1234;
  cfg.trials = 20;
  const auto a = check_soundness(cs, chain(u), cfg, Execution::Parallel);
  CHECK(same(a, check_soundness(cs, chain(u), cfg, Execution::Parallel)));
  CHECK(same(a, check_soundness(cs, chain(u), cfg, Execution::Serial)));
  const auto x = search_counterexample(cs, chain(u), cfg, Execution::Parallel);
  const auto y = search_counterexample(cs, chain(u), cfg, Execution::Serial);
  REQUIRE(x.found.has_value());
  REQUIRE(y.found.has_value());
  CHECK(x.found->trial == y.found->trial);
  CHECK(x.found->distribution == y.found->distribution);
  CHECK(format_report(x) == format_report(y));
  const auto l1 = check_lemma1(chain(u), cfg, Execution::Parallel);
  const auto l2 = check_lemma1(chain(u), cfg, Execution::Serial);
  CHECK(l1.worst_formula_residual == l2.worst_formula_residual);
  CHECK(l1.worst_gajd_residual == l2.worst_gajd_residual);
}

TEST_CASE("check_lemma1 examples") {
  OracleConfig cfg;
  cfg.trials = 20;
  const auto v = Universe::make({"A", "B", "C"});
  CHECK(check_lemma1(Gajd::from_edges(v, {attrs({1, 2}), attrs({2, 3})}), cfg).passed);
  CHECK(check_lemma1(Gajd::from_edges(v, {v->all()}), cfg).worst_formula_residual == 0.0);

  const auto u = Universe::make({"A1", "A2", "A3", "A4", "A5", "A6"});
  const std::vector<AttrSet> cliques{attrs({1, 2, 3}), attrs({1, 2, 4}), attrs({2, 3, 5}), attrs({5, 6})};
  const Gajd g = Gajd::from_edges(u, cliques);
  CHECK(decomposition_expression(g).to_string() ==
        "phi(a1,a2,a3)*phi(a1,a2,a4)*phi(a2,a3,a5)*phi(a5,a6)/(phi(a1,a2)*phi(a2,a3)*phi(a5))");
  const auto rep = check_lemma1(g, cfg);
  CHECK(rep.passed);
  CHECK(rep.worst_formula_residual <= 1e-10);
  CHECK(rep.worst_gajd_residual <= 1e-12);
  // The same quotient, computed by brute force from the relation's marginals.
  const auto rel = mpj_map(random_positive(u, u->all(), 5), g);
  const std::vector<std::uint64_t> l{attrs({1, 2}).bits(), attrs({2, 3}).bits(), attrs({5}).bits()};
  for (const auto& e : rel.entries()) {
    CHECK(std::abs(brute::decomposition_at(rel, cliques, l, brute::digits_of(*u, e.code)) - e.weight) <= 1e-12);
  }
}

TEST_CASE("check_lemma1 over small hypertrees") {
  OracleConfig cfg;
  cfg.trials = 5;
  const auto u = Universe::make({"A1", "A2", "A3", "A4", "A5", "A6"});
  std::size_t n = 0;
  for (const auto& edges : hypertree_classes({4, 6})) {
    const auto rep = check_lemma1(Gajd::from_edges(u, edges), cfg);
    REQUIRE(rep.passed);
    ++n;
  }
  CHECK(n > 100);
}
