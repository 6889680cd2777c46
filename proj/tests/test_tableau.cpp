// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <set>

#include "gajd/census.hpp"
#include "gajd/error.hpp"
#include "gajd/oracle.hpp"
#include "gajd/tableau.hpp"
#include "support/brute.hpp"

using namespace gajd;
using brute::attrs;

namespace {

Variable a(std::size_t i) { return Variable::distinguished(i - 1); }
Variable b(std::uint32_t k, std::size_t column) { return Variable::nondistinguished(k, column - 1); }

UniversePtr four() { return Universe::make({"A1", "A2", "A3", "A4"}); }

std::vector<std::vector<Variable>> patterns(const Tableau& t) {
  std::vector<std::vector<Variable>> out;
  for (const Row& r : t.rows()) out.push_back(r.cells);
  return out;
}

// Every b occurs in one row only, each row has a_j exactly on its edge.
void check_construction(const Gajd& g, const Tableau& t) {
  REQUIRE(t.size() == g.size());
  const auto edges = g.ordered_edges();
  const auto columns = g.scheme().members();
  std::set<Variable> seen;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Row& r = t.row(i);
    for (std::size_t k = 0; k < columns.size(); ++k) {
      CHECK(r.cells[k].column == columns[k]);
      CHECK(r.cells[k].is_distinguished() == edges[i].contains(columns[k]));
      if (!r.cells[k].is_distinguished()) CHECK(seen.insert(r.cells[k]).second);
    }
    CHECK(r.weight_expr == RationalExpression::atom(MarginalAtom::from_cells(r.cells, g.scheme())));
  }
  CHECK_NOTHROW(t.validate());
}

}  // namespace

TEST_CASE("build_tr for the chain A1A2, A2A3, A3A4") {
  const auto u = four();
  const Gajd g = Gajd::from_edges(u, {attrs({1, 2}), attrs({2, 3}), attrs({3, 4})});
  const Tableau t = build_tr(g);
  check_construction(g, t);
  CHECK(patterns(t) == std::vector<std::vector<Variable>>{{a(1), a(2), b(1, 3), b(2, 4)},
                                                          {b(3, 1), a(2), a(3), b(4, 4)},
                                                          {b(5, 1), b(6, 2), a(3), a(4)}});
  CHECK(t.to_figure() ==
        "A1  A2  A3  A4  | f\n"
        "a1  a2  b1  b2  | phi(a1,a2,b1,b2)\n"
        "b3  a2  a3  b4  | phi(b3,a2,a3,b4)\n"
        "b5  b6  a3  a4  | phi(b5,b6,a3,a4)\n");
  CHECK(t.mapping().to_string() == "phi(a1,a2)*phi(a2,a3)*phi(a3,a4)/(phi(a2)*phi(a3))");
  CHECK(t.fresh_counter() == 7);
  CHECK_FALSE(t.find_distinguished().has_value());
}

TEST_CASE("build_tr for a single edge is the identity tableau") {
  const auto u = four();
  const Tableau t = build_tr(Gajd::from_edges(u, {u->all()}));
  const Tableau id = Tableau::identity(u, u->all());
  CHECK(t.rows() == id.rows());
  CHECK(t.mapping() == id.mapping());
  CHECK(t.find_distinguished() == 0);
}

TEST_CASE("build_tr for A1A2, A2A3A4") {
  const auto u = four();
  const Gajd g = Gajd::from_edges(u, {attrs({1, 2}), attrs({2, 3, 4})});
  const Tableau t = build_tr(g);
  check_construction(g, t);
  CHECK(patterns(t) ==
        std::vector<std::vector<Variable>>{{a(1), a(2), b(1, 3), b(2, 4)}, {b(3, 1), a(2), a(3), a(4)}});
}

TEST_CASE("build_tr invariants over the census") {
  const auto u = Universe::make({"A1", "A2", "A3", "A4", "A5"});
  for (const auto& edges : hypertree_classes({4, 5})) {
    const Gajd g = Gajd::from_edges(u, edges);
    check_construction(g, build_tr(g));
  }
}

TEST_CASE("tableau rejects malformed rows") {
  const auto u = four();
  Tableau t(u, attrs({1, 2}));
  CHECK_THROWS_AS(t.add_row({{a(1)}, {}}), UsageError);
  CHECK_THROWS_AS(t.add_row({{a(2), a(1)}, {}}), UsageError);
  CHECK_THROWS_AS(t.add_row({{Variable{Variable::Kind::Distinguished, 2, 0}, a(2)}, {}}), UsageError);
  t.add_row({{a(1), b(1, 2)}, {}});
  CHECK_THROWS_AS(t.add_row({{a(1), b(1, 2)}, {}}), UsageError);
  CHECK_THROWS_AS(t.add_row({{b(1, 1), a(2)}, {}}), UsageError);
  CHECK(t.fresh(0) == b(2, 1));
  CHECK(t.fresh(1) == b(3, 2));
  CHECK_THROWS_AS(t.fresh(3), UsageError);
  CHECK_THROWS_AS(t.validate(), UsageError);
  CHECK_THROWS_AS(t.set_mapping(RationalExpression::atom(MarginalAtom(attrs({2}), {b(1, 2)}))), UsageError);
  CHECK_THROWS_AS(Tableau(u, AttrSet{}), SchemeError);
}

TEST_CASE("run of the identity tableau is the identity") {
  const auto u = Universe::make({"A1", "A2", "A3"}, {2, 3, 2});
  const auto rel = random_positive(u, u->all(), 5);
  CHECK(max_abs_difference(run(Tableau::identity(u, u->all()), rel), rel) <= 1e-15);
  // Sparse input: the identity keeps exactly the present tuples.
  const WeightedRelation sparse(u, u->all(), {{0, 0.25}, {3, 0.75}});
  CHECK(run(Tableau::identity(u, u->all()), sparse) == sparse);
}

TEST_CASE("run drops tuples with no valuation") {
  const auto u = Universe::make({"A", "B", "C"});
  const Gajd g = Gajd::from_edges(u, {attrs({1, 2}), attrs({2, 3})});
  // Only b=0 with a=0 and b=1 with c=1: (a=0, b=0, c=*) needs a row with b=0 over BC.
  const WeightedRelation rel(u, u->all(), {{0, 0.5}, {6, 0.5}});
  const auto out = run(build_tr(g), rel);
  CHECK(out.size() == 2);
  CHECK(out.weight(1) == 0.0);
  CHECK(max_abs_difference(out, mpj_map(rel, g)) <= 1e-15);
}

TEST_CASE("run agrees with mpj_map and the naive reference") {
  std::size_t cases = 0;
  for (std::size_t attrs_n : {3, 4}) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= attrs_n; ++i) names.push_back("A" + std::to_string(i));
    const auto u = Universe::make(names);
    for (const auto& edges : hypertree_classes({3, attrs_n})) {
      const Gajd g = Gajd::from_edges(u, edges);
      const Tableau t = build_tr(g);
      for (std::uint64_t s = 0; s < 5; ++s) {
        const auto rel = random_positive(u, g.scheme(), mix_seed(cases, s));
        const auto parallel = run(t, rel, Execution::Parallel);
        const auto serial = run(t, rel, Execution::Serial);
        CHECK(parallel == serial);
        CHECK(max_abs_difference(parallel, mpj_map(rel, g)) <= 1e-12);
        CHECK(max_abs_difference(run_reference(t, rel), serial) == 0.0);
      }
      ++cases;
    }
  }
  CHECK(cases > 10);
}

TEST_CASE("run with non-binary domains and sparse input") {
  const auto u = Universe::make({"A1", "A2", "A3", "A4"}, {3, 2, 3, 2});
  const Gajd g = Gajd::from_edges(u, {attrs({1, 2}), attrs({2, 3}), attrs({3, 4})});
  std::mt19937_64 rng(3);
  std::bernoulli_distribution keep(0.6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto dense = random_positive(u, u->all(), static_cast<std::uint64_t>(trial));
    std::vector<Entry> es;
    for (const auto& e : dense.entries()) {
      if (keep(rng)) es.push_back(e);
    }
    const WeightedRelation rel(u, u->all(), es);
    const auto out = run(build_tr(g), rel);
    CHECK(max_abs_difference(out, run_reference(build_tr(g), rel)) == 0.0);
    CHECK(max_abs_difference(out, mpj_map(rel, g)) <= 1e-12);
  }
}

TEST_CASE("run checks schemes") {
  const auto u = four();
  const Tableau t = build_tr(Gajd::from_edges(u, {attrs({1, 2}), attrs({2, 3})}));
  CHECK_THROWS_AS(run(t, random_positive(u, u->all(), 1)), SchemeError);
  CHECK_THROWS_AS(run_reference(t, random_positive(u, u->all(), 1)), SchemeError);
}
