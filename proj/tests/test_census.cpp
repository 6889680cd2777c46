// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "gajd/census.hpp"
#include "gajd/hypergraph.hpp"
#include "support/brute.hpp"

using namespace gajd;

namespace {

using Canon = std::vector<std::uint64_t>;

// Smallest sorted edge list over all attribute renamings.
Canon canonical(std::span<const AttrSet> edges, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Canon best;
  do {
    Canon c;
    for (AttrSet e : edges) {
      std::uint64_t bits = 0;
      for (std::size_t a : e.members()) bits |= std::uint64_t{1} << perm[a];
      c.push_back(bits);
    }
    std::sort(c.begin(), c.end());
    if (best.empty() || c < best) best = c;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Isomorphism classes of all labelled hypergraphs with up to `max_edges`
// distinct nonempty edges over n attributes.
std::set<Canon> all_classes(std::size_t max_edges, std::size_t n, bool trees_only) {
  std::set<Canon> out;
  const std::uint64_t subsets = (std::uint64_t{1} << n) - 1;
  std::vector<AttrSet> edges;
  auto rec = [&](auto&& self, std::uint64_t from) -> void {
    if (!edges.empty() && (!trees_only || brute::gyo_acyclic(edges))) out.insert(canonical(edges, n));
    if (edges.size() == max_edges) return;
    for (std::uint64_t s = from; s <= subsets; ++s) {
      edges.push_back(AttrSet::from_bits(s));
      self(self, s + 1);
      edges.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

}  // namespace

TEST_CASE("for_each_hypergraph visits every isomorphism class") {
  for (auto [e, n] : {std::pair<std::size_t, std::size_t>{3, 4}, {4, 4}, {3, 5}}) {
    std::set<Canon> seen;
    std::size_t visits = 0;
    for_each_hypergraph({e, n}, [&](std::span<const AttrSet> es) {
      ++visits;
      std::set<std::uint64_t> distinct;
      for (AttrSet x : es) {
        CHECK_FALSE(x.empty());
        CHECK(x.subset_of(AttrSet::first_n(n)));
        distinct.insert(x.bits());
      }
      CHECK(distinct.size() == es.size());
      seen.insert(canonical(es, n));
    });
    CHECK(seen == all_classes(e, n, false));
    CHECK(visits >= seen.size());
  }
}

TEST_CASE("hypertree_classes lists each class once") {
  const auto reps = hypertree_classes({4, 4});
  std::set<Canon> seen;
  for (const auto& r : reps) {
    CHECK(brute::gyo_acyclic(r));
    CHECK(seen.insert(canonical(r, 4)).second);
  }
  CHECK(seen == all_classes(4, 4, true));
  CHECK(hypertree_classes({4, 4}) == reps);
}

TEST_CASE("interaction census finds no disagreement and is deterministic") {
  const auto serial = interaction_census({4, 5}, 3, Execution::Serial);
  const auto parallel = interaction_census({4, 5}, 3, Execution::Parallel);
  CHECK(serial == parallel);
  CHECK(serial.disagreements == 0);
  CHECK_FALSE(serial.first_disagreement.has_value());
  CHECK(serial.hypertrees > 0);
  CHECK(serial.hypertrees < serial.hypergraphs);
}
