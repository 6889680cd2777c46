// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gajd/attributes.hpp"
#include "gajd/execution.hpp"

namespace gajd {

struct CensusBounds {
  std::size_t max_edges = 0;
  std::size_t max_attributes = 0;
};

/// Visits hypergraphs with 1..max_edges distinct nonempty edges over at most
/// max_attributes attributes. Every isomorphism class (attribute renaming and
/// edge relabelling) is visited at least once; some classes are visited more
/// than once. Attributes are positions 0..max_attributes-1; unused ones have
/// the lowest positions.
///
/// Enumeration works on the incidence matrix: a hypergraph with N edges is a
/// multiset of max_attributes column vectors in {0,1}^N, generated as a
/// nondecreasing sequence, with edge sizes required to be nonincreasing.
void for_each_hypergraph(CensusBounds bounds,
                         const std::function<void(std::span<const AttrSet>)>& visit);

/// One representative per isomorphism class of hypertrees within the bounds,
/// in a deterministic order.
std::vector<std::vector<AttrSet>> hypertree_classes(CensusBounds bounds);

struct InteractionCensus {
  std::uint64_t hypergraphs = 0;
  std::uint64_t hypertrees = 0;
  /// Hypertrees where two certificates gave different interaction sets, or
  /// where the two greedy strategies disagreed on recognition.
  std::uint64_t disagreements = 0;
  std::optional<std::vector<AttrSet>> first_disagreement;

  bool operator==(const InteractionCensus&) const = default;
};

/// For every visited hypergraph: recognise it with both greedy strategies,
/// and for hypertrees compare the interaction sets (as multisets) of the
/// largest-index, smallest-index and a randomized certificate.
InteractionCensus interaction_census(CensusBounds bounds, std::uint64_t seed,
                                     Execution exec = Execution::Parallel);

}  // namespace gajd
