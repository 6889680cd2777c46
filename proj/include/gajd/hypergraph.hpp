// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "gajd/attributes.hpp"

namespace gajd {

/// A hypergraph: nonempty, pairwise distinct edges kept in input order.
/// The node set is the union of the edges.
class Hypergraph {
 public:
  /// Throws UsageError on an empty edge list, an empty edge or a duplicate edge.
  explicit Hypergraph(std::vector<AttrSet> edges);

  std::size_t size() const noexcept { return edges_.size(); }
  const std::vector<AttrSet>& edges() const noexcept { return edges_; }
  AttrSet edge(std::size_t i) const { return edges_.at(i); }
  AttrSet nodes() const noexcept { return nodes_; }

  bool operator==(const Hypergraph&) const = default;

 private:
  std::vector<AttrSet> edges_;
  AttrSet nodes_;
};

/// Result of a twig test. `branch` is the smallest qualifying edge index; it
/// is empty when the candidate is the sole edge of `within`.
struct TwigTest {
  bool twig = false;
  std::optional<std::size_t> branch;
};

/// R_c is a twig of `within` when some other R_j in `within` satisfies
/// (union of within - {R_c}) & R_c == R_j & R_c.
/// Throws UsageError if `candidate` is not listed in `within`.
TwigTest is_twig(const Hypergraph& h, std::size_t candidate, std::span<const std::size_t> within);

/// A tree construction ordering together with its branching.
///
/// Positions are 0-based: ordering[p] is the edge placed at position p and,
/// for p >= 1, branch_position(p) < p is the position of its branch. The
/// textbook 1-based j(i) equals branch_position(i - 1) + 1.
struct HypertreeCertificate {
  std::vector<std::size_t> ordering;
  /// branching[p - 1] is the branch position of position p.
  std::vector<std::size_t> branching;

  std::size_t branch_position(std::size_t p) const { return branching.at(p - 1); }
  bool operator==(const HypertreeCertificate&) const = default;
};

struct NotHypertree {
  /// Edge indices left when reduction got stuck; none of them is a twig of
  /// the set.
  std::vector<std::size_t> witness;
};

enum class TwigChoice {
  /// Remove the largest-index twig first. Keeps the input order whenever the
  /// input order is itself a construction ordering.
  LargestIndex,
  SmallestIndex,
};

/// Greedy twig removal; the edge left last is placed first.
std::variant<HypertreeCertificate, NotHypertree> find_certificate(
    const Hypergraph& h, TwigChoice choice = TwigChoice::LargestIndex);

/// Same reduction, but the twig removed at each step and its branch are
/// drawn uniformly at random. Used to obtain independent certificates.
std::variant<HypertreeCertificate, NotHypertree> random_certificate(const Hypergraph& h,
                                                                    std::mt19937_64& rng);

bool is_valid_certificate(const Hypergraph& h, const HypertreeCertificate& cert);

/// Builds a certificate for a given ordering (smallest-index branch at each
/// position) or returns nothing if the ordering is not a construction ordering.
std::optional<HypertreeCertificate> certificate_for_ordering(const Hypergraph& h,
                                                             std::vector<std::size_t> ordering);

/// branch & twig for positions 1..N-1, in position order.
/// Throws UsageError if `cert` is not valid for `h`.
std::vector<AttrSet> interaction_set(const HypertreeCertificate& cert, const Hypergraph& h);

/// Exhaustive ordering search; only meant for small hypergraphs (tests and
/// the census cross-check).
std::optional<HypertreeCertificate> find_certificate_exhaustive(const Hypergraph& h);

/// Interaction set in canonical (lexicographic) order, for comparisons that
/// ignore the ordering.
std::vector<AttrSet> sorted_interaction_set(const HypertreeCertificate& cert, const Hypergraph& h);

}  // namespace gajd
