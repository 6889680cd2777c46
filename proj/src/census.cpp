// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gajd/census.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <random>
#include <set>
#include <tuple>
#include <variant>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gajd/error.hpp"
#include "gajd/hypergraph.hpp"

namespace gajd {

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

constexpr std::size_t kMaxCensusEdges = 6;

using Columns = std::array<std::uint32_t, kMaxAttributes>;
using Edges = std::array<AttrSet, kMaxCensusEdges>;

// Turns incidence columns into edges; false if an edge is empty, two edges
// coincide or edge sizes increase.
bool build_edges(const Columns& cols, std::size_t attrs, std::size_t n_edges, Edges& edges) {
  for (std::size_t e = 0; e < n_edges; ++e) {
    std::uint64_t mask = 0;
    for (std::size_t a = 0; a < attrs; ++a) {
      if ((cols[a] >> e) & 1U) mask |= std::uint64_t{1} << a;
    }
    if (mask == 0) return false;
    edges[e] = AttrSet::from_bits(mask);
    if (e > 0 && edges[e].size() > edges[e - 1].size()) return false;
    for (std::size_t o = 0; o < e; ++o) {
      if (edges[o] == edges[e]) return false;
    }
  }
  return true;
}

template <class F>
void enumerate_tail(Columns& cols, std::size_t pos, std::size_t attrs, std::uint32_t lo,
                    std::uint32_t limit, F& f) {
  if (pos == attrs) {
    f(cols);
    return;
  }
  for (std::uint32_t v = lo; v < limit; ++v) {
    cols[pos] = v;
    enumerate_tail(cols, pos + 1, attrs, v, limit, f);
  }
}

void check_bounds(CensusBounds bounds) {
  if (bounds.max_edges == 0 || bounds.max_edges > kMaxCensusEdges) {
    throw UsageError("census supports 1..6 edges");
  }
  if (bounds.max_attributes == 0 || bounds.max_attributes > 16) {
    throw UsageError("census supports 1..16 attributes");
  }
}

// Prefix (first two columns) work items for one edge count.
std::vector<std::pair<std::uint32_t, std::uint32_t>> prefixes(std::uint32_t limit) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t a = 0; a < limit; ++a) {
    for (std::uint32_t b = a; b < limit; ++b) out.emplace_back(a, b);
  }
  return out;
}

template <class F>
void visit_prefix(std::size_t attrs, std::size_t n_edges, std::uint32_t limit,
                  std::pair<std::uint32_t, std::uint32_t> prefix, F& f) {
  Columns cols{};
  cols[0] = prefix.first;
  cols[1] = prefix.second;
  auto on_cols = [&](const Columns& c) {
    Edges edges{};
    if (build_edges(c, attrs, n_edges, edges)) f(std::span<const AttrSet>(edges.data(), n_edges));
  };
  enumerate_tail(cols, 2, attrs, prefix.second, limit, on_cols);
}

template <class F>
void visit_prefix_edges(std::size_t attrs, std::size_t n_edges, std::uint32_t limit,
                        std::pair<std::uint32_t, std::uint32_t> prefix, F& f) {
  if (attrs == 1) {
    if (prefix.first != prefix.second) return;
    Columns cols{};
    cols[0] = prefix.first;
    Edges edges{};
    if (build_edges(cols, attrs, n_edges, edges)) f(std::span<const AttrSet>(edges.data(), n_edges));
    return;
  }
  visit_prefix(attrs, n_edges, limit, prefix, f);
}

std::uint64_t edges_hash(std::span<const AttrSet> edges) {
  std::uint64_t h = edges.size();
  for (AttrSet e : edges) h = mix_seed(h, e.bits());
  return h;
}

struct Tally {
  InteractionCensus census;
  // Position of first_disagreement in the serial visiting order.
  std::tuple<std::size_t, std::size_t, std::uint64_t> first_key{~std::size_t{0}, 0, 0};
  std::uint64_t local_index = 0;
};

void check_one(std::span<const AttrSet> edges, std::uint64_t seed, Tally& tally,
               std::size_t n_edges, std::size_t prefix_index) {
  ++tally.census.hypergraphs;
  const std::uint64_t index = tally.local_index++;
  const Hypergraph h(std::vector<AttrSet>(edges.begin(), edges.end()));
  const auto largest = find_certificate(h, TwigChoice::LargestIndex);
  const auto smallest = find_certificate(h, TwigChoice::SmallestIndex);
  bool disagree = largest.index() != smallest.index();
  if (const auto* cert = std::get_if<HypertreeCertificate>(&largest)) {
    ++tally.census.hypertrees;
    const auto reference = sorted_interaction_set(*cert, h);
    if (const auto* other = std::get_if<HypertreeCertificate>(&smallest)) {
      disagree = disagree || sorted_interaction_set(*other, h) != reference;
    }
    std::mt19937_64 rng(mix_seed(seed, edges_hash(edges)));
    const auto random = random_certificate(h, rng);
    if (const auto* other = std::get_if<HypertreeCertificate>(&random)) {
      disagree = disagree || !is_valid_certificate(h, *other) ||
                 sorted_interaction_set(*other, h) != reference;
    } else {
      disagree = true;
    }
  }
  if (disagree) {
    ++tally.census.disagreements;
    const auto key = std::tuple{n_edges, prefix_index, index};
    if (key < tally.first_key) {
      tally.first_key = key;
      tally.census.first_disagreement = std::vector<AttrSet>(edges.begin(), edges.end());
    }
  }
}

void merge(Tally& into, const Tally& from) {
  into.census.hypergraphs += from.census.hypergraphs;
  into.census.hypertrees += from.census.hypertrees;
  into.census.disagreements += from.census.disagreements;
  if (from.census.first_disagreement && from.first_key < into.first_key) {
    into.first_key = from.first_key;
    into.census.first_disagreement = from.census.first_disagreement;
  }
}

}  // namespace

void for_each_hypergraph(CensusBounds bounds,
                         const std::function<void(std::span<const AttrSet>)>& visit) {
  check_bounds(bounds);
  for (std::size_t n = 1; n <= bounds.max_edges; ++n) {
    const auto limit = static_cast<std::uint32_t>(1U << n);
    for (const auto& prefix : prefixes(limit)) {
      visit_prefix_edges(bounds.max_attributes, n, limit, prefix, visit);
    }
  }
}

std::vector<std::vector<AttrSet>> hypertree_classes(CensusBounds bounds) {
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<std::vector<AttrSet>> out;
  const std::size_t attrs = bounds.max_attributes;
  for_each_hypergraph(bounds, [&](std::span<const AttrSet> edges) {
    const Hypergraph h(std::vector<AttrSet>(edges.begin(), edges.end()));
    if (!std::holds_alternative<HypertreeCertificate>(find_certificate(h))) return;
    // Canonical key: minimum over edge permutations of the sorted columns.
    std::vector<std::size_t> perm(edges.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint32_t> best;
    do {
      std::vector<std::uint32_t> cols(attrs, 0);
      for (std::size_t e = 0; e < perm.size(); ++e) {
        for (std::size_t a = 0; a < attrs; ++a) {
          if (edges[perm[e]].contains(a)) cols[a] |= 1U << e;
        }
      }
      std::sort(cols.begin(), cols.end());
      cols.push_back(static_cast<std::uint32_t>(edges.size()));
      if (best.empty() || cols < best) best = std::move(cols);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(best).second) out.emplace_back(edges.begin(), edges.end());
  });
  return out;
}

InteractionCensus interaction_census(CensusBounds bounds, std::uint64_t seed, Execution exec) {
  check_bounds(bounds);
  Tally total;
  for (std::size_t n = 1; n <= bounds.max_edges; ++n) {
    const auto limit = static_cast<std::uint32_t>(1U << n);
    const auto items = prefixes(limit);
    const auto count = static_cast<std::int64_t>(items.size());
    if (exec == Execution::Serial) {
      for (std::int64_t i = 0; i < count; ++i) {
        Tally local;
        auto f = [&](std::span<const AttrSet> edges) {
          check_one(edges, seed, local, n, static_cast<std::size_t>(i));
        };
        visit_prefix_edges(bounds.max_attributes, n, limit, items[static_cast<std::size_t>(i)], f);
        merge(total, local);
      }
      continue;
    }
#pragma omp parallel
    {
      Tally thread_total;
#pragma omp for schedule(dynamic, 1) nowait
      for (std::int64_t i = 0; i < count; ++i) {
        Tally local;
        auto f = [&](std::span<const AttrSet> edges) {
          check_one(edges, seed, local, n, static_cast<std::size_t>(i));
        };
        visit_prefix_edges(bounds.max_attributes, n, limit, items[static_cast<std::size_t>(i)], f);
        merge(thread_total, local);
      }
#pragma omp critical(gajd_census_merge)
      merge(total, thread_total);
    }
  }
  return total.census;
}

}  // namespace gajd
