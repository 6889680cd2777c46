// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gajd/hypergraph.hpp"

#include <algorithm>
#include <numeric>

#include "gajd/error.hpp"

namespace gajd {

Hypergraph::Hypergraph(std::vector<AttrSet> edges) : edges_(std::move(edges)) {
  if (edges_.empty()) throw UsageError("hypergraph needs at least one edge");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].empty()) throw UsageError("hypergraph edge " + std::to_string(i) + " is empty");
    for (std::size_t j = 0; j < i; ++j) {
      if (edges_[i] == edges_[j]) {
        throw UsageError("duplicate hyperedge at positions " + std::to_string(j) + " and " +
                         std::to_string(i));
      }
    }
    nodes_ |= edges_[i];
  }
}

namespace {

// Twig test on raw masks; returns the branch index into `within` order or
// npos. `within` must contain `candidate`.
constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct MaskTwig {
  bool twig;
  std::size_t branch;  // edge index or npos
};

MaskTwig twig_masks(const std::vector<AttrSet>& edges, std::size_t candidate,
                    std::span<const std::size_t> within) {
  AttrSet rest;
  for (std::size_t e : within) {
    if (e != candidate) rest |= edges[e];
  }
  if (within.size() == 1) return {true, npos};
  const AttrSet shared = rest & edges[candidate];
  std::size_t best = npos;
  for (std::size_t e : within) {
    if (e == candidate) continue;
    if ((edges[e] & edges[candidate]) == shared && e < best) best = e;
  }
  return {best != npos, best};
}

HypertreeCertificate from_removals(const std::vector<std::size_t>& removed,
                                   const std::vector<std::size_t>& branch_of_removed,
                                   std::size_t last) {
  HypertreeCertificate cert;
  cert.ordering.push_back(last);
  for (std::size_t k = removed.size(); k-- > 0;) cert.ordering.push_back(removed[k]);
  const std::size_t max_edge = *std::max_element(cert.ordering.begin(), cert.ordering.end());
  std::vector<std::size_t> pos(max_edge + 1, npos);
  for (std::size_t p = 0; p < cert.ordering.size(); ++p) pos[cert.ordering[p]] = p;
  for (std::size_t p = 1; p < cert.ordering.size(); ++p) {
    const std::size_t k = removed.size() - p;
    cert.branching.push_back(pos[branch_of_removed[k]]);
  }
  return cert;
}

template <class Pick>
std::variant<HypertreeCertificate, NotHypertree> reduce(const Hypergraph& h, Pick&& pick) {
  std::vector<std::size_t> remaining(h.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<std::size_t> removed;
  std::vector<std::size_t> branches;
  while (remaining.size() > 1) {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> twigs;
    for (std::size_t e : remaining) {
      AttrSet rest;
      for (std::size_t o : remaining) {
        if (o != e) rest |= h.edge(o);
      }
      const AttrSet shared = rest & h.edge(e);
      std::vector<std::size_t> candidates;
      for (std::size_t o : remaining) {
        if (o != e && (h.edge(o) & h.edge(e)) == shared) candidates.push_back(o);
      }
      if (!candidates.empty()) twigs.emplace_back(e, std::move(candidates));
    }
    if (twigs.empty()) return NotHypertree{remaining};
    const auto [twig, branch] = pick(twigs);
    removed.push_back(twig);
    branches.push_back(branch);
    remaining.erase(std::find(remaining.begin(), remaining.end(), twig));
  }
  return from_removals(removed, branches, remaining.front());
}

}  // namespace

TwigTest is_twig(const Hypergraph& h, std::size_t candidate, std::span<const std::size_t> within) {
  if (std::find(within.begin(), within.end(), candidate) == within.end()) {
    throw UsageError("twig candidate " + std::to_string(candidate) + " is not in the edge set");
  }
  for (std::size_t e : within) {
    if (e >= h.size()) throw UsageError("edge index " + std::to_string(e) + " out of range");
  }
  const MaskTwig t = twig_masks(h.edges(), candidate, within);
  TwigTest out;
  out.twig = t.twig;
  if (t.branch != npos) out.branch = t.branch;
  return out;
}

std::variant<HypertreeCertificate, NotHypertree> find_certificate(const Hypergraph& h,
                                                                  TwigChoice choice) {
  return reduce(h, [choice](const auto& twigs) {
    const auto& chosen = choice == TwigChoice::LargestIndex ? twigs.back() : twigs.front();
    return std::pair{chosen.first, chosen.second.front()};
  });
}

std::variant<HypertreeCertificate, NotHypertree> random_certificate(const Hypergraph& h,
                                                                    std::mt19937_64& rng) {
  return reduce(h, [&rng](const auto& twigs) {
    std::uniform_int_distribution<std::size_t> pick_twig(0, twigs.size() - 1);
    const auto& chosen = twigs[pick_twig(rng)];
    std::uniform_int_distribution<std::size_t> pick_branch(0, chosen.second.size() - 1);
    return std::pair{chosen.first, chosen.second[pick_branch(rng)]};
  });
}

bool is_valid_certificate(const Hypergraph& h, const HypertreeCertificate& cert) {
  const std::size_t n = h.size();
  if (cert.ordering.size() != n || cert.branching.size() + 1 != n) return false;
  std::vector<bool> used(n, false);
  for (std::size_t e : cert.ordering) {
    if (e >= n || used[e]) return false;
    used[e] = true;
  }
  AttrSet prefix = h.edge(cert.ordering[0]);
  for (std::size_t p = 1; p < n; ++p) {
    const std::size_t bp = cert.branching[p - 1];
    if (bp >= p) return false;
    const AttrSet twig = h.edge(cert.ordering[p]);
    const AttrSet branch = h.edge(cert.ordering[bp]);
    if ((prefix & twig) != (branch & twig)) return false;
    prefix |= twig;
  }
  return true;
}

std::optional<HypertreeCertificate> certificate_for_ordering(const Hypergraph& h,
                                                             std::vector<std::size_t> ordering) {
  HypertreeCertificate cert;
  cert.ordering = std::move(ordering);
  if (cert.ordering.size() != h.size()) return std::nullopt;
  for (std::size_t p = 1; p < cert.ordering.size(); ++p) {
    std::vector<std::size_t> within(cert.ordering.begin(),
                                    cert.ordering.begin() + static_cast<std::ptrdiff_t>(p) + 1);
    if (cert.ordering[p] >= h.size()) return std::nullopt;
    const MaskTwig t = twig_masks(h.edges(), cert.ordering[p], within);
    if (!t.twig) return std::nullopt;
    const auto it = std::find(cert.ordering.begin(), cert.ordering.end(), t.branch);
    cert.branching.push_back(static_cast<std::size_t>(it - cert.ordering.begin()));
  }
  if (!is_valid_certificate(h, cert)) return std::nullopt;
  return cert;
}

std::vector<AttrSet> interaction_set(const HypertreeCertificate& cert, const Hypergraph& h) {
  if (!is_valid_certificate(h, cert)) {
    throw UsageError("certificate is not a valid tree construction ordering for the hypergraph");
  }
  std::vector<AttrSet> out;
  out.reserve(cert.branching.size());
  for (std::size_t p = 1; p < cert.ordering.size(); ++p) {
    out.push_back(h.edge(cert.ordering[cert.branch_position(p)]) & h.edge(cert.ordering[p]));
  }
  return out;
}

std::vector<AttrSet> sorted_interaction_set(const HypertreeCertificate& cert, const Hypergraph& h) {
  auto out = interaction_set(cert, h);
  std::sort(out.begin(), out.end(), AttrSetLexLess{});
  return out;
}

std::optional<HypertreeCertificate> find_certificate_exhaustive(const Hypergraph& h) {
  std::vector<std::size_t> ordering(h.size());
  std::iota(ordering.begin(), ordering.end(), 0);
  do {
    if (auto cert = certificate_for_ordering(h, ordering)) return cert;
  } while (std::next_permutation(ordering.begin(), ordering.end()));
  return std::nullopt;
}

}  // namespace gajd
