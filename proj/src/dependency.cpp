// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gajd/dependency.hpp"

#include <variant>

#include "gajd/error.hpp"

namespace gajd {

namespace {

HypertreeCertificate certify(const UniversePtr& universe, const Hypergraph& edges) {
  auto result = find_certificate(edges);
  if (auto* cert = std::get_if<HypertreeCertificate>(&result)) return std::move(*cert);
  const auto& witness = std::get<NotHypertree>(result).witness;
  std::string msg = "not a hypertree; no twig among";
  for (std::size_t e : witness) msg += " " + universe->format(edges.edge(e));
  throw NotHypertreeError(msg, witness);
}

void check_universe(const UniversePtr& universe, const Hypergraph& edges) {
  if (!universe) throw UsageError("GAJD needs a universe");
  if (!edges.nodes().subset_of(universe->all())) {
    throw SchemeError("GAJD edge mentions an attribute outside the universe");
  }
}

}  // namespace

Gajd::Gajd(UniversePtr universe, Hypergraph edges)
    : universe_(std::move(universe)), edges_(std::move(edges)) {
  check_universe(universe_, edges_);
  cert_ = certify(universe_, edges_);
}

Gajd::Gajd(UniversePtr universe, Hypergraph edges, HypertreeCertificate cert)
    : universe_(std::move(universe)), edges_(std::move(edges)), cert_(std::move(cert)) {
  check_universe(universe_, edges_);
  if (!is_valid_certificate(edges_, cert_)) {
    throw UsageError("certificate is not a valid tree construction ordering");
  }
}

std::vector<AttrSet> Gajd::ordered_edges() const {
  std::vector<AttrSet> out;
  out.reserve(edges_.size());
  for (std::size_t e : cert_.ordering) out.push_back(edges_.edge(e));
  return out;
}

std::vector<AttrSet> Gajd::interactions() const { return interaction_set(cert_, edges_); }

std::string Gajd::to_string() const {
  std::string out = "(x)";
  for (AttrSet e : edges_.edges()) out += universe_->format(e);
  return out;
}

}  // namespace gajd
