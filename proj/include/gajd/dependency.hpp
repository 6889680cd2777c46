// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "gajd/attributes.hpp"
#include "gajd/hypergraph.hpp"

namespace gajd {

/// A generalized acyclic join dependency: a hypertree over a universe
/// together with the certificate (construction ordering + branching) that
/// fixes the order of the sequential monotone join. Its scheme is the union
/// of the edges.
class Gajd {
 public:
  /// Computes a certificate with find_certificate; throws NotHypertreeError.
  Gajd(UniversePtr universe, Hypergraph edges);
  /// Throws UsageError if `cert` is not valid for `edges`.
  Gajd(UniversePtr universe, Hypergraph edges, HypertreeCertificate cert);

  static Gajd from_edges(UniversePtr universe, std::vector<AttrSet> edges) {
    return Gajd(std::move(universe), Hypergraph(std::move(edges)));
  }

  const Universe& universe() const noexcept { return *universe_; }
  const UniversePtr& universe_ptr() const noexcept { return universe_; }
  const Hypergraph& hypergraph() const noexcept { return edges_; }
  const HypertreeCertificate& certificate() const noexcept { return cert_; }
  AttrSet scheme() const noexcept { return edges_.nodes(); }
  std::size_t size() const noexcept { return edges_.size(); }

  /// Edges in certificate order R_1..R_N.
  std::vector<AttrSet> ordered_edges() const;
  /// R_j(i) & R_i for positions 2..N.
  std::vector<AttrSet> interactions() const;

  /// "(x){A1 A2}{A2 A3}" with edges in input order.
  std::string to_string() const;

 private:
  UniversePtr universe_;
  Hypergraph edges_;
  HypertreeCertificate cert_;
};

}  // namespace gajd
