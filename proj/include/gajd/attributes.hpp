// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gajd {

/// Maximum number of attributes in one universe (AttrSet is a 64-bit mask).
inline constexpr std::size_t kMaxAttributes = 64;

/// A set of attributes, stored as a bitmask over universe positions.
/// Iteration order is the universe's declaration order.
class AttrSet {
 public:
  constexpr AttrSet() = default;

  static constexpr AttrSet from_bits(std::uint64_t bits) { return AttrSet(bits); }
  static constexpr AttrSet single(std::size_t attr) { return AttrSet(std::uint64_t{1} << attr); }
  static constexpr AttrSet first_n(std::size_t n) {
    return AttrSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  constexpr bool contains(std::size_t attr) const noexcept { return (bits_ >> attr) & 1U; }
  constexpr bool subset_of(AttrSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }

  constexpr AttrSet operator|(AttrSet o) const noexcept { return AttrSet(bits_ | o.bits_); }
  constexpr AttrSet operator&(AttrSet o) const noexcept { return AttrSet(bits_ & o.bits_); }
  constexpr AttrSet operator-(AttrSet o) const noexcept { return AttrSet(bits_ & ~o.bits_); }
  constexpr AttrSet& operator|=(AttrSet o) noexcept {
    bits_ |= o.bits_;
    return *this;
  }

  constexpr bool operator==(const AttrSet&) const = default;

  /// Member positions in ascending order.
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
  }

 private:
  constexpr explicit AttrSet(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

/// Lexicographic comparison of the ascending member lists; the canonical
/// order used when printing and sorting attribute sets.
std::strong_ordering lex_compare(AttrSet a, AttrSet b) noexcept;

struct AttrSetLexLess {
  bool operator()(AttrSet a, AttrSet b) const noexcept { return lex_compare(a, b) < 0; }
};

/// Named attributes with finite value domains. Attribute i has domain
/// {0, ..., domain_size(i) - 1}; labels are only used for printing.
///
/// Tuples over any subset X are encoded as a single integer using
/// universe-wide mixed-radix strides, so projection is a sum of digits and
/// codes of compatible tuples over disjoint sets add.
class Universe {
 public:
  struct Attribute {
    std::string name;
    std::vector<std::string> labels;
  };

  /// Throws UsageError on empty/duplicate names, empty domains, duplicate
  /// labels, more than kMaxAttributes attributes, or a total domain that
  /// does not fit in 64 bits.
  explicit Universe(std::vector<Attribute> attributes);

  /// Convenience: every attribute gets labels "0".."size-1" (default size 2).
  static std::shared_ptr<const Universe> make(const std::vector<std::string>& names,
                                              const std::vector<std::size_t>& sizes = {});

  std::size_t size() const noexcept { return attributes_.size(); }
  AttrSet all() const noexcept { return AttrSet::first_n(size()); }
  const Attribute& attribute(std::size_t i) const { return attributes_.at(i); }
  const std::string& name(std::size_t i) const { return attributes_.at(i).name; }
  std::size_t domain_size(std::size_t i) const { return attributes_.at(i).labels.size(); }
  std::uint64_t stride(std::size_t i) const { return strides_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Number of tuples over X; throws DomainTooLarge if it exceeds `limit`.
  std::uint64_t cell_count(AttrSet x, std::uint64_t limit = ~std::uint64_t{0}) const;

  std::uint32_t digit(std::uint64_t code, std::size_t attr) const noexcept {
    return static_cast<std::uint32_t>((code / strides_[attr]) % attributes_[attr].labels.size());
  }
  /// Code of the restriction of `code` to X.
  std::uint64_t project(std::uint64_t code, AttrSet x) const noexcept;

  /// "{A1 A2}" style rendering.
  std::string format(AttrSet x) const;
  /// "A1A2" style rendering (empty set renders as "{}").
  std::string format_compact(AttrSet x) const;

  bool same_attributes(const Universe& other) const;

 private:
  std::vector<Attribute> attributes_;
  std::vector<std::uint64_t> strides_;
};

using UniversePtr = std::shared_ptr<const Universe>;

}  // namespace gajd
