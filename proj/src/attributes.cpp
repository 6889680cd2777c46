// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gajd/attributes.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>

#include "gajd/error.hpp"

namespace gajd {

std::strong_ordering lex_compare(AttrSet a, AttrSet b) noexcept {
  std::uint64_t x = a.bits();
  std::uint64_t y = b.bits();
  while (x != 0 && y != 0) {
    const int ix = std::countr_zero(x);
    const int iy = std::countr_zero(y);
    if (ix != iy) return ix < iy ? std::strong_ordering::less : std::strong_ordering::greater;
    x &= x - 1;
    y &= y - 1;
  }
  if (x == 0 && y == 0) return std::strong_ordering::equal;
  return x == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_';
  });
}

}  // namespace

Universe::Universe(std::vector<Attribute> attributes) : attributes_(std::move(attributes)) {
  if (attributes_.size() > kMaxAttributes) {
    throw UsageError("at most 64 attributes are supported");
  }
  std::set<std::string, std::less<>> seen;
  std::uint64_t stride = 1;
  strides_.reserve(attributes_.size());
  for (const auto& attr : attributes_) {
    if (!is_identifier(attr.name)) {
      throw UsageError("attribute name '" + attr.name + "' is not an identifier");
    }
    if (!seen.insert(attr.name).second) {
      throw UsageError("duplicate attribute '" + attr.name + "'");
    }
    if (attr.labels.empty()) {
      throw UsageError("attribute '" + attr.name + "' has an empty domain");
    }
    std::set<std::string, std::less<>> labels(attr.labels.begin(), attr.labels.end());
    if (labels.size() != attr.labels.size()) {
      throw UsageError("attribute '" + attr.name + "' has duplicate value labels");
    }
    strides_.push_back(stride);
    const std::uint64_t n = attr.labels.size();
    if (stride > std::numeric_limits<std::uint64_t>::max() / n) {
      throw DomainTooLarge("total domain size does not fit in 64 bits");
    }
    stride *= n;
  }
}

std::shared_ptr<const Universe> Universe::make(const std::vector<std::string>& names,
                                               const std::vector<std::size_t>& sizes) {
  std::vector<Attribute> attrs;
  attrs.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::size_t n = i < sizes.size() ? sizes[i] : 2;
    Attribute a{names[i], {}};
    for (std::size_t v = 0; v < n; ++v) a.labels.push_back(std::to_string(v));
    attrs.push_back(std::move(a));
  }
  return std::make_shared<const Universe>(std::move(attrs));
}

std::optional<std::size_t> Universe::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name == name) return i;
  }
  return std::nullopt;
}

std::uint64_t Universe::cell_count(AttrSet x, std::uint64_t limit) const {
  std::uint64_t n = 1;
  for (std::size_t a : x.members()) {
    n *= domain_size(a);
    if (n > limit) {
      throw DomainTooLarge("relation over " + format(x) + " has more than " +
                           std::to_string(limit) + " cells");
    }
  }
  return n;
}

std::uint64_t Universe::project(std::uint64_t code, AttrSet x) const noexcept {
  std::uint64_t out = 0;
  for (std::uint64_t b = x.bits(); b != 0; b &= b - 1) {
    const auto a = static_cast<std::size_t>(std::countr_zero(b));
    out += static_cast<std::uint64_t>(digit(code, a)) * strides_[a];
  }
  return out;
}

std::string Universe::format(AttrSet x) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t a : x.members()) {
    if (!first) out += ' ';
    out += name(a);
    first = false;
  }
  return out + "}";
}

std::string Universe::format_compact(AttrSet x) const {
  if (x.empty()) return "{}";
  std::string out;
  for (std::size_t a : x.members()) out += name(a);
  return out;
}

bool Universe::same_attributes(const Universe& other) const {
  if (this == &other) return true;
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (attributes_[i].name != other.attributes_[i].name ||
        attributes_[i].labels != other.attributes_[i].labels) {
      return false;
    }
  }
  return true;
}

}  // namespace gajd
