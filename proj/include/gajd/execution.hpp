// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace gajd {

/// Selects between the OpenMP kernel and the serial reference it is
/// tested against. Both produce identical results.
enum class Execution { Serial, Parallel };

/// SplitMix64 step; used to derive independent per-item seeds from a master
/// seed so results do not depend on thread scheduling.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t item) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (item + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int max_threads() noexcept;

}  // namespace gajd
