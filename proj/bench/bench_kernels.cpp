// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

// Serial against OpenMP execution for the three parallel kernels.
// Argument 0 selects Execution::Serial, 1 Execution::Parallel.

#include <benchmark/benchmark.h>

#include "gajd/census.hpp"
#include "gajd/oracle.hpp"
#include "gajd/tableau.hpp"

using namespace gajd;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_Run(benchmark::State& state) {
  const auto u = Universe::make({"A", "B", "C", "D", "E"});
  const Gajd g = Gajd::from_edges(u, {AttrSet::from_bits(0b00011), AttrSet::from_bits(0b00110),
                                      AttrSet::from_bits(0b01100), AttrSet::from_bits(0b11000)});
  const Tableau t = build_tr(g);
  const auto rel = random_positive(u, u->all(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(run(t, rel, mode(state)));
}
BENCHMARK(BM_Run)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Soundness(benchmark::State& state) {
  const auto u = Universe::make({"A1", "A2", "A3", "A4"});
  const Gajd c1 = Gajd::from_edges(u, {AttrSet::from_bits(0b0011), AttrSet::from_bits(0b1110)});
  const Gajd c2 = Gajd::from_edges(u, {AttrSet::from_bits(0b0111), AttrSet::from_bits(0b1100)});
  const Gajd target = Gajd::from_edges(u, {AttrSet::from_bits(0b0011), AttrSet::from_bits(0b0110),
                                           AttrSet::from_bits(0b1100)});
  const std::vector<Gajd> constraints{c1, c2};
  OracleConfig cfg;
  cfg.trials = 200;
  for (auto _ : state) benchmark::DoNotOptimize(check_soundness(constraints, target, cfg, mode(state)));
}
BENCHMARK(BM_Soundness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Census(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(interaction_census({5, 5}, 0, mode(state)));
}
BENCHMARK(BM_Census)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
