// Copyright 2026 The sssb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "sssb/observables.hpp"
#include "sssb/statmech.hpp"

using namespace sssb;

namespace {

DensityMatrix dephased_chain(std::size_t n, double p) {
    return bond_dephase_1d(Lattice::chain(n), p).apply(DensityMatrix::from_pure(StateVector::plus_state(n)));
}

void BM_Renyi2Dense(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const DensityMatrix rho = dephased_chain(n, 0.25);
    const ChargedPair pair = ChargedPair::zz(n, 0, n - 1);
    for (auto _ : state) benchmark::DoNotOptimize(renyi2_correlator(rho, pair));
}
BENCHMARK(BM_Renyi2Dense)->DenseRange(4, 10, 2);

void BM_BondDephase(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ChannelSequence ch = bond_dephase_1d(Lattice::chain(n), 0.2);
    const DensityMatrix plus = DensityMatrix::from_pure(StateVector::plus_state(n));
    for (auto _ : state) benchmark::DoNotOptimize(ch.apply(plus));
}
BENCHMARK(BM_BondDephase)->DenseRange(4, 10, 2);

void BM_MetropolisSweeps(benchmark::State& state) {
    McOptions opts;
    opts.thermalization = 0;
    opts.sweeps = 1000;
    opts.bins = 10;
    const auto L = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ising2d_mc(0.44, L, opts));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(opts.sweeps * L * L));
}
BENCHMARK(BM_MetropolisSweeps)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_TransferMatrix(benchmark::State& state) {
    const auto lx = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ising2d_tm_corr(Coupling(0.44), lx, lx, lx / 2));
}
BENCHMARK(BM_TransferMatrix)->DenseRange(3, 8)->Unit(benchmark::kMicrosecond);

void BM_ToeplitzTfim(benchmark::State& state) {
    const auto r = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(tfim_critical_corr(r));
}
BENCHMARK(BM_ToeplitzTfim)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
