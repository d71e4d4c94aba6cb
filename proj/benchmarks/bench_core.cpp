// Copyright 2026 The qest Authors
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

#include "qest/estimation.hpp"
#include "qest/measurement.hpp"
#include "qest/random.hpp"
#include "qest/simulator.hpp"
#include "qest/state_model.hpp"
#include "qest/verify.hpp"

using namespace qest;

static void BM_HermitianEig(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    Rng rng(1);
    CMatrix b(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) b(i, j) = Complex(rng.normal(), rng.normal());
    const CMatrix a = b + b.adjoint();
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(a));
}
BENCHMARK(BM_HermitianEig)->Arg(2)->Arg(4)->Arg(8);

static void BM_OptimalMeasurement(benchmark::State &state) {
    const StokesPoint x(Eigen::Vector3d(0.55, 0.55, 0.55));
    const auto d = qubit_slds(x);
    const RMatrix j = qubit_qfi(x);
    const Weight h(RMatrix::Identity(3, 3));
    for (auto _ : state) benchmark::DoNotOptimize(optimal_measurement(d, j, h));
}
BENCHMARK(BM_OptimalMeasurement);

static void BM_MubFisher(benchmark::State &state) {
    const int q = static_cast<int>(state.range(0));
    const MubFamily f = mub_bases(q);
    const Povm tomo = mub_tomography_povm(f);
    RVector c = RVector::Zero(mub_param_count(q));
    c[0] = 0.5;
    for (auto _ : state) {
        const auto d = mub_derivatives({q, c}, f);
        benchmark::DoNotOptimize(classical_fisher(d, tomo));
    }
}
BENCHMARK(BM_MubFisher)->Arg(3)->Arg(4)->Arg(5);

static void BM_MleMaximize(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(2);
    const Povm t = qubit_tomography_povm();
    const CMatrix rho = qubit_state(StokesPoint(Eigen::Vector3d(0.55, 0.55, 0.55)));
    std::vector<LikelihoodTerm> terms;
    for (int i = 0; i < n; ++i) terms.push_back(LikelihoodTerm::from_element(t[sample_outcome(rho, t, rng)].op));
    const MleResult warm = mle_maximize(terms, Eigen::Vector3d::Zero(), {}, nullptr);
    for (auto _ : state) benchmark::DoNotOptimize(mle_maximize(terms, warm.x, {}, nullptr));
}
BENCHMARK(BM_MleMaximize)->Arg(100)->Arg(1000)->Arg(4000);

static void BM_AdaptiveRun(benchmark::State &state) {
    RunConfig cfg;
    cfg.m_max = static_cast<int>(state.range(0));
    std::uint64_t i = 0;
    for (auto _ : state) {
        Rng rng = Rng::substream(3, i++);
        benchmark::DoNotOptimize(adaptive_run(cfg, rng));
    }
}
BENCHMARK(BM_AdaptiveRun)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_BuresDistance(benchmark::State &state) {
    const CMatrix a = qubit_state(StokesPoint(Eigen::Vector3d(0.55, 0.55, 0.55)));
    const CMatrix b = qubit_state(StokesPoint(Eigen::Vector3d(0.5, 0.6, 0.52)));
    for (auto _ : state) benchmark::DoNotOptimize(bures_distance(a, b));
}
BENCHMARK(BM_BuresDistance);

BENCHMARK_MAIN();
