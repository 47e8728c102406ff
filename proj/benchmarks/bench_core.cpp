// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "tlsim/heating/stage.hpp"
#include "tlsim/interferometer/coefficients.hpp"
#include "tlsim/interferometer/visibility.hpp"
#include "tlsim/numerics/random.hpp"
#include "tlsim/physics/cooling.hpp"
#include "tlsim/physics/emission.hpp"

using namespace tlsim;

namespace
{
physics::EmissionModel const& model()
{
    static physics::EmissionModel const m(physics::default_cross_section(),
                                          physics::HeatCapacity{});
    return m;
}

heating::TemperatureTrajectory heated(double power)
{
    physics::CoolingIntegrator cooler(model());
    auto cfg = heating::HeatingStageConfig::uniform(16, power);
    cfg.beam_offset_um = 31;
    auto rng = numerics::molecule_stream(1, 0);
    auto t = heating::traverse_stage(
        190, cfg, physics::internal_energy(900, physics::HeatCapacity{}),
        cooler, rng);
    heating::extend_through_interferometer(t, 4e-3, 48, cooler,
                                           cfg.ionization);
    return t;
}
}  // namespace

static void BM_NodeRates(benchmark::State& state)
{
    std::vector<double> out(model().nodes().size());
    for (auto _ : state)
    {
        model().node_rates(2800, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_NodeRates);

static void BM_TotalRateAndDensity(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(physics::total_rate_and_density(
            2800, model().cross_section(), physics::HeatCapacity{}));
}
BENCHMARK(BM_TotalRateAndDensity)->Unit(benchmark::kMillisecond);

static void BM_CoolingGap(benchmark::State& state)
{
    physics::CoolingIntegrator cooler(model());
    double e = physics::internal_energy(4000, physics::HeatCapacity{});
    for (auto _ : state)
        benchmark::DoNotOptimize(cooler.advance(e, 1.6e-6));
}
BENCHMARK(BM_CoolingGap);

static void BM_TraverseStage(benchmark::State& state)
{
    physics::CoolingIntegrator cooler(model());
    auto cfg = heating::HeatingStageConfig::uniform(16, 8.0);
    double e = physics::internal_energy(900, physics::HeatCapacity{});
    std::uint64_t i = 0;
    for (auto _ : state)
    {
        auto rng = numerics::molecule_stream(1, i++);
        benchmark::DoNotOptimize(
            heating::traverse_stage(190, cfg, e, cooler, rng));
    }
}
BENCHMARK(BM_TraverseStage)->Unit(benchmark::kMicrosecond);

static void BM_BaseCoefficients(benchmark::State& state)
{
    interferometer::InterferometerGeometry g;
    for (auto _ : state)
        benchmark::DoNotOptimize(interferometer::base_coefficients(g, 2.5));
}
BENCHMARK(BM_BaseCoefficients);

static void BM_DecoherenceExponents(benchmark::State& state)
{
    auto traj = heated(8.0);
    interferometer::DecoherenceIntegrator integ(
        model(), interferometer::InterferometerGeometry{});
    int order = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(integ.exponents(traj, order));
}
BENCHMARK(BM_DecoherenceExponents)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_MasterEquation(benchmark::State& state)
{
    auto traj = heated(8.0);
    interferometer::InterferometerGeometry g;
    interferometer::DecoherenceIntegrator integ(model(), g);
    auto base = interferometer::base_coefficients(g, 2.5).resized(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(integ.evolve_ode(base, traj));
}
BENCHMARK(BM_MasterEquation)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
