// Microbenchmarks for the hot path: geometry refresh, thermodynamics, the
// blended flux evaluation and one full RK4 step.

#include <benchmark/benchmark.h>

#include "htclag/cases.hpp"

using namespace htclag;

namespace {

const IdealGas gas{1.4, 1.0};

std::unique_ptr<Simulation> vortex_sim(double h, DetectorMode mode) {
    TestCase tc = make_vortex_case(h);
    SimOptions opt;
    opt.detector.mode = mode;
    auto sim = std::make_unique<Simulation>(build_mesh(tc.mesh_input), gas, opt);
    tc.initialize(*sim);
    return sim;
}

} // namespace

static void BM_GeometryUpdate(benchmark::State& state) {
    auto sim = vortex_sim(0.3254, DetectorMode::AlwaysEcl);
    CornerGeometry geom;
    for (auto _ : state) {
        geom.update(sim->mesh);
        benchmark::DoNotOptimize(geom.corner.data());
    }
    state.SetItemsProcessed(state.iterations() * sim->mesh.n_cells());
}
BENCHMARK(BM_GeometryUpdate);

static void BM_ThermoUpdate(benchmark::State& state) {
    auto sim = vortex_sim(0.3254, DetectorMode::AlwaysEcl);
    ThermoCache thermo;
    for (auto _ : state) {
        thermo.update(sim->fields, gas);
        benchmark::DoNotOptimize(thermo.p.data());
    }
    state.SetItemsProcessed(state.iterations() * sim->mesh.n_cells());
}
BENCHMARK(BM_ThermoUpdate);

static void BM_EvalRates(benchmark::State& state) {
    auto sim = vortex_sim(0.3254, DetectorMode::AlwaysEcl);
    const std::vector<double> beta(sim->mesh.n_dofs(), state.range(0) ? 1.0 : 0.0);
    Rates rates;
    EvalDiag diag;
    for (auto _ : state) {
        sim->evaluate(beta, rates, diag);
        benchmark::DoNotOptimize(rates.dtau.data());
    }
    state.SetItemsProcessed(state.iterations() * sim->mesh.n_cells());
}
BENCHMARK(BM_EvalRates)->Arg(0)->Arg(1); // 0: conservative path, 1: stable path

static void BM_Rk4StepMood(benchmark::State& state) {
    auto sim = vortex_sim(0.3254, DetectorMode::Mood);
    const double dt = sim->compute_dt();
    for (auto _ : state) {
        sim->advance(dt);
        benchmark::DoNotOptimize(sim->fields.tau.data());
    }
    state.SetItemsProcessed(state.iterations() * sim->mesh.n_cells());
}
BENCHMARK(BM_Rk4StepMood);

static void BM_ExactRiemannSample(benchmark::State& state) {
    const ExactRiemann ex(riemann_left(1), riemann_right(1), gas.gamma);
    double xi = -2.0;
    for (auto _ : state) {
        xi = xi > 2.0 ? -2.0 : xi + 1e-3;
        benchmark::DoNotOptimize(ex.sample(xi));
    }
}
BENCHMARK(BM_ExactRiemannSample);

BENCHMARK_MAIN();
