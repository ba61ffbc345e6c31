// OpenMP gather kernels vs the serial face-scatter reference.

#include <benchmark/benchmark.h>

#include "chemolab/initial.hpp"
#include "chemolab/operators.hpp"
#include "chemolab/solver.hpp"

namespace {

using namespace chemolab;

State bump(const Mesh& mesh) {
    InitialCondition ic;
    ic.kind = InitialKind::gaussian;
    ic.amplitude = 2.0;
    ic.u_base = 0.1;
    ic.v_amplitude = 0.5;
    return make_initial_state(ic, mesh);
}

Mesh square(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    return Mesh::cartesian(2.0, 2.0, n, n);
}

void BM_Laplacian(benchmark::State& st) {
    const Mesh mesh = square(st);
    const State s = bump(mesh);
    for (auto _ : st) benchmark::DoNotOptimize(laplacian_neumann(s.u, mesh));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(mesh.size()));
}

void BM_LaplacianReference(benchmark::State& st) {
    const Mesh mesh = square(st);
    const State s = bump(mesh);
    for (auto _ : st) benchmark::DoNotOptimize(reference::laplacian_neumann(s.u, mesh));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(mesh.size()));
}

void BM_Taxis(benchmark::State& st) {
    const Mesh mesh = square(st);
    const State s = bump(mesh);
    for (auto _ : st) benchmark::DoNotOptimize(chemotactic_divergence(s.u, s.v, 0.5, mesh));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(mesh.size()));
}

void BM_TaxisReference(benchmark::State& st) {
    const Mesh mesh = square(st);
    const State s = bump(mesh);
    for (auto _ : st) benchmark::DoNotOptimize(reference::chemotactic_divergence(s.u, s.v, 0.5, mesh));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(mesh.size()));
}

void BM_Step(benchmark::State& st) {
    const Mesh mesh = square(st);
    const State s = bump(mesh);
    const Coefficients c{0.5, 1.0};
    const double dt = stable_dt(s, mesh, c, SchemeConfig{});
    for (auto _ : st) benchmark::DoNotOptimize(step(s, mesh, c, dt));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(mesh.size()));
}

void BM_StepReference(benchmark::State& st) {
    const Mesh mesh = square(st);
    const State s = bump(mesh);
    const Coefficients c{0.5, 1.0};
    const double dt = stable_dt(s, mesh, c, SchemeConfig{});
    for (auto _ : st) benchmark::DoNotOptimize(reference::step(s, mesh, c, dt));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(mesh.size()));
}

}  // namespace

BENCHMARK(BM_Laplacian)->Arg(64)->Arg(256);
BENCHMARK(BM_LaplacianReference)->Arg(64)->Arg(256);
BENCHMARK(BM_Taxis)->Arg(64)->Arg(256);
BENCHMARK(BM_TaxisReference)->Arg(64)->Arg(256);
BENCHMARK(BM_Step)->Arg(64)->Arg(256);
BENCHMARK(BM_StepReference)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
