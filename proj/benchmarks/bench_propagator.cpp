#include <benchmark/benchmark.h>

#include "nhmodes/entanglement.hpp"
#include "nhmodes/observables.hpp"
#include "nhmodes/propagator.hpp"

using namespace nhmodes;

namespace {

ModelSpec soliton_plasmon() { return ModelSpec::from_asymmetry(1.0, 0.1, 2.0, -0.01, Deformation::SqrtN); }

QuantumState coherent_vacuum(ModeDims d) {
    return QuantumState::pure(tensor_state(coherent_state(1.0, d.dim_a()), fock_state(0, d.dim_b())));
}

void BM_StepVector(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const ModeDims d(m, m);
    const Operator h = build_hamiltonian(soliton_plasmon(), d);
    QuantumState psi = coherent_vacuum(d);
    for (auto _ : state) {
        psi = step_vector(psi, h, 1e-3);
        benchmark::DoNotOptimize(psi);
    }
}
BENCHMARK(BM_StepVector)->Arg(6)->Arg(10)->Arg(20);

void BM_StepDensity(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const ModeDims d(m, m);
    const HamiltonianParts parts = decompose(build_hamiltonian(soliton_plasmon(), d));
    QuantumState rho = coherent_vacuum(d).as_density();
    for (auto _ : state) {
        rho = step_density(rho, parts, 1e-3);
        benchmark::DoNotOptimize(rho);
    }
}
BENCHMARK(BM_StepDensity)->Arg(6)->Arg(10);

void BM_Entropy(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const QuantumState psi = coherent_vacuum(ModeDims(m, m));
    for (auto _ : state) benchmark::DoNotOptimize(von_neumann_entropy(partial_trace(psi, Mode::A)));
}
BENCHMARK(BM_Entropy)->Arg(10)->Arg(20);

void BM_NumberRate(benchmark::State& state) {
    const ModeDims d(10, 10);
    const NumberRate rate(d, 0.2, 0.1);
    const QuantumState rho = coherent_vacuum(d).as_density();
    for (auto _ : state) benchmark::DoNotOptimize(rate(rho));
}
BENCHMARK(BM_NumberRate);

// Short evolution through the full sampling pipeline, both paths.
void BM_Evolve(benchmark::State& state) {
    SimulationConfig c;
    c.model = soliton_plasmon();
    c.t_max = 5.0;
    for (auto _ : state) benchmark::DoNotOptimize(evolve(c));
}
BENCHMARK(BM_Evolve)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
