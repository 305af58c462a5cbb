#include <benchmark/benchmark.h>

#include <random>

#include "qdb/qdb.hpp"

using namespace qdb;

namespace {

// Random GKLS generator on d levels with a full-rank Kossakowski matrix.
LindbladGenerator random_generator(Eigen::Index d, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    auto ginibre = [&](Eigen::Index r, Eigen::Index c) {
        ComplexMatrix m(r, c);
        for (Eigen::Index j = 0; j < c; ++j)
            for (Eigen::Index i = 0; i < r; ++i) m(i, j) = Complex(n(rng), n(rng));
        return m;
    };
    const ComplexMatrix h = ginibre(d, d);
    const ComplexMatrix g = ginibre(d * d - 1, d * d - 1);
    return LindbladGenerator(Hamiltonian(0.5 * (h + h.adjoint())), g * g.adjoint() / double(d * d));
}

void BM_Evolve(benchmark::State& state) {
    const SuperOperator l = lindblad_superop(random_generator(state.range(0), 1));
    for (auto _ : state) benchmark::DoNotOptimize(evolve(l, 1.0));
}
BENCHMARK(BM_Evolve)->DenseRange(2, 4);

void BM_CheckQdb1(benchmark::State& state) {
    const LindbladGenerator g = example_qdb_family(0.5, 0.1, 1.0, 1.0);
    const DensityMatrix sigma = gibbs(g.hamiltonian(), 1.0);
    const SuperOperator dual = dual_superop(g);
    for (auto _ : state) benchmark::DoNotOptimize(check_qdb1_sweep(sigma, dual, g.hamiltonian().matrix()));
}
BENCHMARK(BM_CheckQdb1);

void BM_ExchangeDistribution(benchmark::State& state) {
    const LindbladGenerator g = random_generator(state.range(0), 2);
    const DynamicalMap map = evolve(lindblad_superop(g), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(exchange_distribution(map, g.hamiltonian(), 2.0, 1.0, 1.0));
}
BENCHMARK(BM_ExchangeDistribution)->DenseRange(2, 4);

} // namespace
BENCHMARK_MAIN();
