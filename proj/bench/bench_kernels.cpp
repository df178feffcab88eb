// Serial reference H_eff apply against the blocked OpenMP kernel.

#include <random>

#include <benchmark/benchmark.h>
#include <omp.h>

#include "dicke/kernels.hpp"

namespace {

using namespace dicke;

EffectiveCouplings couplings(int N, bool real) {
    EffectiveCouplings c;
    c.N = N;
    c.boundary = Boundary::periodic;
    c.e_photon = 0.5;
    c.h_x = 0.3;
    c.h_z = 1.0;
    c.k_xx = -0.05;
    c.jt_xx = 1.0;
    c.jt_yy = 1.0;
    c.jt_zz = -1.6;
    if (!real) {
        c.h_y = 0.2;
        c.jt_yz = 0.1;
    }
    return c;
}

template <class Scalar>
std::vector<Scalar> random_vector(int N) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    std::vector<Scalar> v(std::size_t{1} << N);
    for (auto& x : v) {
        if constexpr (std::is_same_v<Scalar, double>)
            x = nd(rng);
        else
            x = Scalar(nd(rng), nd(rng));
    }
    return v;
}

template <class Scalar>
void BM_Reference(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const auto c = couplings(N, std::is_same_v<Scalar, double>);
    const auto in = random_vector<Scalar>(N);
    std::vector<Scalar> out(in.size());
    for (auto _ : state) {
        kernels::apply_heff_reference<Scalar>(c, in, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.size()));
}

template <class Scalar>
void BM_Blocked(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const int threads = static_cast<int>(state.range(1));
    omp_set_num_threads(threads);
    const auto c = couplings(N, std::is_same_v<Scalar, double>);
    const auto lat = kernels::Lattice::chain(N, c.boundary);
    const auto in = random_vector<Scalar>(N);
    std::vector<Scalar> out(in.size()), scratch(in.size());
    for (auto _ : state) {
        kernels::apply_heff<Scalar>(c, lat, in, out, scratch);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.size()));
}

void sizes(benchmark::internal::Benchmark* b) {
    for (int N : {12, 16, 20}) b->Args({N});
}

void sizes_threads(benchmark::internal::Benchmark* b) {
    const int max_threads = omp_get_max_threads();
    for (int N : {12, 16, 20})
        for (int t = 1; t <= max_threads; t *= 2) b->Args({N, t});
}

}  // namespace

BENCHMARK(BM_Reference<double>)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Blocked<double>)->Apply(sizes_threads)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Reference<dicke::cplx>)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Blocked<dicke::cplx>)->Apply(sizes_threads)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
