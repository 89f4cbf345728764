#include <benchmark/benchmark.h>

#include <cmath>

#include "qcorr/analysis.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/purity.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

CMatrix random_hermitian4(RandomStream& rs) {
    CMatrix m(4);
    for (int r = 0; r < 4; ++r) {
        m(r, r) = Complex(rs.next_normal(), 0);
        for (int c = r + 1; c < 4; ++c) {
            m(r, c) = Complex(rs.next_normal(), rs.next_normal());
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

void bm_eig_hermitian4(benchmark::State& state) {
    RandomStream rs(1);
    const CMatrix m = random_hermitian4(rs);
    for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(m));
}

void bm_apply_channel_raw(benchmark::State& state) {
    RandomStream rs(2);
    const ChannelParams cp = ChannelParams::bell0(0.3, 0.55);
    const CMatrix rho = random_pure(rs).projector();
    for (auto _ : state) benchmark::DoNotOptimize(apply_channel_raw(cp, rho));
}

void bm_output_spectrum_reduced(benchmark::State& state) {
    const ReducedParams rp(0.9, 1.3, 0.6);
    for (auto _ : state) benchmark::DoNotOptimize(output_spectrum_reduced(0.3, 0.55, rp));
}

void bm_two_norm_sq_closed_form(benchmark::State& state) {
    const ReducedParams rp(0.9, 1.3, 0.6);
    for (auto _ : state) benchmark::DoNotOptimize(two_norm_sq_closed_form(0.3, 0.55, rp));
}

void bm_two_norm_optimum(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(two_norm_optimum(0.3, 0.55));
}

void bm_numeric_optimize(benchmark::State& state) {
    const PurityOrder order = PurityOrder::finite(3);
    for (auto _ : state)
        benchmark::DoNotOptimize(numeric_optimize(0.3, 0.55, order, 20, 7));
}

void bm_random_pure(benchmark::State& state) {
    RandomStream rs(3);
    for (auto _ : state) benchmark::DoNotOptimize(random_pure(rs));
}

void bm_perturb_point(benchmark::State& state) {
    const ReducedParams rp(1.0, 1.2, 0.7);
    const std::vector<double> ps = {1.5, 2.0, 3.0, INFINITY};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            perturb_point(0.3, 0.5, rp, ShiftDirection::c_phi, 1e-6, ps));
}

void bm_sweep_cell(benchmark::State& state) {
    SweepSpec spec;
    spec.cells = 1;
    spec.trials = 50;
    spec.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(conjecture_sweep(spec));
}

}  // namespace

BENCHMARK(bm_eig_hermitian4);
BENCHMARK(bm_apply_channel_raw);
BENCHMARK(bm_output_spectrum_reduced);
BENCHMARK(bm_two_norm_sq_closed_form);
BENCHMARK(bm_two_norm_optimum);
BENCHMARK(bm_numeric_optimize);
BENCHMARK(bm_random_pure);
BENCHMARK(bm_perturb_point);
BENCHMARK(bm_sweep_cell);

BENCHMARK_MAIN();
