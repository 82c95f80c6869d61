#include <benchmark/benchmark.h>

#include "geotherm/gds/system.hpp"
#include "geotherm/geometry/isometry.hpp"
#include "geotherm/geometry/moment_maps.hpp"
#include "geotherm/gibbs/souriau.hpp"
#include "geotherm/numkit/bessel.hpp"
#include "geotherm/numkit/cholesky.hpp"
#include "geotherm/numkit/rng.hpp"
#include "geotherm/thermo/h2_curvature.hpp"

using namespace geotherm;
using models::ModelName;
using num::Vec;

static void BM_ReverseCholesky(benchmark::State& state) {
    num::Rng rng(1);
    const std::size_t n = state.range(0);
    num::Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(-1, 1);
    num::Matrix m = a * a.transposed();
    for (std::size_t i = 0; i < n; ++i) m(i, i) += 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(num::reverse_cholesky(m));
}
BENCHMARK(BM_ReverseCholesky)->Arg(5)->Arg(8);

static void BM_BesselK0(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(num::bessel_k0(x));
        x = x < 40.0 ? x + 0.37 : 0.1;
    }
}
BENCHMARK(BM_BesselK0);

static void BM_MomentVector(benchmark::State& state) {
    const auto& spec = models::load_model(ModelName::SH2_vector);
    const Vec w = {0.3, -0.2, 0.45, -0.35, 0.25, 0.15};
    for (auto _ : state) benchmark::DoNotOptimize(moment::moment_vector(spec, w));
}
BENCHMARK(BM_MomentVector);

static void BM_ActSiegel(benchmark::State& state) {
    const auto& spec = models::load_model(ModelName::SH2_vector);
    const num::Matrix g = num::expm(spec.full[6] * 0.3 + spec.full[2] * 0.2);
    const Vec w = {0.3, -0.2, 0.45, -0.35, 0.25, 0.15};
    for (auto _ : state) benchmark::DoNotOptimize(isometry::act(spec, g, w));
}
BENCHMARK(BM_ActSiegel);

static void BM_PartitionH2Closed(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(gibbs::partition_h2(1.7, 0.4, -0.6));
}
BENCHMARK(BM_PartitionH2Closed);

static void BM_PartitionH2Quadrature(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(gibbs::partition_h2_quadrature(1.7, 0.4, -0.6, 1e-8));
}
BENCHMARK(BM_PartitionH2Quadrature);

static void BM_SiegelIntegrand(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(gibbs::siegel_reduced_integrand(1.2, 0.8, 2.0, 0.5));
}
BENCHMARK(BM_SiegelIntegrand);

static void BM_PartitionSiegel(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(gibbs::partition_siegel(2.0, 0.5, 1e-6));
}
BENCHMARK(BM_PartitionSiegel);

static void BM_GeodesicStep(benchmark::State& state) {
    const auto& spec = models::load_model(ModelName::SL3);
    gds::PhasePoint start;
    start.y = {0.2, -0.3, 0.5, -0.6, 0.4};
    start.p = {0.5, -0.2, 0.3, 0.4, 0.8};
    for (auto _ : state)
        benchmark::DoNotOptimize(gds::geodesic_integrate(spec, start, 0.1, 100));
}
BENCHMARK(BM_GeodesicStep);

static void BM_H2CurvatureClosed(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(thermo::h2_curvature_components(3.0, 1.0));
}
BENCHMARK(BM_H2CurvatureClosed);

static void BM_H2CurvatureFd(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(thermo::h2_curvature_components_fd(3.0, 1.0, 0.5));
}
BENCHMARK(BM_H2CurvatureFd);

BENCHMARK_MAIN();
