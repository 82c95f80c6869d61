#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geotherm/geometry/isometry.hpp"
#include "geotherm/gibbs/souriau.hpp"
#include "geotherm/numkit/fd.hpp"
#include "geotherm/numkit/rng.hpp"
#include "geotherm/thermo/stochastic.hpp"

using namespace geotherm;
using gibbs::TemperatureVector;
using models::load_model;
using models::ModelName;
using num::Matrix;
using num::max_abs;
using num::Rng;
using num::Vec;

namespace {
const double kPi = 3.14159265358979323846;
const double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("temperature cones") {
    CHECK(gibbs::in_cone(TemperatureVector::h2(1, 0, 0)));
    CHECK_FALSE(gibbs::in_cone(TemperatureVector::h2(1, 2, 0)));
    CHECK_FALSE(gibbs::in_cone(TemperatureVector::h2(-1, 0, 0)));
    CHECK(gibbs::in_cone(TemperatureVector::sh2_canonical(2, 1)));
    CHECK_FALSE(gibbs::in_cone(TemperatureVector::sh2_canonical(1, 2)));
    // raw coefficients round trip the relabeling
    const TemperatureVector raw = TemperatureVector::h2_raw(1.5, 0.2, -0.8);
    const Vec c = raw.h2_canonical();
    CHECK(c[0] + c[2] == doctest::Approx(1.5));
    CHECK(-2 * c[2] == doctest::Approx(-0.8));
}

TEST_CASE("H2 partition: closed form vs quadrature oracle") {
    const auto z1 = gibbs::partition_h2(1, 0, 0);
    CHECK(z1.value == doctest::Approx(kPi * std::exp(-1.0)).epsilon(1e-12));
    CHECK(gibbs::partition_h2(2, 0, 0).value ==
          doctest::Approx(0.5 * kPi * std::exp(-2.0)).epsilon(1e-12));
    const double n211 = std::sqrt(2.0);
    CHECK(gibbs::partition_h2(2, 1, 1).value ==
          doctest::Approx(kPi * std::exp(-n211) / n211).epsilon(1e-12));
    CHECK_THROWS_AS((void)gibbs::partition_h2(1, 2, 0), gibbs::OutsideCone);

    Rng rng(301);
    for (int rep = 0; rep < 6; ++rep) {
        const double d = rng.uniform(0.4, 3.0);
        const double mu = rng.uniform(0.0, 0.95) * d;
        const double th = rng.uniform(0, 2 * kPi);
        const double b = mu * std::cos(th), z = mu * std::sin(th);
        const double closed = gibbs::partition_h2(d, b, z).value;
        const auto quad = gibbs::partition_h2_quadrature(d, b, z);
        CHECK(std::abs(quad.value / closed - 1.0) < 1e-8);
    }
}

TEST_CASE("H2 density: value, normalization, invariance") {
    const auto& spec = load_model(ModelName::H2);
    const TemperatureVector tau = TemperatureVector::h2(1, 0, 0);
    CHECK(gibbs::gibbs_density_h2(tau, {0, 0}) == doctest::Approx(1.0 / kPi));

    // integrates to one on the chart
    const TemperatureVector tau2 = TemperatureVector::h2(1.7, 0.4, -0.6);
    auto f = [&](double x, double y) { return gibbs::gibbs_density_h2(tau2, {x, y}); };
    const auto total = num::integrate_adaptive_2d(f, -kInf, kInf, -kInf, kInf, 1e-8);
    CHECK(std::abs(total.value - 1.0) < 1e-4);

    // invariance under the isometry action
    Rng rng(307);
    for (int rep = 0; rep < 5; ++rep) {
        Matrix x(2, 2);
        for (const auto& j : spec.full) x += j * rng.uniform(-0.4, 0.4);
        const Matrix g = num::expm(x);
        const Vec y = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const Vec tau_moved = isometry::coadjoint_apply(spec, g, tau2.coefficients);
        const TemperatureVector tm{ModelName::H2, tau_moved};
        const Vec y_moved = isometry::act(spec, num::inverse(g), y);
        CHECK(gibbs::gibbs_density_h2(tau2, y) ==
              doctest::Approx(gibbs::gibbs_density_h2(tm, y_moved)).epsilon(1e-8));
    }
}

TEST_CASE("disk transform and density") {
    const Vec origin = gibbs::disk_transform(0.0, 0.0);
    CHECK(std::abs(origin[0]) < 1e-14);
    CHECK(std::abs(origin[1]) < 1e-14);

    Rng rng(311);
    for (int rep = 0; rep < 100; ++rep) {
        const double r = std::sqrt(rng.uniform01()) * 0.98;
        const double t = rng.uniform(0, 2 * kPi);
        const double x = r * std::cos(t), y = r * std::sin(t);
        const Vec u = gibbs::disk_transform(x, y);
        const Vec back = gibbs::disk_inverse(u);
        CHECK(std::abs(back[0] - x) < 1e-10);
        CHECK(std::abs(back[1] - y) < 1e-10);
    }
    CHECK_THROWS_AS((void)gibbs::disk_transform(1.2, 0.0), gibbs::OutsideDisk);

    // unit mass on the disk
    auto f = [](double x, double y) {
        if (x * x + y * y >= 1.0) return 0.0;
        return gibbs::gibbs_density_disk(2.0, 1.0, 0.7, x, y);
    };
    const auto total = num::integrate_adaptive_2d(f, -1, 1, -1, 1, 1e-7);
    CHECK(std::abs(total.value - 1.0) < 1e-4);
}

TEST_CASE("siegel exponent: rational form equals the moment pairing") {
    const auto& spec = load_model(ModelName::SH2_vector);
    Rng rng(313);
    for (int rep = 0; rep < 10; ++rep) {
        Vec w(6);
        for (double& v : w) v = rng.uniform(-0.8, 0.8);
        const double lambda = rng.uniform(0.5, 3.0);
        const double mu = rng.uniform(-0.9, 0.9) * lambda;
        const double a = gibbs::siegel_exponent(w, lambda, mu);
        const TemperatureVector tau = TemperatureVector::sh2_canonical(lambda, mu);
        CHECK(a == doctest::Approx(gibbs::gibbs_exponent(spec, tau, w)).epsilon(1e-10));
    }
    // pinned origin value: A(0) = -lambda
    CHECK(gibbs::siegel_exponent(Vec(6, 0.0), 2.0, 0.5) == doctest::Approx(-2.0));
}

TEST_CASE("siegel staged pipeline against one-fewer-stage quadrature") {
    struct Tuple {
        double r1, r2, w5, w6, lam, mu;
    };
    const std::vector<Tuple> tuples = {
        {1.0, 1.0, 0.0, 0.0, 2.0, 0.0},  {1.35, 0.82, 0.55, 0.35, 2.0, 0.5},
        {0.7, 1.4, -0.3, 0.8, 3.0, 1.0}, {1.1, 0.9, 0.2, -0.6, 1.5, -0.4},
        {0.85, 1.2, 0.9, 0.4, 2.5, 1.2},
    };
    for (const auto& t : tuples) {
        // stage 1: (w3, w4) closed vs 2D quadrature of exp(A)
        auto f34 = [&](double w3, double w4) {
            return std::exp(gibbs::siegel_exponent_rational(t.r1, t.r2, w3, w4, t.w5,
                                                            t.w6, t.lam, t.mu));
        };
        const double closed34 = gibbs::siegel_stage_w34(t.r1, t.r2, t.w5, t.w6, t.lam, t.mu);
        const auto quad34 = num::integrate_adaptive_2d(f34, -kInf, kInf, -kInf, kInf, 1e-9);
        CHECK(std::abs(quad34.value / closed34 - 1.0) < 1e-5);

        // stage 2: w5 closed vs 1D quadrature of stage 1
        auto f5 = [&](double w5) {
            return gibbs::siegel_stage_w34(t.r1, t.r2, w5, t.w6, t.lam, t.mu);
        };
        const double closed5 = gibbs::siegel_stage_w5(t.r1, t.r2, t.w6, t.lam, t.mu);
        const auto quad5 = num::integrate_adaptive(f5, -kInf, kInf, 1e-11);
        CHECK(std::abs(quad5.value / closed5 - 1.0) < 1e-5);

        // stage 3: w6 closed (Bessel) vs 1D quadrature of stage 2
        auto f6 = [&](double w6) {
            return gibbs::siegel_stage_w5(t.r1, t.r2, w6, t.lam, t.mu);
        };
        const double closed6 = gibbs::siegel_reduced_integrand(t.r1, t.r2, t.lam, t.mu);
        const auto quad6 = num::integrate_adaptive(f6, -kInf, kInf, 1e-11);
        CHECK(std::abs(quad6.value / closed6 - 1.0) < 1e-5);
    }
    // decay in the Cartan direction
    CHECK(gibbs::siegel_reduced_integrand(40.0, 1.0, 2.0, 0.5) <
          1e-12 * gibbs::siegel_reduced_integrand(1.0, 1.0, 2.0, 0.5));
    // no rho1 <-> rho2 symmetry is assumed; both orders evaluate
    const double a = gibbs::siegel_reduced_integrand(1.3, 0.7, 2.0, 0.5);
    const double b = gibbs::siegel_reduced_integrand(0.7, 1.3, 2.0, 0.5);
    CHECK(a > 0);
    CHECK(b > 0);
    CHECK_THROWS_AS((void)gibbs::siegel_reduced_integrand(1.0, 1.0, 1.0, 1.0),
                    gibbs::DegenerateTemperatures);
}

TEST_CASE("siegel partition: self-convergence between refinement levels") {
    const auto z1 = gibbs::partition_siegel(2.0, 0.0, 1e-6);
    const auto z2 = gibbs::partition_siegel(2.0, 0.0, 1e-8);
    CHECK(z1.value > 0);
    CHECK(std::abs(z1.value / z2.value - 1.0) < 1e-4);
    const auto z3 = gibbs::partition_siegel(3.0, 1.0);
    CHECK(z3.value > 0);
    CHECK(std::isfinite(z3.value));
    CHECK_THROWS_AS((void)gibbs::partition_siegel(1.0, 1.0), gibbs::DegenerateTemperatures);
}

TEST_CASE("partition_numeric: quadrature path matches the H2 closed form") {
    const auto& spec = load_model(ModelName::H2);
    const auto z = gibbs::partition_numeric(spec, TemperatureVector::h2(1, 0, 0));
    CHECK(std::abs(z.value - kPi * std::exp(-1.0)) <
          std::max(z.error_estimate, 1e-6));
    CHECK_THROWS_AS(
        (void)gibbs::partition_numeric(spec, TemperatureVector::h2(1, 2, 0)),
        gibbs::DivergenceDetected);
}

TEST_CASE("partition_numeric: Monte Carlo path brackets the Siegel value") {
    const auto& spec = load_model(ModelName::SH2_vector);
    const TemperatureVector tau = TemperatureVector::sh2_canonical(2.0, 0.0);
    Rng rng(317);
    const auto mc = gibbs::partition_numeric(spec, tau, 400000, &rng);
    const auto staged = gibbs::partition_siegel(2.0, 0.0);
    CHECK(std::abs(mc.value - staged.value) < 4.0 * (mc.error_estimate + staged.error_estimate));
}

TEST_CASE("canonical form evaluates through group translations") {
    const auto& spec = load_model(ModelName::H2);
    const double n = 1.3;
    // identity element reduces to the centered density
    CHECK(gibbs::canonical_gibbs(spec, {n}, Matrix::identity(2), {0.4, -0.2}) ==
          doctest::Approx(gibbs::gibbs_density_h2(TemperatureVector::h2(n, 0, 0),
                                                  {0.4, -0.2})));
    // general element: canonical(N, g, y) = density(Adj^T(g) tau_N, y)
    Rng rng(331);
    for (int rep = 0; rep < 5; ++rep) {
        Matrix x(2, 2);
        for (const auto& j : spec.full) x += j * rng.uniform(-0.5, 0.5);
        const Matrix g = num::expm(x);
        const Vec y = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const Vec tau_g = isometry::coadjoint_apply(spec, g, {n, 0, 0});
        const TemperatureVector tg{ModelName::H2, tau_g};
        CHECK(gibbs::canonical_gibbs(spec, {n}, g, y) ==
              doctest::Approx(gibbs::gibbs_density_h2(tg, y)).epsilon(1e-9));
    }
    // the density maximum moves with the translation
    const Vec shift = {0.6, -0.3};
    const Matrix gs = coset::coset_rep(spec, shift);
    const Vec peak = isometry::act(spec, num::inverse(gs), Vec{0.0, 0.0});
    double best = -1, best_at_peak = gibbs::canonical_gibbs(spec, {n}, gs, peak);
    Rng scan(333);
    for (int k = 0; k < 300; ++k) {
        const Vec y = {scan.uniform(-2, 2), scan.uniform(-2, 2)};
        best = std::max(best, gibbs::canonical_gibbs(spec, {n}, gs, y));
    }
    CHECK(best <= best_at_peak * (1 + 1e-9));
}

TEST_CASE("seeded sampling is reproducible and satisfies the moment identity") {
    const TemperatureVector tau = TemperatureVector::h2(1, 0, 0);
    Rng rng_a(42), rng_b(42);
    const auto sa = gibbs::sample_gibbs_h2(tau, 2000, rng_a);
    const auto sb = gibbs::sample_gibbs_h2(tau, 2000, rng_b);
    REQUIRE(sa.size() == sb.size());
    for (std::size_t i = 0; i < sa.size(); ++i) {
        CHECK(sa[i][0] == sb[i][0]);
        CHECK(sa[i][1] == sb[i][1]);
    }
    // <-P_0> = dH/d delta at (1,0,0): the mean of minus the center moment
    const auto& spec = load_model(ModelName::H2);
    Rng rng(20240809);
    const auto samples = gibbs::sample_gibbs_h2(tau, 20000, rng);
    double mean = 0, second = 0;
    for (const auto& pt : samples) {
        const Vec u = gibbs::disk_transform(pt[0], pt[1]);
        const double p0 = moment::moment_map(spec, 0, u);
        mean += -p0;
        second += p0 * p0;
    }
    mean /= samples.size();
    second /= samples.size();
    const double sigma = std::sqrt((second - mean * mean) / samples.size());
    auto h = [](const Vec& b) {
        return thermo::h2_stochastic_hamiltonian(b[0], b[1], b[2]);
    };
    const double expect = num::fd_derivative(h, {1.0, 0.0, 0.0}, 0);
    CHECK(std::abs(mean - expect) < 3.0 * sigma + 1e-3);
    // sharper distributions at higher norm
    Rng rng2(77);
    const auto tight = gibbs::sample_gibbs_h2(TemperatureVector::h2(6, 0, 0), 4000, rng2);
    double var_loose = 0, var_tight = 0;
    for (std::size_t i = 0; i < 4000; ++i) {
        var_loose += samples[i][0] * samples[i][0] + samples[i][1] * samples[i][1];
        var_tight += tight[i][0] * tight[i][0] + tight[i][1] * tight[i][1];
    }
    CHECK(var_tight < var_loose);
}
