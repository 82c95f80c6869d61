#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geotherm/geometry/isometry.hpp"
#include "geotherm/geometry/moment_maps.hpp"
#include "geotherm/numkit/rng.hpp"

using namespace geotherm;
using models::load_model;
using models::ModelName;
using moment::moment_map;
using moment::moment_vector;
using num::Matrix;
using num::max_abs;
using num::Rng;
using num::Vec;

namespace {

const double S2 = std::sqrt(2.0);

Vec random_point(Rng& rng, std::size_t d, double scale = 1.0) {
    Vec y(d);
    for (double& v : y) v = rng.uniform(-scale, scale);
    return y;
}

/// Closed forms of the ten Siegel moment maps.
Vec sh2_moment_closed(const Vec& w) {
    const double w1 = w[0], w2 = w[1], w3 = w[2], w4 = w[3], w5 = w[4], w6 = w[5];
    auto e = [](double v) { return std::exp(v); };
    const double q6 = w6 * w6 + 4, q5 = w5 * w5 + 4;
    Vec p(10);
    p[0] = (4 * S2 * w4 - 4 * w5 * w6 - S2 * w3 * q6) / 16.0;
    p[1] = (4 * w4 + w3 * q6) / (8 * S2);
    p[2] = (e(w1 - w2) * (S2 * q6 * w3 * w3 + 4 * w5 * w6 * w3 + 2 * S2 * q5) -
            2 * S2 * e(w2 - w1) * q6) / 32.0;
    p[3] = e(-w1 - w2) *
           (16 * S2 - e(2 * (w1 + w2)) *
                          (8 * S2 * w4 * w4 - 8 * w5 * w6 * w4 + S2 * q5 * q6)) / 64.0;
    p[4] = e(w1) * (-4 * S2 * w4 * w5 + S2 * w3 * q6 * w5 - 4 * w3 * w4 * w6 +
                    2 * (w5 * w5 - 4) * w6) / 32.0 - 0.25 * e(-w1) * w6;
    p[5] = e(-w2) * (2 * S2 * (w3 - e(2 * w2) * w4) * w6 +
                     w5 * (e(2 * w2) * q6 + 4)) / 16.0;
    p[6] = e(-w2) * (2 * S2 * (w3 + e(2 * w2) * w4) * w6 +
                     w5 * (4 - e(2 * w2) * q6)) / 16.0;
    p[7] = -0.25 * e(-w1) * w6 -
           e(w1) * (-4 * S2 * w4 * w5 + S2 * w3 * q6 * w5 - 4 * w3 * w4 * w6 +
                    2 * (w5 * w5 - 4) * w6) / 32.0;
    p[8] = e(-w1 - w2) *
           (-4 * e(2 * w2) * q6 -
            2 * e(2 * w1) * (q6 * w3 * w3 + 2 * S2 * w5 * w6 * w3 + 2 * q5) +
            e(2 * (w1 + w2)) * (8 * w4 * w4 - 4 * S2 * w5 * w6 * w4 + q5 * q6) + 16) / 64.0;
    p[9] = e(-w1 - w2) *
           (-4 * e(2 * w2) * q6 -
            2 * e(2 * w1) * (q6 * w3 * w3 + 2 * S2 * w5 * w6 * w3 + 2 * q5) -
            e(2 * (w1 + w2)) * (8 * w4 * w4 - 4 * S2 * w5 * w6 * w4 + q5 * q6) - 16) / 64.0;
    return p;
}

}  // namespace

TEST_CASE("H2 moment maps: closed forms") {
    const auto& spec = load_model(ModelName::H2);
    const Vec p0 = moment_vector(spec, {0.0, 0.0});
    CHECK(p0[0] == doctest::Approx(-1.0));
    CHECK(p0[1] == doctest::Approx(0.0));
    CHECK(p0[2] == doctest::Approx(-0.5));
    Rng rng(201);
    for (int rep = 0; rep < 12; ++rep) {
        const Vec y = random_point(rng, 2, 1.2);
        const Vec p = moment_vector(spec, y);
        const double x = y[0], t = y[1];
        CHECK(p[0] == doctest::Approx(0.5 * std::exp(-2 * x) *
                                      (-std::exp(4 * x) * (t * t + 1) - 1)));
        CHECK(p[1] == doctest::Approx(-t));
        CHECK(p[2] == doctest::Approx(-0.5 * std::exp(-2 * x)));
    }
    CHECK_THROWS_AS((void)moment_map(load_model(ModelName::SL3), 0, Vec(5, 0.0)),
                    models::NotKahler);
}

TEST_CASE("Siegel moment maps match the closed forms row by row") {
    const auto& spec = load_model(ModelName::SH2_vector);
    const Vec p0 = moment_vector(spec, Vec(6, 0.0));
    CHECK(p0[8] == doctest::Approx(0.0));
    CHECK(p0[9] == doctest::Approx(-1.0));
    Rng rng(203);
    for (int rep = 0; rep < 8; ++rep) {
        const Vec w = random_point(rng, 6, 0.9);
        const Vec p = moment_vector(spec, w);
        const Vec closed = sh2_moment_closed(w);
        for (std::size_t lam = 0; lam < 10; ++lam)
            CHECK(p[lam] == doctest::Approx(closed[lam]).epsilon(1e-11));
    }
}

TEST_CASE("hamiltonian identity i_k K = 2 dP") {
    Rng rng(207);
    const auto& h2 = load_model(ModelName::H2);
    for (int rep = 0; rep < 20; ++rep) {
        const Vec y = random_point(rng, 2, 1.1);
        for (std::size_t lam = 0; lam < 3; ++lam)
            CHECK(moment::hamiltonian_residual(h2, lam, y) < 1e-6);
    }
    const auto& sh2 = load_model(ModelName::SH2_vector);
    for (int rep = 0; rep < 5; ++rep) {
        const Vec w = random_point(rng, 6, 0.8);
        for (std::size_t lam = 0; lam < 10; ++lam)
            CHECK(moment::hamiltonian_residual(sh2, lam, w) < 1e-5);
    }
    // flipped center orientation is detected
    CHECK(moment::hamiltonian_residual(h2, 0, {0.3, -0.4}, true) > 1e-2);
}

TEST_CASE("moment maps close the Poisson algebra") {
    Rng rng(211);
    const auto& h2 = load_model(ModelName::H2);
    for (int rep = 0; rep < 6; ++rep)
        CHECK(moment::moment_poisson_residual(h2, random_point(rng, 2, 1.0)) < 1e-6);
    const auto& sh2 = load_model(ModelName::SH2_vector);
    for (int rep = 0; rep < 2; ++rep)
        CHECK(moment::moment_poisson_residual(sh2, random_point(rng, 6, 0.7)) < 1e-5);
    const auto& m22 = load_model(ModelName::M22);
    CHECK(moment::moment_poisson_residual(m22, random_point(rng, 8, 0.5)) < 1e-5);
}

TEST_CASE("equivariance under solvable and isotropy elements") {
    Rng rng(213);
    for (ModelName name : {ModelName::H2, ModelName::SH2_vector}) {
        const auto& spec = load_model(name);
        const Vec y = random_point(rng, spec.dim_d, 0.8);
        // solvable translation
        const Vec u = random_point(rng, spec.dim_d, 0.5);
        const Matrix g = coset::coset_rep(spec, u);
        const Matrix adj = isometry::adjoint_matrix(spec, g);
        const Vec lhs = moment_vector(spec, isometry::act(spec, g, y));
        const Vec p = moment_vector(spec, y);
        for (std::size_t lam = 0; lam < spec.full_dim(); ++lam) {
            double rhs = 0.0;
            for (std::size_t s = 0; s < spec.full_dim(); ++s) rhs += adj(lam, s) * p[s];
            CHECK(lhs[lam] == doctest::Approx(rhs).epsilon(1e-8));
        }
        // isotropy rotation
        Matrix xh(spec.matrix_size, spec.matrix_size);
        for (const auto& h : spec.compact) xh += h * rng.uniform(-0.4, 0.4);
        const Matrix hg = num::expm(xh);
        const Matrix adjh = isometry::adjoint_matrix(spec, hg);
        const Vec lhs2 = moment_vector(spec, isometry::act(spec, hg, y));
        for (std::size_t lam = 0; lam < spec.full_dim(); ++lam) {
            double rhs = 0.0;
            for (std::size_t s = 0; s < spec.full_dim(); ++s) rhs += adjh(lam, s) * p[s];
            CHECK(lhs2[lam] == doctest::Approx(rhs).epsilon(1e-8));
        }
    }
}
