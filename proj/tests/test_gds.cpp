#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geotherm/gds/system.hpp"
#include "geotherm/numkit/fd.hpp"
#include "geotherm/numkit/rng.hpp"
#include "geotherm/thermo/curvature.hpp"

using namespace geotherm;
using gds::PhasePoint;
using models::load_model;
using models::ModelName;
using num::Matrix;
using num::max_abs;
using num::Rng;
using num::Vec;

namespace {
const double kPi = 3.14159265358979323846;

PhasePoint random_phase(Rng& rng, std::size_t d, double scale = 1.0) {
    PhasePoint pt;
    pt.y.resize(d);
    pt.p.resize(d);
    for (double& v : pt.y) v = rng.uniform(-scale, scale);
    for (double& v : pt.p) v = rng.uniform(-scale, scale);
    return pt;
}
}  // namespace

TEST_CASE("quadratic hamiltonian against the inverse norm form") {
    const auto& sl3 = load_model(ModelName::SL3);
    CHECK(gds::gds_hamiltonian(sl3, {1, 0, 0, 0, 0}) == doctest::Approx(1.0 / 3.0));
    CHECK(gds::gds_hamiltonian(sl3, Vec(5, 0.0)) == doctest::Approx(0.0));
    Rng rng(401);
    for (int rep = 0; rep < 10; ++rep) {
        const PhasePoint pt = random_phase(rng, 5);
        const auto h = gds::sl3_hamiltonians(pt.p);
        CHECK(h[0] == doctest::Approx(gds::gds_hamiltonian(sl3, pt.p)).epsilon(1e-12));
    }
    CHECK(gds::sl3_hamiltonians({1, 1, 1, 1, 1})[0] == doctest::Approx(10.0 / 3.0));
    CHECK_THROWS_AS((void)gds::sl3_hamiltonians({1, 1, 1, 1, 0}), gds::SingularMomentum);
}

TEST_CASE("symplectic form and bivector invert each other") {
    Rng rng(409);
    for (ModelName name : {ModelName::H2, ModelName::SL3, ModelName::SH2_vector}) {
        const auto& spec = load_model(name);
        for (int rep = 0; rep < 15; ++rep) {
            const PhasePoint pt = random_phase(rng, spec.dim_d);
            const Matrix w = gds::symplectic_form_gds(spec, pt);
            const Matrix pi = gds::poisson_bivector(spec, pt);
            CHECK(max_abs(w * pi - Matrix::identity(2 * spec.dim_d)) < 1e-10);
            CHECK(max_abs(w + w.transposed()) < 1e-12);
            // maximal rank
            CHECK(std::abs(num::determinant(w)) > 1e-12);
        }
    }
}

TEST_CASE("symplectic form is closed on phase space") {
    const auto& spec = load_model(ModelName::SL3);
    Rng rng(419);
    auto two_form = [&](const Vec& z) {
        PhasePoint pt;
        pt.p.assign(z.begin(), z.begin() + 5);
        pt.y.assign(z.begin() + 5, z.end());
        // evaluation matrix convention: w(e_a, e_b) = 2 * w_block(a, b)
        return gds::symplectic_form_gds(spec, pt) * 2.0;
    };
    for (int rep = 0; rep < 3; ++rep) {
        Vec z(10);
        for (double& v : z) v = rng.uniform(-0.8, 0.8);
        CHECK(num::fd_exterior_derivative_2form(two_form, z) < 1e-6);
    }
}

TEST_CASE("poisson brackets: momenta, reduction and antisymmetry") {
    const auto& sl3 = load_model(ModelName::SL3);
    const auto& f = models::solvable_structure_constants(sl3);
    Rng rng(421);
    const PhasePoint pt = random_phase(rng, 5);
    // {p_A, p_B} = -2 f_AB^C p_C
    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = 0; b < 5; ++b) {
            auto pa = [a](const PhasePoint& q) { return q.p[a]; };
            auto pb = [b](const PhasePoint& q) { return q.p[b]; };
            double expect = 0.0;
            for (std::size_t c = 0; c < 5; ++c) expect += -2.0 * f[c](a, b) * pt.p[c];
            CHECK(gds::poisson_bracket(sl3, pa, pb, pt) ==
                  doctest::Approx(expect).epsilon(1e-7));
        }
    // reduced bracket agrees with the full one on momentum-only functions
    auto fm = [](const Vec& p) { return p[0] * p[2] + p[4] * p[4]; };
    auto gm = [](const Vec& p) { return p[1] * p[3] - 0.3 * p[0]; };
    auto fp = [&fm](const PhasePoint& q) { return fm(q.p); };
    auto gp = [&gm](const PhasePoint& q) { return gm(q.p); };
    CHECK(gds::reduced_bracket(sl3, fm, gm, pt.p) ==
          doctest::Approx(gds::poisson_bracket(sl3, fp, gp, pt)).epsilon(1e-6));
    CHECK(std::abs(gds::poisson_bracket(sl3, fp, fp, pt)) < 1e-9);
}

TEST_CASE("jacobi and leibniz for the reduced bracket") {
    const auto& sl3 = load_model(ModelName::SL3);
    Rng rng(431);
    auto f1 = [](const Vec& p) { return p[0] * p[1] - p[2]; };
    auto f2 = [](const Vec& p) { return p[3] * p[3] + 0.5 * p[4]; };
    auto f3 = [](const Vec& p) { return p[0] + p[2] * p[4]; };
    for (int rep = 0; rep < 4; ++rep) {
        Vec p(5);
        for (double& v : p) v = rng.uniform(-1, 1);
        auto br = [&](auto a, auto b) {
            return gds::reduced_bracket(sl3, a, b, p);
        };
        auto br_fn = [&sl3](auto a, auto b) {
            return [&sl3, a, b](const Vec& q) { return gds::reduced_bracket(sl3, a, b, q); };
        };
        // Jacobi
        const double jac = br(br_fn(f1, f2), f3) + br(br_fn(f2, f3), f1) +
                           br(br_fn(f3, f1), f2);
        CHECK(std::abs(jac) < 1e-5);
        // Leibniz: {f1 f2, f3} = f1 {f2,f3} + f2 {f1,f3}
        auto prod = [&](const Vec& q) { return f1(q) * f2(q); };
        CHECK(br(prod, f3) ==
              doctest::Approx(f1(p) * br(f2, f3) + f2(p) * br(f1, f3)).epsilon(1e-6));
    }
}

TEST_CASE("three hamiltonians in involution; h3 is a momentum Casimir") {
    const auto& sl3 = load_model(ModelName::SL3);
    Rng rng(433);
    auto h1 = [](const Vec& p) { return gds::sl3_hamiltonians(p)[0]; };
    auto h2 = [](const Vec& p) { return gds::sl3_hamiltonians(p)[1]; };
    auto h3 = [](const Vec& p) { return gds::sl3_hamiltonians(p)[2]; };
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        Vec p(5);
        for (double& v : p) v = rng.uniform(-1.5, 1.5);
        if (std::abs(p[4]) < 0.3) p[4] = 0.3 + std::abs(p[4]);
        worst = std::max(worst, std::abs(gds::reduced_bracket(sl3, h1, h2, p)));
        worst = std::max(worst, std::abs(gds::reduced_bracket(sl3, h1, h3, p)));
        worst = std::max(worst, std::abs(gds::reduced_bracket(sl3, h2, h3, p)));
    }
    CHECK(worst < 1e-9);
    // Casimir against every momentum
    Vec p = {0.7, -0.4, 0.9, 0.6, 1.3};
    for (std::size_t a = 0; a < 5; ++a) {
        auto pa = [a](const Vec& q) { return q[a]; };
        CHECK(std::abs(gds::reduced_bracket(sl3, h3, pa, p)) < 1e-9);
    }
    // momentum-only involutive pairs stay involutive under the full bracket
    const PhasePoint pt = random_phase(rng, 5);
    PhasePoint pt2 = pt;
    if (std::abs(pt2.p[4]) < 0.3) pt2.p[4] = 0.5;
    auto h1p = [&](const PhasePoint& q) { return gds::sl3_hamiltonians(q.p)[0]; };
    auto h3p = [&](const PhasePoint& q) { return gds::sl3_hamiltonians(q.p)[2]; };
    CHECK(std::abs(gds::poisson_bracket(sl3, h1p, h3p, pt2)) < 1e-6);
}

TEST_CASE("momentum diagonalization") {
    const Vec p = {1, 1, 0, 0, 0};
    const Vec w = gds::w_change_of_variables(p);
    CHECK(w[3] == doctest::Approx(0.0));
    CHECK(w[4] == doctest::Approx(1.0 / std::sqrt(3.0)));
    Rng rng(439);
    for (int rep = 0; rep < 10; ++rep) {
        Vec q(5);
        for (double& v : q) v = rng.uniform(-2, 2);
        const Vec round = gds::w_change_inverse(gds::w_change_of_variables(q));
        for (std::size_t i = 0; i < 5; ++i) CHECK(round[i] == doctest::Approx(q[i]));
        const Vec ww = gds::w_change_of_variables(q);
        const auto& sl3 = load_model(ModelName::SL3);
        CHECK(num::dot(ww, ww) ==
              doctest::Approx(gds::gds_hamiltonian(sl3, q)).epsilon(1e-12));
    }
}

TEST_CASE("geodesics: abelian direction, conservation, coordinate equation") {
    const auto& sl3 = load_model(ModelName::SL3);
    // Cartan-only momentum: Pi constant, Y1 linear in t
    PhasePoint start;
    start.y = Vec(5, 0.0);
    start.p = Vec(5, 0.0);
    start.p[0] = 2.0;  // along T1
    const auto traj = gds::geodesic_integrate(sl3, start, 2.0, 200);
    const auto& last = traj.back();
    for (std::size_t a = 0; a < 5; ++a)
        CHECK(last.p[a] == doctest::Approx(start.p[a]).epsilon(1e-10));
    const Matrix ki = num::inverse(sl3.kappa);
    Vec pi0(5, 0.0);
    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = 0; b < 5; ++b) pi0[a] += ki(a, b) * start.p[b];
    CHECK(last.y[0] == doctest::Approx(2.0 * pi0[0]).epsilon(1e-9));
    CHECK(std::abs(last.y[2]) < 1e-10);

    // conservation of all three along a generic flow
    Rng rng(443);
    PhasePoint p0 = random_phase(rng, 5, 0.6);
    p0.p[4] = 0.8;
    const auto h0 = gds::sl3_hamiltonians(p0.p);
    const auto traj2 = gds::geodesic_integrate(sl3, p0, 10.0, 10000);
    const auto hT = gds::sl3_hamiltonians(traj2.back().p);
    CHECK(std::abs(hT[0] - h0[0]) <= 1e-8 * std::abs(h0[0]));
    CHECK(std::abs(hT[1] - h0[1]) <= 1e-7 * std::max(1.0, std::abs(h0[1])));
    CHECK(std::abs(hT[2] - h0[2]) <= 1e-7 * std::max(1.0, std::abs(h0[2])));

    // the flow satisfies the coordinate geodesic equation of the chart metric
    auto gfun = [&sl3](const Vec& y) { return coset::metric_at(sl3, y); };
    const auto short_traj = gds::geodesic_integrate(sl3, p0, 2e-3, 2);
    const Vec& ym = short_traj[0].y;
    const Vec& y1 = short_traj[1].y;
    const Vec& y2 = short_traj[2].y;
    // second derivative lives at the middle sample, so the connection is
    // evaluated there as well
    const auto christ = thermo::christoffel(thermo::metric_field(gfun), y1);
    const double dt = 1e-3;
    Vec ydot(5), yddot(5);
    for (std::size_t i = 0; i < 5; ++i) {
        ydot[i] = (y2[i] - ym[i]) / (2 * dt);
        yddot[i] = (y2[i] - 2 * y1[i] + ym[i]) / (dt * dt);
    }
    for (std::size_t a = 0; a < 5; ++a) {
        double acc = yddot[a];
        for (std::size_t b = 0; b < 5; ++b)
            for (std::size_t c = 0; c < 5; ++c)
                acc += christ[a](b, c) * ydot[b] * ydot[c];
        CHECK(std::abs(acc) < 1e-5);
    }

    // drift guard trips on absurd steps
    CHECK_THROWS_AS((void)gds::geodesic_integrate(sl3, p0, 10.0, 3), gds::StepTooLarge);
}

TEST_CASE("GDS partition function and its quadrature oracle") {
    const auto z0 = gds::gds_partition_sl3(1.0, 0.0, 1.0);
    CHECK(z0.value == doctest::Approx(2.0 * std::pow(kPi, 2.5)).epsilon(1e-12));
    const auto z1 = gds::gds_partition_sl3(1.0, 1.0, 1.0);
    CHECK(z1.value ==
          doctest::Approx(2.0 * std::pow(kPi, 2.5) * std::exp(1.0 / 12.0)).epsilon(1e-12));
    CHECK_THROWS_AS((void)gds::gds_partition_sl3(-1.0, 0.0, 1.0), gds::OutsideCone);

    for (auto [l1, l3, vol] : {std::array<double, 3>{1.0, 0.0, 1.0},
                               std::array<double, 3>{1.0, 1.0, 1.0},
                               std::array<double, 3>{2.2, -0.7, 1.6},
                               std::array<double, 3>{0.6, 0.9, 0.5}}) {
        const auto closed = gds::gds_partition_sl3(l1, l3, vol);
        const auto oracle = gds::gds_partition_sl3_quadrature(l1, l3, vol);
        CHECK(std::abs(oracle.value / closed.value - 1.0) < 1e-5);
    }
}

TEST_CASE("GDS thermodynamics") {
    const auto t = gds::gds_thermo(1.0, 0.0, 1.0);
    // Shannon functional at lambda3 = 0
    CHECK(t.shannon_information ==
          doctest::Approx(2.5 * std::log(1.0) - std::log(2.0) - 2.5 - 2.5 * std::log(kPi)));
    Rng rng(449);
    for (int rep = 0; rep < 4; ++rep) {
        const double l1 = rng.uniform(0.4, 2.5);
        const double l3 = rng.uniform(-1.5, 1.5);
        const double vol = rng.uniform(0.5, 2.0);
        const auto th = gds::gds_thermo(l1, l3, vol);
        CHECK(th.shannon_information ==
              doctest::Approx(2.5 * std::log(l1) - std::log(2.0 * vol) - 2.5 -
                              2.5 * std::log(kPi)).epsilon(1e-12));
        // metric signature (-,-,+)
        CHECK(th.metric(0, 0) < 0);
        CHECK(th.metric(2, 2) > 0);
        CHECK(th.metric(0, 0) * th.metric(1, 1) -
              th.metric(0, 1) * th.metric(0, 1) > 0);
        // constant frame curvature 1/10
        CHECK(std::abs(th.frame_curvature_12 - 0.1) < 1e-6);
        // dreibein squares to the metric with eta = (-,-,+)
        const Matrix e = gds::gds_thermo_dreibein(l1, l3, vol);
        Matrix eta(3, 3);
        eta(0, 0) = eta(1, 1) = -1;
        eta(2, 2) = 1;
        CHECK(max_abs(e.transposed() * eta * e - th.metric) < 1e-12);
    }
}
