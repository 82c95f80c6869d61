#include "geotherm/geometry/isometry.hpp"

#include <cmath>

#include "geotherm/numkit/cholesky.hpp"
#include "geotherm/numkit/fd.hpp"

namespace geotherm::isometry {

namespace {

using models::ModelName;

const double S2 = std::sqrt(2.0);

}  // namespace

bool is_group_element(const ModelSpec& spec, const Matrix& g, double tol) {
    if (g.rows() != spec.matrix_size || g.cols() != spec.matrix_size) return false;
    if (spec.invariant_form.rows() == spec.matrix_size) {
        const Matrix defect = g * spec.invariant_form * g.transposed() - spec.invariant_form;
        if (num::max_abs(defect) > tol * (1.0 + num::max_abs(g))) return false;
    }
    return std::abs(std::abs(num::determinant(g)) - 1.0) < tol * (1.0 + num::max_abs(g));
}

Vec act(const ModelSpec& spec, const Matrix& g, const Vec& y) {
    const Matrix l = coset::coset_rep(spec, y);
    const Matrix m = g * l * l.transposed() * g.transposed();
    const Matrix u = num::reverse_cholesky(m);
    return coset::sigma_log(spec, u);
}

Vec killing_field_generator(const ModelSpec& spec, const Matrix& generator, const Vec& y) {
    const double h = 1e-5;
    auto flow = [&](double t) {
        return act(spec, num::expm(generator * t), y);
    };
    const Vec p1 = flow(h), m1 = flow(-h), p2 = flow(0.5 * h), m2 = flow(-0.5 * h);
    Vec out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d1 = (p1[i] - m1[i]) / (2 * h);
        const double d2 = (p2[i] - m2[i]) / h;
        out[i] = (4 * d2 - d1) / 3;  // Richardson
    }
    return out;
}

Vec killing_field(const ModelSpec& spec, std::size_t lambda, const Vec& y) {
    return killing_field_generator(spec, spec.full.at(lambda), y);
}

bool has_closed_killing_fields(const ModelSpec& spec) {
    return spec.name == ModelName::H2 || spec.name == ModelName::SH2_vector;
}

namespace {

Vec killing_h2_closed(std::size_t lambda, const Vec& y) {
    const double x = y[0], t = y[1];
    switch (lambda) {
        case 0: return {std::exp(2 * x) * t, std::exp(-2 * x) - std::exp(2 * x) * (t * t + 1)};
        case 1: return {1.0, 0.0};
        case 2: return {0.0, std::exp(-2 * x)};
    }
    throw std::out_of_range("killing_h2_closed");
}

Vec killing_sh2_closed(std::size_t lambda, const Vec& y) {
    const double w1 = y[0], w2 = y[1], w3 = y[2], w4 = y[3], w5 = y[4], w6 = y[5];
    const auto e = [](double v) { return std::exp(v); };
    switch (lambda) {
        case 0: return {1, 0, 0, 0, 0, 0};
        case 1: return {0, 1, 0, 0, 0, 0};
        case 2:
            return {-0.5 * e(w1 - w2) * w3,
                    0.5 * e(w1 - w2) * w3,
                    0.5 * e(w1 - w2) * (w3 * w3 + 2) + e(w2 - w1),
                    0.25 * e(w1 - w2) * (w5 - w6) * (w5 + w6),
                    -e(w1 - w2) * w6 / S2,
                    e(w1 - w2) * w5 / S2};
        case 3:
            return {-0.5 * e(w1 + w2) * w4,
                    0.25 * e(w1 + w2) * (S2 * w5 * w6 - 2 * w4),
                    0.25 * e(w1 + w2) * (w5 * w5 + S2 * w3 * w6 * w5 - w6 * w6),
                    e(w1 + w2) * (8 * w4 * w4 - 4 * S2 * w5 * w6 * w4 +
                                  (w6 * w6 + 4) * (w6 * w6 + 4)) / 16.0 + e(-w1 - w2),
                    e(w1 + w2) * w6 * (w6 * w6 + 4) / (4 * S2),
                    -e(w1 + w2) * w5 * (w6 * w6 + 4) / (4 * S2)};
        case 4:
            return {-0.5 * e(w1) * w5,
                    -e(w1) * w3 * w6 / (2 * S2),
                    -e(w1) * (w3 * w3 + 2) * w6 / (2 * S2),
                    e(w1) * w6 * (w6 * w6 + 2 * w3 * w4 + 4) / (4 * S2),
                    0.25 * e(w1) * (w5 * w5 + 2 * w6 * w6 + 2 * w3 * w4 + 4) + e(-w1),
                    e(w1) * (w3 * (w6 * w6 + 4) - 4 * w4) / (4 * S2)};
        case 5:
            return {0,
                    -0.5 * e(w2) * w6,
                    -0.5 * e(w2) * (S2 * w5 + w3 * w6),
                    e(-w2) * w5 / S2 + 0.5 * e(w2) * w4 * w6,
                    e(-w2) * (e(2 * w2) * w4 - w3) / S2,
                    0.25 * e(w2) * (w6 * w6 + 4) + e(-w2)};
        case 6:
            return {0,
                    0.5 * e(w2) * w6,
                    0.5 * e(w2) * (S2 * w5 + w3 * w6),
                    e(-w2) * w5 / S2 - 0.5 * e(w2) * w4 * w6,
                    -e(-w2) * (w3 + e(2 * w2) * w4) / S2,
                    e(-w2) - 0.25 * e(w2) * (w6 * w6 + 4)};
        case 7:
            return {0.5 * e(w1) * w5,
                    e(w1) * w3 * w6 / (2 * S2),
                    e(w1) * (w3 * w3 + 2) * w6 / (2 * S2),
                    -e(w1) * w6 * (w6 * w6 + 2 * w3 * w4 + 4) / (4 * S2),
                    e(-w1) - 0.25 * e(w1) * (w5 * w5 + 2 * w6 * w6 + 2 * w3 * w4 + 4),
                    e(w1) * (4 * w4 - w3 * (w6 * w6 + 4)) / (4 * S2)};
        case 8:
            return {e(w1 - w2) * (w3 + e(2 * w2) * w4) / (2 * S2),
                    0.25 * e(w1 - w2) * (e(2 * w2) * (S2 * w4 - w5 * w6) - S2 * w3),
                    e(-w1 - w2) *
                        (e(2 * w2) * (4 - e(2 * w1) * (w5 * w5 + S2 * w3 * w6 * w5 - w6 * w6)) -
                         2 * e(2 * w1) * (w3 * w3 + 2)) /
                        (4 * S2),
                    e(-w1 - w2) *
                        (e(2 * w1) * (-4 * w5 * w5 + 4 * w6 * w6 -
                                      e(2 * w2) * (8 * w4 * w4 - 4 * S2 * w5 * w6 * w4 +
                                                   (w6 * w6 + 4) * (w6 * w6 + 4))) +
                         16) /
                        (16 * S2),
                    0.125 * e(w1 - w2) * w6 * (4 - e(2 * w2) * (w6 * w6 + 4)),
                    0.125 * e(w1 - w2) * w5 * (e(2 * w2) * (w6 * w6 + 4) - 4)};
        case 9:
            return {(e(w1 - w2) * w3 - e(w1 + w2) * w4) / (2 * S2),
                    -0.25 * e(w1 - w2) * (S2 * w3 + e(2 * w2) * (S2 * w4 - w5 * w6)),
                    e(-w1 - w2) *
                        (e(2 * w2) * (e(2 * w1) * (w5 * w5 + S2 * w3 * w6 * w5 - w6 * w6) + 4) -
                         2 * e(2 * w1) * (w3 * w3 + 2)) /
                        (4 * S2),
                    e(-w1 - w2) *
                        (e(2 * w1) * (-4 * w5 * w5 + 4 * w6 * w6 +
                                      e(2 * w2) * (8 * w4 * w4 - 4 * S2 * w5 * w6 * w4 +
                                                   (w6 * w6 + 4) * (w6 * w6 + 4))) -
                         16) /
                        (16 * S2),
                    0.125 * e(w1 - w2) * w6 * (e(2 * w2) * (w6 * w6 + 4) + 4),
                    -0.125 * e(w1 - w2) * w5 * (e(2 * w2) * (w6 * w6 + 4) + 4)};
    }
    throw std::out_of_range("killing_sh2_closed");
}

}  // namespace

Vec killing_field_closed(const ModelSpec& spec, std::size_t lambda, const Vec& y) {
    if (spec.name == ModelName::H2) return killing_h2_closed(lambda, y);
    if (spec.name == ModelName::SH2_vector) return killing_sh2_closed(lambda, y);
    return killing_field(spec, lambda, y);
}

double killing_algebra_residual(const ModelSpec& spec, const std::vector<Vec>& points,
                                bool sign_flip) {
    const auto& f = models::full_structure_constants(spec);
    const std::size_t n = spec.full_dim();
    double worst = 0.0;
    for (const Vec& y : points) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                auto field = [&](std::size_t lam) {
                    return [&spec, lam, sign_flip](const Vec& p) {
                        Vec v = killing_field_closed(spec, lam, p);
                        if (sign_flip && lam == 0)
                            for (double& x : v) x = -x;
                        return v;
                    };
                };
                const auto ka = field(a), kb = field(b);
                const Matrix ja = num::fd_jacobian(ka, y, 1e-5);
                const Matrix jb = num::fd_jacobian(kb, y, 1e-5);
                const Vec va = ka(y), vb = kb(y);
                Vec bracket(spec.dim_d, 0.0);
                for (std::size_t i = 0; i < spec.dim_d; ++i)
                    for (std::size_t j = 0; j < spec.dim_d; ++j)
                        bracket[i] += va[j] * jb(i, j) - vb[j] * ja(i, j);
                // left-action fields close on minus the structure constants
                for (std::size_t c = 0; c < n; ++c) {
                    if (f[c](a, b) == 0.0) continue;
                    const Vec kc = field(c)(y);
                    for (std::size_t i = 0; i < spec.dim_d; ++i)
                        bracket[i] += f[c](a, b) * kc[i];
                }
                worst = std::max(worst, num::max_abs(bracket));
            }
    }
    return worst;
}

Matrix adjoint_matrix(const ModelSpec& spec, const Matrix& g) {
    const std::size_t n = spec.full_dim();
    // Gram matrix of the full basis under the trace form
    Matrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            gram(i, j) = num::trace(Matrix(spec.full[i] * spec.full[j]));
    num::LuT<double> lu(gram);
    const Matrix gi = num::inverse(g);
    Matrix adj(n, n);
    for (std::size_t lam = 0; lam < n; ++lam) {
        const Matrix conj = gi * spec.full[lam] * g;
        Vec t(n);
        for (std::size_t k = 0; k < n; ++k) t[k] = num::trace(Matrix(conj * spec.full[k]));
        const Vec coeff = lu.solve(t);
        for (std::size_t s = 0; s < n; ++s) adj(lam, s) = coeff[s];
    }
    return adj;
}

Vec coadjoint_apply(const ModelSpec& spec, const Matrix& g, const Vec& tau) {
    const Matrix adj = adjoint_matrix(spec, g);
    Vec out(tau.size(), 0.0);
    for (std::size_t s = 0; s < tau.size(); ++s)
        for (std::size_t l = 0; l < tau.size(); ++l) out[s] += tau[l] * adj(l, s);
    return out;
}

Matrix h2_temperature_matrix(double delta, double beta, double zeta) {
    return Matrix{{beta, delta - zeta}, {-delta - zeta, -beta}};
}

H2Reduction reduce_temperature_h2(double delta, double beta, double zeta) {
    const double n2 = delta * delta - beta * beta - zeta * zeta;
    if (!(delta > 0.0) || !(n2 > 0.0))
        throw OutsideCone("reduce_temperature_h2: temperature outside the cone");
    const double n = std::sqrt(n2);
    const Matrix b = h2_temperature_matrix(delta, beta, zeta) * (1.0 / n);
    // columns (Bv, v) conjugate B/N to the rotation generator; seeding with
    // e2 keeps the frame positively oriented (det = (delta-zeta)/N > 0 on
    // the cone) and returns the identity for an already-reduced vector
    const Vec v = {0.0, 1.0};
    const Vec w = b * v;
    Matrix g{{w[0], v[0]}, {w[1], v[1]}};
    const double det = num::determinant(g);
    g *= 1.0 / std::sqrt(det);
    return {n, g};
}

}  // namespace geotherm::isometry
