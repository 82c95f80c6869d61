#include "geotherm/geometry/coset.hpp"

#include <cmath>

#include "geotherm/numkit/fd.hpp"

namespace geotherm::coset {

namespace {

using models::ModelName;

const double S2 = std::sqrt(2.0);

Matrix rep_h2(const Vec& y) {
    Matrix l(2, 2);
    l(0, 0) = std::exp(y[0]);
    l(0, 1) = std::exp(y[0]) * y[1];
    l(1, 1) = std::exp(-y[0]);
    return l;
}

Matrix rep_sl3(const Vec& y) {
    Matrix l(3, 3);
    l(0, 0) = std::exp(y[0]);
    l(0, 1) = std::exp(y[0]) * y[2];
    l(0, 2) = std::exp(y[0]) * (y[2] * y[3] + y[4]);
    l(1, 1) = std::exp(y[1]);
    l(1, 2) = std::exp(y[1]) * y[3];
    l(2, 2) = std::exp(-y[0] - y[1]);
    return l;
}

Matrix rep_sh2_vector(const Vec& w) {
    const double e1 = std::exp(w[0]), e2 = std::exp(w[1]);
    const double w3 = w[2], w4 = w[3], w5 = w[4], w6 = w[5];
    Matrix l(5, 5);
    l(0, 0) = e1;
    l(0, 1) = e1 * w3 / S2;
    l(0, 2) = 0.5 * e1 * (w3 * w6 + S2 * w5);
    l(0, 3) = 0.125 * e1 * (-S2 * w3 * w6 * w6 + 4 * S2 * w4 - 4 * w5 * w6);
    l(0, 4) = -0.25 * e1 * (2 * w3 * w4 + w5 * w5);
    l(1, 1) = e2;
    l(1, 2) = e2 * w6 / S2;
    l(1, 3) = -0.25 * e2 * w6 * w6;
    l(1, 4) = -e2 * w4 / S2;
    l(2, 2) = 1.0;
    l(2, 3) = -w6 / S2;
    l(2, 4) = -w5 / S2;
    l(3, 3) = 1.0 / e2;
    l(3, 4) = -w3 / (S2 * e2);
    l(4, 4) = 1.0 / e1;
    return l;
}

Matrix rep_sh2_spinor(const Vec& w) {
    const double w1 = w[0], w2 = w[1], w3 = w[2], w4 = w[3], w5 = w[4], w6 = w[5];
    Matrix s(4, 4);
    s(0, 0) = std::exp(0.5 * (-w1 - w2));
    s(0, 1) = 0.5 * std::exp(0.5 * (w2 - w1)) * w6;
    s(0, 2) = 0.25 * std::exp(0.5 * (w1 + w2)) * (w5 * w6 - 2 * S2 * w4);
    s(0, 3) = 0.25 * std::exp(0.5 * (w1 - w2)) * (2 * w5 + S2 * w3 * w6);
    s(1, 1) = std::exp(0.5 * (w2 - w1));
    s(1, 2) = 0.5 * std::exp(0.5 * (w1 + w2)) * w5;
    s(1, 3) = std::exp(0.5 * (w1 - w2)) * w3 / S2;
    s(2, 2) = std::exp(0.5 * (w1 + w2));
    s(3, 2) = -0.5 * std::exp(0.5 * (w1 + w2)) * w6;
    s(3, 3) = std::exp(0.5 * (w1 - w2));
    return s;
}

Matrix rep_m22(const Vec& y) {
    const double e1 = std::exp(y[0]), e2 = std::exp(y[1]);
    const double y3 = y[2], y4 = y[3];
    const double u1 = y[4], u2 = y[5], v1 = y[6], v2 = y[7];
    const double uv = u1 * v1 + u2 * v2;
    const double vv = v1 * v1 + v2 * v2;
    const double uu = u1 * u1 + u2 * u2;
    Matrix l(6, 6);
    l(0, 0) = e1;
    l(0, 1) = e1 * y3 / S2;
    l(0, 2) = 0.5 * e1 * (S2 * u1 + y3 * v1);
    l(0, 3) = 0.5 * e1 * (S2 * u2 + y3 * v2);
    l(0, 4) = -0.125 * e1 * (4 * uv + S2 * (y3 * vv - 4 * y4));
    l(0, 5) = -0.25 * e1 * (uu + 2 * y3 * y4);
    l(1, 1) = e2;
    l(1, 2) = e2 * v1 / S2;
    l(1, 3) = e2 * v2 / S2;
    l(1, 4) = -0.25 * e2 * vv;
    l(1, 5) = -e2 * y4 / S2;
    l(2, 2) = 1.0;
    l(2, 4) = -v1 / S2;
    l(2, 5) = -u1 / S2;
    l(3, 3) = 1.0;
    l(3, 4) = -v2 / S2;
    l(3, 5) = -u2 / S2;
    l(4, 4) = 1.0 / e2;
    l(4, 5) = -y3 / (S2 * e2);
    l(5, 5) = 1.0 / e1;
    return l;
}

Matrix emat_h2(const Vec& y) {
    Matrix e = Matrix::identity(2);
    e(1, 0) = 2 * y[1];
    return e;
}

Matrix emat_sl3(const Vec& y) {
    const double y3 = y[2], y4 = y[3], y5 = y[4];
    Matrix e = Matrix::identity(5);
    e(2, 0) = y3;
    e(2, 1) = -y3;
    e(3, 0) = y4;
    e(3, 1) = 2 * y4;
    e(4, 0) = y3 * y4 + 2 * y5;
    e(4, 1) = -y3 * y4 + y5;
    e(4, 2) = y4;
    return e;
}

Matrix emat_sh2(const Vec& w) {
    const double w3 = w[2], w4 = w[3], w5 = w[4], w6 = w[5];
    Matrix e(6, 6);
    e(0, 0) = 1.0;
    e(1, 1) = 1.0;
    e(2, 0) = 0.5 * w3;
    e(2, 1) = -0.5 * w3;
    e(2, 2) = 0.5;
    e(3, 0) = 0.125 * (-w6 * w6 * w3 - 2 * S2 * w6 * w5 + 4 * w4);
    e(3, 1) = 0.125 * (w6 * w6 * w3 + 4 * w4);
    e(3, 2) = -0.125 * w6 * w6;
    e(3, 3) = 0.5;
    e(3, 4) = -0.25 * S2 * w6;
    e(4, 0) = 0.25 * (2 * w5 + S2 * w6 * w3);
    e(4, 1) = -0.25 * S2 * w6 * w3;
    e(4, 2) = 0.25 * S2 * w6;
    e(4, 4) = 0.5;
    e(5, 1) = 0.5 * w6;
    e(5, 5) = 0.5;
    return e;
}

Matrix emat_m22(const Vec& y) {
    const double y3 = y[2], y4 = y[3];
    const double u1 = y[4], u2 = y[5], v1 = y[6], v2 = y[7];
    Matrix e = Matrix::identity(8);
    e(2, 0) = y3;
    e(2, 1) = -y3;
    e(3, 0) = 0.25 * (-y3 * v1 * v1 - 2 * S2 * u1 * v1 - y3 * v2 * v2 - 2 * S2 * u2 * v2 + 4 * y4);
    e(3, 1) = 0.25 * (y3 * v1 * v1 + y3 * v2 * v2 + 4 * y4);
    e(3, 2) = -0.25 * (v1 * v1 + v2 * v2);
    e(3, 4) = -0.5 * S2 * v1;
    e(3, 5) = -0.5 * S2 * v2;
    e(4, 0) = u1 + y3 * v1 / S2;
    e(4, 1) = -y3 * v1 / S2;
    e(4, 2) = v1 / S2;
    e(5, 0) = u2 + y3 * v2 / S2;
    e(5, 1) = -y3 * v2 / S2;
    e(5, 2) = v2 / S2;
    e(6, 1) = v1;
    e(7, 1) = v2;
    return e;
}

Vec slog_h2(const Matrix& l) { return {std::log(l(0, 0)), l(0, 1) / l(0, 0)}; }

Vec slog_sl3(const Matrix& l) {
    const double y1 = std::log(l(0, 0));
    const double y2 = std::log(l(1, 1));
    const double y3 = l(0, 1) / l(0, 0);
    const double y4 = l(1, 2) / l(1, 1);
    const double y5 = l(0, 2) / l(0, 0) - y3 * y4;
    return {y1, y2, y3, y4, y5};
}

Vec slog_sh2(const Matrix& l) {
    const double w1 = std::log(l(0, 0));
    const double w2 = std::log(l(1, 1));
    const double w6 = -S2 * l(2, 3);
    const double w5 = -S2 * l(2, 4);
    const double w3 = -S2 * std::exp(w2) * l(3, 4);
    const double w4 = -S2 * std::exp(-w2) * l(1, 4);
    return {w1, w2, w3, w4, w5, w6};
}

Vec slog_m22(const Matrix& l) {
    const double y1 = std::log(l(0, 0));
    const double y2 = std::log(l(1, 1));
    const double v1 = -S2 * l(2, 4);
    const double v2 = -S2 * l(3, 4);
    const double u1 = -S2 * l(2, 5);
    const double u2 = -S2 * l(3, 5);
    const double y3 = -S2 * std::exp(y2) * l(4, 5);
    const double y4 = -S2 * std::exp(-y2) * l(1, 5);
    return {y1, y2, y3, y4, u1, u2, v1, v2};
}

void check_point(const ModelSpec& spec, const Vec& y) {
    if (y.size() != spec.dim_d)
        throw std::invalid_argument("point dimension does not match the model");
    for (double v : y)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite chart coordinate");
}

}  // namespace

Matrix coset_rep(const ModelSpec& spec, const Vec& y) {
    check_point(spec, y);
    switch (spec.name) {
        case ModelName::H2: return rep_h2(y);
        case ModelName::SL3: return rep_sl3(y);
        case ModelName::SH2_vector: return rep_sh2_vector(y);
        case ModelName::SH2_spinor: return rep_sh2_spinor(y);
        case ModelName::M22: return rep_m22(y);
    }
    throw models::UnknownModel("coset_rep");
}

Vec sigma_log(const ModelSpec& spec, const Matrix& l_tri) {
    if (l_tri.rows() != spec.matrix_size || l_tri.cols() != spec.matrix_size)
        throw NotInImage("sigma_log: wrong matrix size");
    for (std::size_t i = 0; i < l_tri.rows(); ++i) {
        if (!(l_tri(i, i) > 0.0)) throw NotInImage("sigma_log: non-positive diagonal");
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(l_tri(i, j)) > 1e-9 * (1.0 + num::max_abs(l_tri)))
                throw NotInImage("sigma_log: matrix not upper triangular");
    }
    Vec y;
    switch (spec.name) {
        case ModelName::H2: y = slog_h2(l_tri); break;
        case ModelName::SL3: y = slog_sl3(l_tri); break;
        case ModelName::SH2_vector: y = slog_sh2(l_tri); break;
        case ModelName::M22: y = slog_m22(l_tri); break;
        case ModelName::SH2_spinor:
            throw NotInImage("sigma_log: spinor representative is not upper triangular");
    }
    const Matrix rec = coset_rep(spec, y);
    if (num::max_abs(rec - l_tri) > 1e-8 * (1.0 + num::max_abs(l_tri)))
        throw NotInImage("sigma_log: matrix is not a coset representative");
    return y;
}

CoFrame left_invariant_forms(const ModelSpec& spec, const Vec& y) {
    check_point(spec, y);
    CoFrame f;
    switch (spec.name) {
        case ModelName::H2: f.e_matrix = emat_h2(y); break;
        case ModelName::SL3: f.e_matrix = emat_sl3(y); break;
        case ModelName::SH2_vector:
        case ModelName::SH2_spinor: f.e_matrix = emat_sh2(y); break;
        case ModelName::M22: f.e_matrix = emat_m22(y); break;
    }
    f.v_matrix = spec.nu * f.e_matrix;
    return f;
}

namespace {

double mc_residual_impl(const ModelSpec& spec, const Vec& y, double perturbation) {
    const auto& f = models::solvable_structure_constants(spec);
    const std::size_t d = spec.dim_d;
    double worst = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
        auto row = [&spec, a](const Vec& p) {
            const Matrix e = left_invariant_forms(spec, p).e_matrix;
            Vec r(p.size());
            for (std::size_t al = 0; al < p.size(); ++al) r[al] = e(a, al);
            return r;
        };
        const Matrix de = num::fd_exterior_derivative(row, y);
        // wedge term: (e^B ^ e^C)(u,v) = e^B_u e^C_v - e^B_v e^C_u
        const Matrix e = left_invariant_forms(spec, y).e_matrix;
        for (std::size_t al = 0; al < d; ++al)
            for (std::size_t be = al + 1; be < d; ++be) {
                double wedge = 0.0;
                for (std::size_t b = 0; b < d; ++b)
                    for (std::size_t c = 0; c < d; ++c) {
                        double fp = f[a](b, c);
                        if (b == 0 && c == 1) fp += perturbation;
                        if (b == 1 && c == 0) fp -= perturbation;
                        wedge += fp * (e(b, al) * e(c, be) - e(b, be) * e(c, al));
                    }
                worst = std::max(worst, std::abs(de(al, be) + 0.5 * wedge));
            }
    }
    return worst;
}

}  // namespace

double maurer_cartan_residual(const ModelSpec& spec, const Vec& y) {
    return mc_residual_impl(spec, y, 0.0);
}

double maurer_cartan_residual_perturbed(const ModelSpec& spec, const Vec& y,
                                        double perturbation) {
    return mc_residual_impl(spec, y, perturbation);
}

Matrix metric_at(const ModelSpec& spec, const Vec& y) {
    const Matrix e = left_invariant_forms(spec, y).e_matrix;
    return e.transposed() * spec.kappa * e;
}

Matrix kahler_form_at(const ModelSpec& spec, const Vec& y) {
    if (!spec.is_kahler) throw models::NotKahler("kahler_form_at: model is not Kahler");
    const Matrix v = left_invariant_forms(spec, y).v_matrix;
    const Matrix half = v.transposed() * spec.adj_norm * v;
    return half - half.transposed();
}

Matrix complex_structure_at(const ModelSpec& spec, const Vec& y) {
    if (!spec.is_kahler) throw models::NotKahler("complex_structure_at: model is not Kahler");
    const Matrix v = left_invariant_forms(spec, y).v_matrix;
    const Matrix half = v.transposed() * spec.adj_norm * v;
    return half * num::inverse(metric_at(spec, y));
}

double volume_density(const ModelSpec& spec, const Vec& y) {
    return num::pfaffian(kahler_form_at(spec, y));
}

}  // namespace geotherm::coset
