#include <cmath>
#include <mutex>

#include "geotherm/models/model_spec.hpp"

namespace geotherm::models {

namespace {

using num::LuT;
using num::Matrix;
using num::trace;
using num::Vec;

constexpr std::size_t kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

Matrix antisym_from(const Vec& v, std::size_t offset) {
    Matrix a(4, 4);
    for (std::size_t k = 0; k < 6; ++k) {
        a(kPairs[k][0], kPairs[k][1]) = v[offset + k];
        a(kPairs[k][1], kPairs[k][0]) = -v[offset + k];
    }
    return a;
}

struct CoveringData {
    Matrix c_form;          // symplectic invariant of the spinor basis
    Matrix c_inv;
    std::vector<Matrix> basis;  // five C-traceless antisymmetric matrices
    Matrix gram_inv;
};

/// Basis of C-traceless antisymmetric 4x4 matrices intertwining the spinor
/// action A -> S^T A S with the vector representation: infinitesimally
///   T_s^T A_j + A_j T_s = sum_i A_i (T_v)_ij
/// for every generator pair (T_s, T_v). The solution space is
/// one-dimensional; any overall scale cancels in the coefficient expansion.
CoveringData build_covering() {
    const ModelSpec& sv = load_model(ModelName::SH2_vector);
    const ModelSpec& ss = load_model(ModelName::SH2_spinor);
    CoveringData data;
    data.c_form = ss.invariant_form;
    data.c_inv = num::inverse(data.c_form);

    std::vector<Vec> rows;
    for (std::size_t lam = 0; lam < 10; ++lam) {
        const Matrix& ts = ss.full[lam];
        const Matrix& tv = sv.full[lam];
        for (std::size_t j = 0; j < 5; ++j)
            for (std::size_t k = 0; k < 6; ++k) {
                Vec row(30, 0.0);
                for (std::size_t kk = 0; kk < 6; ++kk) {
                    Vec e(30, 0.0);
                    e[j * 6 + kk] = 1.0;
                    const Matrix me = antisym_from(e, j * 6);
                    const Matrix x = ts.transposed() * me + me * ts;
                    row[j * 6 + kk] += x(kPairs[k][0], kPairs[k][1]);
                }
                for (std::size_t i = 0; i < 5; ++i) row[i * 6 + k] -= tv(i, j);
                rows.push_back(std::move(row));
            }
    }
    for (std::size_t j = 0; j < 5; ++j) {
        Vec row(30, 0.0);
        for (std::size_t kk = 0; kk < 6; ++kk) {
            Vec e(30, 0.0);
            e[j * 6 + kk] = 1.0;
            row[j * 6 + kk] = trace(Matrix(data.c_inv * antisym_from(e, j * 6)));
        }
        rows.push_back(std::move(row));
    }
    Matrix ata(30, 30);
    for (const Vec& r : rows)
        for (std::size_t i = 0; i < 30; ++i)
            for (std::size_t j = 0; j < 30; ++j) ata(i, j) += r[i] * r[j];
    Matrix shifted = ata;
    for (std::size_t i = 0; i < 30; ++i) shifted(i, i) += 1e-12;
    LuT<double> lu(shifted);
    Vec v(30, 1.0 / std::sqrt(30.0));
    for (int it = 0; it < 80; ++it) {
        v = lu.solve(v);
        double norm = std::sqrt(num::dot(v, v));
        for (double& x : v) x /= norm;
    }
    for (std::size_t j = 0; j < 5; ++j) data.basis.push_back(antisym_from(v, j * 6));

    Matrix gram(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            gram(i, j) = trace(Matrix(data.c_inv * data.basis[i] * data.c_inv * data.basis[j]));
    data.gram_inv = num::inverse(gram);
    return data;
}

const CoveringData& covering_data() {
    static CoveringData data = build_covering();
    return data;
}

}  // namespace

Matrix spinor_vector_covering(const Matrix& s, double tol) {
    const CoveringData& cd = covering_data();
    const Matrix defect = s * cd.c_form * s.transposed() - cd.c_form;
    if (num::max_abs(defect) > tol)
        throw NotSymplectic("spinor_vector_covering: input does not preserve the symplectic form");
    Matrix o(5, 5);
    for (std::size_t j = 0; j < 5; ++j) {
        const Matrix bj = s.transposed() * cd.basis[j] * s;
        Vec t(5);
        for (std::size_t k = 0; k < 5; ++k)
            t[k] = trace(Matrix(cd.c_inv * cd.basis[k] * cd.c_inv * bj));
        const Vec col = cd.gram_inv * t;
        for (std::size_t i = 0; i < 5; ++i) o(i, j) = col[i];
    }
    return o;
}

}  // namespace geotherm::models
