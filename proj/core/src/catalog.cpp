#include "geotherm/models/model_spec.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace geotherm::models {

namespace {

using num::commutator;
using num::LuT;
using num::trace;

const double S2 = std::sqrt(2.0);

Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m(i - 1, j - 1) = 1.0;
    return m;
}

/// Solve T^T F + F T = 0 over all generators for a symmetric or antisymmetric
/// F by power-iteration-free nullspace extraction (normal equations + inverse
/// iteration would be overkill: the constraint matrix is tiny, so we just run
/// a dense eigen-ish sweep via repeated solves on A^T A + eps I).
Matrix invariant_bilinear_form(const std::vector<Matrix>& gens, std::size_t n,
                               bool symmetric) {
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = symmetric ? i : i + 1; j < n; ++j) idx.emplace_back(i, j);
    const std::size_t m = idx.size();

    // rows of the constraint matrix
    std::vector<Vec> rows;
    for (const Matrix& t : gens) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                Vec row(m, 0.0);
                auto add = [&](std::size_t i, std::size_t j, double v) {
                    for (std::size_t k = 0; k < m; ++k) {
                        if (idx[k].first == i && idx[k].second == j) {
                            row[k] += v;
                            return;
                        }
                        if (idx[k].first == j && idx[k].second == i) {
                            row[k] += symmetric ? v : -v;
                            return;
                        }
                    }
                };
                for (std::size_t c = 0; c < n; ++c) {
                    add(c, b, t(c, a));  // (T^T F)_{ab}
                    add(a, c, t(c, b));  // (F T)_{ab}
                }
                rows.push_back(std::move(row));
            }
    }
    // normal matrix
    Matrix ata(m, m);
    for (const Vec& r : rows)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) ata(i, j) += r[i] * r[j];
    // smallest eigenvector by inverse iteration on (A^T A + eps)
    Matrix shifted = ata;
    for (std::size_t i = 0; i < m; ++i) shifted(i, i) += 1e-12;
    LuT<double> lu(shifted);
    Vec v(m, 1.0 / std::sqrt(static_cast<double>(m)));
    for (int it = 0; it < 60; ++it) {
        v = lu.solve(v);
        double norm = std::sqrt(num::dot(v, v));
        for (double& x : v) x /= norm;
    }
    Matrix f(n, n);
    for (std::size_t k = 0; k < m; ++k) {
        f(idx[k].first, idx[k].second) = v[k];
        f(idx[k].second, idx[k].first) = symmetric ? v[k] : -v[k];
    }
    f *= 1.0 / num::max_abs(f);
    return f;
}

/// Orthonormal (trace form) completion of the compact subalgebra from the
/// commutators [K_i, K_j], excluding the given center direction.
std::vector<Matrix> complete_compact(const std::vector<Matrix>& coset,
                                     const Matrix& center) {
    std::vector<Matrix> basis;
    auto ip = [](const Matrix& a, const Matrix& b) {
        return trace(Matrix(a * b.transposed()));
    };
    Matrix c0 = center;
    c0 *= 1.0 / std::sqrt(ip(c0, c0));
    auto project_out = [&](Matrix m) {
        m -= c0 * ip(m, c0);
        for (const Matrix& b : basis) m -= b * ip(m, b);
        return m;
    };
    for (std::size_t i = 0; i < coset.size(); ++i)
        for (std::size_t j = i + 1; j < coset.size(); ++j) {
            Matrix h = project_out(commutator(coset[i], coset[j]));
            const double norm = std::sqrt(ip(h, h));
            if (norm > 1e-8) basis.push_back(h * (1.0 / norm));
        }
    return basis;
}

/// Normalized adjoint action of X_c on span{K_i}: A_ij = Tr([X_c,K_i] K_j)
/// rescaled so that it squares to minus the identity.
void kahler_adjoint(ModelSpec& spec) {
    const std::size_t d = spec.dim_d;
    Matrix a(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const Matrix c = commutator(spec.x_compact, spec.coset[i]);
        for (std::size_t j = 0; j < d; ++j) a(i, j) = trace(Matrix(c * spec.coset[j]));
    }
    const Matrix a2 = a * a;
    spec.adj_speed = std::sqrt(-a2(0, 0));
    spec.adj_norm = a * (1.0 / spec.adj_speed);
}

ModelSpec build_h2() {
    ModelSpec s;
    s.name = ModelName::H2;
    s.dim_d = 2;
    s.matrix_size = 2;
    const Matrix xc = {{0, 1}, {-1, 0}};
    const Matrix t1 = {{1, 0}, {0, -1}};
    const Matrix t2 = {{0, 1}, {0, 0}};
    const Matrix k1 = {{1 / S2, 0}, {0, -1 / S2}};
    const Matrix k2 = {{0, 1 / S2}, {1 / S2, 0}};
    s.solvable = {t1, t2};
    s.coset = {k1, k2};
    s.compact = {xc};
    s.full = {xc, t1, t2};  // temperature components (alpha, beta, gamma)
    s.nu = {{S2, 0}, {0, 1 / S2}};
    s.kappa = {{2, 0}, {0, 0.5}};
    s.is_kahler = true;
    s.x_compact = xc;
    // sl(2,R) = sp(2,R): the invariant form is the 2x2 symplectic one
    s.invariant_form = {{0, 1}, {-1, 0}};
    s.invariant_form_symmetric = false;
    kahler_adjoint(s);
    return s;
}

ModelSpec build_sl3() {
    ModelSpec s;
    s.name = ModelName::SL3;
    s.dim_d = 5;
    s.matrix_size = 3;
    const Matrix t1 = unit(3, 1, 1) - unit(3, 3, 3);
    const Matrix t2 = unit(3, 2, 2) - unit(3, 3, 3);
    const Matrix t3 = unit(3, 1, 2);
    const Matrix t4 = unit(3, 2, 3);
    const Matrix t5 = unit(3, 1, 3);
    s.solvable = {t1, t2, t3, t4, t5};
    const double s6 = std::sqrt(6.0);
    s.coset = {
        Matrix{{1 / S2, 0, 0}, {0, 0, 0}, {0, 0, -1 / S2}},
        Matrix{{-1 / s6, 0, 0}, {0, 2 / s6, 0}, {0, 0, -1 / s6}},
        (unit(3, 1, 2) + unit(3, 2, 1)) * (1 / S2),
        (unit(3, 2, 3) + unit(3, 3, 2)) * (1 / S2),
        (unit(3, 1, 3) + unit(3, 3, 1)) * (1 / S2),
    };
    s.compact = {
        (unit(3, 1, 2) - unit(3, 2, 1)) * (1 / S2),
        (unit(3, 2, 3) - unit(3, 3, 2)) * (1 / S2),
        (unit(3, 1, 3) - unit(3, 3, 1)) * (1 / S2),
    };
    s.full = s.solvable;
    for (const auto& h : s.compact) s.full.push_back(h);
    const double s32 = std::sqrt(1.5);
    s.nu = Matrix(5, 5);
    s.nu(0, 0) = S2;
    s.nu(0, 1) = 1 / S2;
    s.nu(1, 1) = s32;
    s.nu(2, 2) = s.nu(3, 3) = s.nu(4, 4) = 1 / S2;
    s.kappa = s.nu.transposed() * s.nu;
    s.is_kahler = false;
    return s;
}

std::vector<Matrix> sh2_vector_generators() {
    std::vector<Matrix> t(11, Matrix());
    t[1] = unit(5, 1, 1) - unit(5, 5, 5);
    t[2] = unit(5, 2, 2) - unit(5, 4, 4);
    t[3] = (unit(5, 1, 2) + unit(5, 2, 1) - unit(5, 4, 5) - unit(5, 5, 4)) * (1 / S2);
    t[4] = (unit(5, 1, 4) + unit(5, 4, 1) - unit(5, 2, 5) - unit(5, 5, 2)) * (1 / S2);
    t[5] = (unit(5, 1, 3) + unit(5, 3, 1) - unit(5, 3, 5) - unit(5, 5, 3)) * (1 / S2);
    t[6] = (unit(5, 2, 3) + unit(5, 3, 2) - unit(5, 3, 4) - unit(5, 4, 3)) * (1 / S2);
    t[7] = (unit(5, 2, 3) - unit(5, 3, 2) - unit(5, 3, 4) + unit(5, 4, 3)) * (1 / S2);
    t[8] = (unit(5, 1, 3) - unit(5, 3, 1) - unit(5, 3, 5) + unit(5, 5, 3)) * (1 / S2);
    t[9] = (unit(5, 1, 2) - unit(5, 2, 1) + unit(5, 1, 4) - unit(5, 4, 1) -
            unit(5, 2, 5) + unit(5, 5, 2) - unit(5, 4, 5) + unit(5, 5, 4)) * 0.5;
    t[10] = (unit(5, 1, 2) - unit(5, 2, 1) - unit(5, 1, 4) + unit(5, 4, 1) +
             unit(5, 2, 5) - unit(5, 5, 2) - unit(5, 4, 5) + unit(5, 5, 4)) * 0.5;
    return t;
}

std::vector<Matrix> sh2_spinor_generators() {
    std::vector<Matrix> t(11, Matrix());
    t[1] = Matrix{{-0.5, 0, 0, 0}, {0, -0.5, 0, 0}, {0, 0, 0.5, 0}, {0, 0, 0, 0.5}};
    t[2] = Matrix{{-0.5, 0, 0, 0}, {0, 0.5, 0, 0}, {0, 0, 0.5, 0}, {0, 0, 0, -0.5}};
    t[3] = (unit(4, 2, 4) + unit(4, 4, 2)) * (1 / S2);
    t[4] = (unit(4, 1, 3) + unit(4, 3, 1)) * (-1 / S2);
    t[5] = (unit(4, 1, 4) + unit(4, 4, 1) + unit(4, 2, 3) + unit(4, 3, 2)) * 0.5;
    t[6] = (unit(4, 1, 2) + unit(4, 2, 1) - unit(4, 3, 4) - unit(4, 4, 3)) * 0.5;
    t[7] = (unit(4, 1, 2) - unit(4, 2, 1) + unit(4, 3, 4) - unit(4, 4, 3)) * 0.5;
    t[8] = (unit(4, 1, 4) - unit(4, 4, 1) + unit(4, 2, 3) - unit(4, 3, 2)) * 0.5;
    t[9] = (unit(4, 3, 1) - unit(4, 1, 3) + unit(4, 2, 4) - unit(4, 4, 2)) * 0.5;
    t[10] = (unit(4, 1, 3) - unit(4, 3, 1) + unit(4, 2, 4) - unit(4, 4, 2)) * 0.5;
    return t;
}

ModelSpec build_sh2(bool spinor) {
    ModelSpec s;
    s.name = spinor ? ModelName::SH2_spinor : ModelName::SH2_vector;
    s.dim_d = 6;
    s.matrix_size = spinor ? 4 : 5;
    const auto t = spinor ? sh2_spinor_generators() : sh2_vector_generators();
    // trace-orthonormal coset generators; the spinor table already satisfies
    // Tr T_i T_j = delta_ij, the vector one carries a factor 2
    for (int i = 1; i <= 6; ++i) s.coset.push_back(spinor ? t[i] : t[i] * (1 / S2));
    for (int i = 7; i <= 10; ++i) s.compact.push_back(t[i]);
    for (int i = 1; i <= 10; ++i) s.full.push_back(t[i]);
    // Solvable basis pairing with the chart: the Cartan directions are the
    // chart velocities T1, T2 themselves; the nilpotent basis elements are
    // twice the chart velocities, 2 dL/dw_A|_0 = (H-part) + T_A, which makes
    // the closed-form sechsbein exactly the left-invariant forms and kappa
    // the identity.
    const Matrix& h1 = t[7];
    const Matrix& h2 = t[8];
    const Matrix& h3 = t[9];
    const Matrix& h0 = t[10];
    s.solvable = {t[1],
                  t[2],
                  (h0 + h3) * (1 / S2) + t[3],
                  (h3 - h0) * (1 / S2) + t[4],
                  h2 + t[5],
                  h1 + t[6]};
    // with this basis the closed-form sechsbein are the left-invariant forms
    // themselves, so the vielbein change of basis is trivial
    s.nu = Matrix::identity(6);
    s.kappa = Matrix::identity(6);
    s.is_kahler = true;
    s.x_compact = h0;
    std::vector<Matrix> all;
    for (int i = 1; i <= 10; ++i) all.push_back(t[i]);
    s.invariant_form_symmetric = !spinor;
    s.invariant_form = invariant_bilinear_form(all, s.matrix_size, !spinor);
    kahler_adjoint(s);
    return s;
}

ModelSpec build_m22() {
    ModelSpec s;
    s.name = ModelName::M22;
    s.dim_d = 8;
    s.matrix_size = 6;
    auto u = [](std::size_t i, std::size_t j) { return unit(6, i, j); };
    s.solvable = {
        u(1, 1) - u(6, 6),
        u(2, 2) - u(5, 5),
        (u(1, 2) - u(5, 6)) * (1 / S2),
        (u(1, 5) - u(2, 6)) * (1 / S2),
        (u(1, 3) - u(3, 6)) * (1 / S2),
        (u(1, 4) - u(4, 6)) * (1 / S2),
        (u(2, 3) - u(3, 5)) * (1 / S2),
        (u(2, 4) - u(4, 5)) * (1 / S2),
    };
    // trace-orthonormal coset generators (the raw table carries Tr K^2 = 2)
    std::vector<Matrix> k_raw = {
        u(1, 1) - u(6, 6),
        u(2, 2) - u(5, 5),
        (u(1, 2) + u(2, 1) - u(5, 6) - u(6, 5)) * (1 / S2),
        (u(1, 5) + u(5, 1) - u(2, 6) - u(6, 2)) * (1 / S2),
        (u(1, 3) + u(3, 1) - u(3, 6) - u(6, 3)) * (1 / S2),
        (u(1, 4) + u(4, 1) - u(4, 6) - u(6, 4)) * (1 / S2),
        (u(2, 3) + u(3, 2) - u(3, 5) - u(5, 3)) * (1 / S2),
        (u(2, 4) + u(4, 2) - u(4, 5) - u(5, 4)) * (1 / S2),
    };
    for (const Matrix& k : k_raw) s.coset.push_back(k * (1 / S2));
    s.x_compact = (u(1, 2) - u(2, 1) - u(1, 5) + u(5, 1) + u(2, 6) - u(6, 2) -
                   u(5, 6) + u(6, 5)) * 0.5;
    s.compact = complete_compact(s.coset, s.x_compact);
    s.compact.push_back(s.x_compact);  // center last
    s.full = s.coset;
    for (const auto& h : s.compact) s.full.push_back(h);
    s.nu = Matrix(8, 8);
    s.nu(0, 0) = s.nu(1, 1) = 1.0;
    for (std::size_t i = 2; i < 8; ++i) s.nu(i, i) = 0.5;
    s.kappa = s.nu.transposed() * s.nu;
    s.is_kahler = true;
    std::vector<Matrix> all = s.full;
    s.invariant_form_symmetric = true;
    s.invariant_form = invariant_bilinear_form(all, 6, true);
    kahler_adjoint(s);
    return s;
}

struct Catalog {
    std::map<ModelName, ModelSpec> specs;
    std::map<ModelName, std::vector<Matrix>> solv_f;
    std::map<ModelName, std::vector<Matrix>> full_f;
    std::mutex mu;
};

Catalog& catalog() {
    static Catalog c;
    return c;
}

}  // namespace

ModelName parse_model_name(const std::string& s) {
    std::string t;
    for (char ch : s) t += static_cast<char>(std::tolower(ch));
    if (t == "h2") return ModelName::H2;
    if (t == "sl3") return ModelName::SL3;
    if (t == "sh2" || t == "sh2_vector" || t == "sh2-vector") return ModelName::SH2_vector;
    if (t == "sh2_spinor" || t == "sh2-spinor") return ModelName::SH2_spinor;
    if (t == "m22") return ModelName::M22;
    throw UnknownModel("unknown model: " + s);
}

std::string to_string(ModelName name) {
    switch (name) {
        case ModelName::H2: return "h2";
        case ModelName::SL3: return "sl3";
        case ModelName::SH2_vector: return "sh2_vector";
        case ModelName::SH2_spinor: return "sh2_spinor";
        case ModelName::M22: return "m22";
    }
    return "?";
}

std::vector<Matrix> structure_constants(const std::vector<Matrix>& basis,
                                        double* closure_residual) {
    const std::size_t d = basis.size();
    std::vector<Matrix> f(d, Matrix(d, d));
    double worst = 0.0;
    for (std::size_t b = 0; b < d; ++b)
        for (std::size_t c = 0; c < d; ++c) {
            double res = 0.0;
            const Vec coeff = num::expand_in_basis(commutator(basis[b], basis[c]), basis, &res);
            worst = std::max(worst, res);
            for (std::size_t a = 0; a < d; ++a) f[a](b, c) = coeff[a];
        }
    if (closure_residual) *closure_residual = worst;
    return f;
}

double jacobi_residual(const std::vector<Matrix>& f) {
    const std::size_t d = f.size();
    double worst = 0.0;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t e = 0; e < d; ++e) {
                    double s = 0.0;
                    for (std::size_t m = 0; m < d; ++m)
                        s += f[m](a, b) * f[e](m, c) + f[m](b, c) * f[e](m, a) +
                             f[m](c, a) * f[e](m, b);
                    worst = std::max(worst, std::abs(s));
                }
    return worst;
}

const ModelSpec& load_model(ModelName name) {
    Catalog& c = catalog();
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.specs.find(name);
    if (it != c.specs.end()) return it->second;
    ModelSpec spec;
    switch (name) {
        case ModelName::H2: spec = build_h2(); break;
        case ModelName::SL3: spec = build_sl3(); break;
        case ModelName::SH2_vector: spec = build_sh2(false); break;
        case ModelName::SH2_spinor: spec = build_sh2(true); break;
        case ModelName::M22: spec = build_m22(); break;
    }
    return c.specs.emplace(name, std::move(spec)).first->second;
}

const std::vector<Matrix>& solvable_structure_constants(const ModelSpec& spec) {
    Catalog& c = catalog();
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.solv_f.find(spec.name);
    if (it != c.solv_f.end()) return it->second;
    return c.solv_f.emplace(spec.name, structure_constants(spec.solvable)).first->second;
}

const std::vector<Matrix>& full_structure_constants(const ModelSpec& spec) {
    Catalog& c = catalog();
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.full_f.find(spec.name);
    if (it != c.full_f.end()) return it->second;
    return c.full_f.emplace(spec.name, structure_constants(spec.full)).first->second;
}

}  // namespace geotherm::models
