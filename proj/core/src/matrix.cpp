#include "geotherm/numkit/matrix.hpp"

namespace geotherm::num {

double pfaffian(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("pfaffian needs a square matrix");
    if (n % 2 != 0) return 0.0;
    if (n == 0) return 1.0;
    if (n == 2) return m(0, 1);
    double pf = 0.0;
    double sign = 1.0;
    for (std::size_t j = 1; j < n; ++j) {
        // minor with rows/cols 0 and j removed
        Matrix sub(n - 2, n - 2);
        std::size_t r = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (i == j) continue;
            std::size_t c = 0;
            for (std::size_t k = 1; k < n; ++k) {
                if (k == j) continue;
                sub(r, c) = m(i, k);
                ++c;
            }
            ++r;
        }
        pf += sign * m(0, j) * pfaffian(sub);
        sign = -sign;
    }
    return pf;
}

Matrix expm(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("expm needs a square matrix");
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(m(i, j));
        norm = std::max(norm, row);
    }
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    Matrix x = m * scale;
    Matrix term = Matrix::identity(n);
    Matrix sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = term * x;
        term *= 1.0 / k;
        sum += term;
        if (max_abs(term) < 1e-19) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

Vec expand_in_basis(const Matrix& target, const std::vector<Matrix>& basis,
                    double* residual) {
    const std::size_t k = basis.size();
    Matrix gram(k, k);
    Vec rhs(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            double s = 0.0;
            for (std::size_t q = 0; q < basis[i].data().size(); ++q)
                s += basis[i].data()[q] * basis[j].data()[q];
            gram(i, j) = gram(j, i) = s;
        }
        double r = 0.0;
        for (std::size_t q = 0; q < basis[i].data().size(); ++q)
            r += basis[i].data()[q] * target.data()[q];
        rhs[i] = r;
    }
    Vec coeff = LuT<double>(gram).solve(rhs);
    if (residual) {
        Matrix rec(target.rows(), target.cols());
        for (std::size_t i = 0; i < k; ++i) rec += basis[i] * coeff[i];
        *residual = max_abs(rec - target);
    }
    return coeff;
}

}  // namespace geotherm::num
