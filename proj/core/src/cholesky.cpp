#include "geotherm/numkit/cholesky.hpp"

#include <cmath>

namespace geotherm::num {

Matrix reverse_cholesky(const Matrix& m, double sym_tol) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw NotSymmetric("reverse_cholesky: matrix not square");
    double scale = max_abs(m);
    if (scale == 0.0) throw NotPositiveDefinite("reverse_cholesky: zero matrix");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(m(i, j) - m(j, i)) > sym_tol * scale)
                throw NotSymmetric("reverse_cholesky: matrix not symmetric");

    Matrix u(n, n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = m(ii, ii);
        for (std::size_t k = ii + 1; k < n; ++k) s -= u(ii, k) * u(ii, k);
        if (!(s > 0.0)) throw NotPositiveDefinite("reverse_cholesky: pivot <= 0");
        u(ii, ii) = std::sqrt(s);
        for (std::size_t jj = ii; jj-- > 0;) {
            double t = m(jj, ii);
            for (std::size_t k = ii + 1; k < n; ++k) t -= u(jj, k) * u(ii, k);
            u(jj, ii) = t / u(ii, ii);
        }
    }
    return u;
}

}  // namespace geotherm::num
