#pragma once

#include <stdexcept>

#include "geotherm/numkit/matrix.hpp"

namespace geotherm::num {

struct NotSymmetric : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotPositiveDefinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Factor a symmetric positive-definite M as M = U * U^T with U upper
/// triangular and positive diagonal. Elimination runs from the bottom-right
/// corner, the mirror image of the textbook lower-triangular factorization.
Matrix reverse_cholesky(const Matrix& m, double sym_tol = 1e-10);

}  // namespace geotherm::num
