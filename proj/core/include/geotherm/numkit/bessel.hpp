#pragma once

#include <stdexcept>

namespace geotherm::num {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Modified Bessel function K0(x), x > 0.
/// Power series against I0 below x = 2, Chebyshev fit of e^x sqrt(x) K0(x)
/// above. Relative accuracy is a few ulps across the whole range.
double bessel_k0(double x);

/// I0(x) by its power series (used by the small-x branch of K0 and exposed
/// for tests).
double bessel_i0_series(double x);

}  // namespace geotherm::num
