#include "geotherm/numkit/bessel.hpp"

#include <cmath>

namespace geotherm::num {

namespace {

// Chebyshev fit of K0(x) e^x sqrt(x) on x in [2, inf), variable t = 4/x - 1.
constexpr double kK0Cheb[] = {
    2.440303082065955454677e+00, -3.144810131196450054272e-02,
    1.569883885730053374913e-03, -1.284954958162780263836e-04,
    1.394981371887649936408e-05, -1.831755522719119484778e-06,
    2.766813639445015076140e-07, -4.660489897687947665560e-08,
    8.574034017414226085814e-09, -1.697534509389061515624e-09,
    3.577397281400328446700e-10, -7.957489244477397026596e-11,
    1.855949114954926528024e-11, -4.514597883374518518937e-12,
    1.140340588207342626763e-12, -2.980096923148138683693e-13,
    8.032890775067388830607e-14, -2.227513326743830514483e-14,
    6.340076476214494772742e-15, -1.848593377763063174429e-15,
    5.512055995364053262758e-16, -1.678231115328942244835e-16,
    5.210391506334064755625e-17, -1.647579881804586674583e-17,
    5.300414907371605545144e-18, -1.733120765470374512736e-18,
    5.753747571637798557385e-19, -1.935382143724244072227e-19,
    6.522263887969885734651e-20, -2.008026305548139617339e-20};

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

double cheb_clenshaw(double t, const double* c, int n) {
    double b0 = 0.0, b1 = 0.0;
    for (int k = n - 1; k >= 1; --k) {
        const double tmp = 2.0 * t * b0 - b1 + c[k];
        b1 = b0;
        b0 = tmp;
    }
    return t * b0 - b1 + 0.5 * c[0];
}

}  // namespace

double bessel_i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 64; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

double bessel_k0(double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k0: argument must be positive");
    if (x <= 2.0) {
        // K0 = -(log(x/2) + gamma) I0(x) + sum_{k>=1} (x^2/4)^k / (k!)^2 * H_k
        const double q = 0.25 * x * x;
        double term = 1.0, sum = 0.0, hk = 0.0;
        for (int k = 1; k < 64; ++k) {
            term *= q / (static_cast<double>(k) * k);
            hk += 1.0 / k;
            const double add = term * hk;
            sum += add;
            if (add < 1e-18 * (sum + 1.0)) break;
        }
        return -(std::log(0.5 * x) + kEulerGamma) * bessel_i0_series(x) + sum;
    }
    const double t = 4.0 / x - 1.0;
    const double s = cheb_clenshaw(t, kK0Cheb, sizeof(kK0Cheb) / sizeof(double));
    return s * std::exp(-x) / std::sqrt(x);
}

}  // namespace geotherm::num
