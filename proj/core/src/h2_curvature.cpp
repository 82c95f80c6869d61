#include "geotherm/thermo/h2_curvature.hpp"

#include <cmath>

namespace geotherm::thermo {

namespace {

double pw(double x, int n) { return std::pow(x, n); }

}  // namespace

std::array<double, 4> h2_curvature_components(double delta, double mu) {
    if (!(mu > 0.0) || !(mu < delta))
        throw OutsideCone("h2_curvature_components: need 0 < mu < delta");
    const double d = delta, m = mu;
    const double r = std::sqrt(d * d - m * m);
    const double d2 = d * d, m2 = m * m;

    const double nf =
        -(pw(d, 4) - 2 * d2 * m2 - 4 * d2 + pw(m, 4) + 4 * m2) *
        (pw(d, 8) - 4 * pw(d, 6) * m2 + 71 * pw(d, 6) + 6 * pw(d, 4) * pw(m, 4) -
         213 * pw(d, 4) * m2 + 384 * pw(d, 4) - 4 * d2 * pw(m, 6) + 213 * d2 * pw(m, 4) -
         768 * d2 * m2 - 426 * d2 * m2 * r + 426 * d2 * r - 426 * m2 * r + 104 * r -
         13 * pw(m, 6) * r + 39 * d2 * pw(m, 4) * r + 213 * pw(m, 4) * r + 284 * d2 +
         13 * pw(d, 6) * r - 39 * pw(d, 4) * m2 * r + 213 * pw(d, 4) * r + pw(m, 8) -
         71 * pw(m, 6) + 384 * pw(m, 4) - 284 * m2 + 16);
    const double df = 4 * (r + 1) * pw(r + 2, 3) * pw(r + d2 - m2, 2) *
                      (r - d2 + m2 + 2) * (3 * r + d2 - m2 + 2);

    const double ng =
        (d2 - m2) * std::pow((-d2 + m2 + 4) / (r - d2 + m2 + 2), 1.5) *
        (pw(d, 6) - 3 * pw(d, 4) * m2 + 26 * pw(d, 4) + 3 * d2 * pw(m, 4) -
         52 * d2 * m2 - 16 * d2 * m2 * r + 44 * d2 * r - 44 * m2 * r + 20 * r +
         8 * pw(m, 4) * r + 41 * d2 + 8 * pw(d, 4) * r - pw(m, 6) + 26 * pw(m, 4) -
         41 * m2 + 4);
    const double dg = 2 * (r + 1) * std::pow(r + 2, 2.5) * pw(r + d2 - m2, 2) *
                      (3 * r + d2 - m2 + 2);

    const double nq =
        pw(d2 - m2 - 4, 4) *
        (pw(d, 6) - 3 * pw(d, 4) * m2 + 25 * pw(d, 4) + 3 * d2 * pw(m, 4) -
         50 * d2 * m2 - 16 * d2 * m2 * r + 38 * d2 * r - 38 * m2 * r + 8 * r +
         8 * pw(m, 4) * r + 28 * d2 + 8 * pw(d, 4) * r - pw(m, 6) + 25 * pw(m, 4) -
         28 * m2);
    const double dq = 4 * pw(r + 2, 6) * pw(r - d2 + m2 + 2, 4);

    const double np =
        pw(d2 - m2 - 4, 2) * (d2 - m2) *
        (14 * pw(d, 10) - 70 * pw(d, 8) * m2 + 340 * pw(d, 8) +
         140 * pw(d, 6) * pw(m, 4) - 1360 * pw(d, 6) * m2 + 1562 * pw(d, 6) -
         140 * pw(d, 4) * pw(m, 6) + 2040 * pw(d, 4) * pw(m, 4) -
         4686 * pw(d, 4) * m2 + 1864 * pw(d, 4) + 70 * d2 * pw(m, 8) -
         1360 * d2 * pw(m, 6) + 4686 * d2 * pw(m, 4) - 3728 * d2 * m2 -
         4030 * d2 * m2 * r + 1210 * d2 * r - 1210 * m2 * r + 136 * r -
         pw(m, 10) * r + 5 * d2 * pw(m, 8) * r + 89 * pw(m, 8) * r -
         356 * d2 * pw(m, 6) * r - 869 * pw(m, 6) * r + 2607 * d2 * pw(m, 4) * r +
         2015 * pw(m, 4) * r + 524 * d2 + pw(d, 10) * r - 5 * pw(d, 8) * m2 * r +
         89 * pw(d, 8) * r - 356 * pw(d, 6) * m2 * r + 869 * pw(d, 6) * r +
         10 * pw(d, 6) * pw(m, 4) * r - 2607 * pw(d, 4) * m2 * r +
         2015 * pw(d, 4) * r - 10 * pw(d, 4) * pw(m, 6) * r +
         534 * pw(d, 4) * pw(m, 4) * r - 14 * pw(m, 10) + 340 * pw(m, 8) -
         1562 * pw(m, 6) + 1864 * pw(m, 4) - 524 * m2 + 16);
    const double dp = 4 * pw(r + 1, 2) * pw(r + 2, 3) * pw(r + d2 - m2, 2) *
                      pw(r - d2 + m2 + 2, 2) * pw(3 * r + d2 - m2 + 2, 2);

    return {nf / df, ng / dg, nq / dq, np / dp};
}

std::array<double, 4> h2_curvature_components_fd(double delta, double mu, double theta) {
    const Vec b = {delta, mu * std::cos(theta), mu * std::sin(theta)};
    Matrix eta(3, 3);
    eta(0, 0) = eta(1, 1) = eta(2, 2) = -1.0;
    const FrameCurvature fc =
        frame_curvature(metric_field(h2_thermo_metric, h2_thermo_metric_c),
                        h2_thermo_dreibein, eta, b);
    return {fc.component(0, 1, 0, 1), fc.component(0, 1, 1, 2), fc.component(0, 2, 0, 2),
            fc.component(1, 2, 1, 2)};
}

}  // namespace geotherm::thermo
