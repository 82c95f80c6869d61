#include "geotherm/thermo/classical.hpp"

#include <cmath>

#include "geotherm/numkit/fd.hpp"

namespace geotherm::thermo {

double lagrangian_constraint(const EquilibriumSurface& s, double t, double v) {
    auto a_of_t = [&](const Vec& x) { return s.thermic(x[0], v); };
    auto b_of_v = [&](const Vec& x) { return s.caloric(t, x[0]); };
    const double da_dt = num::fd_derivative(a_of_t, {t}, 0);
    const double db_dv = num::fd_derivative(b_of_v, {v}, 0);
    return t * da_dt - s.thermic(t, v) - db_dv;
}

EquilibriumSurface ideal_gas_surface(double kb, double n_particles) {
    EquilibriumSurface s;
    s.thermic = [kb, n_particles](double t, double v) { return kb * n_particles * t / v; };
    s.caloric = [kb](double t, double) { return 1.5 * kb * t; };
    return s;
}

EquilibriumSurface vdw_surface(double a, double b, double n, double r) {
    EquilibriumSurface s;
    s.thermic = [a, b, n, r](double t, double v) {
        return (a * b * n * n * n - a * n * n * v + n * r * t * v * v) /
               (v * v * (v - b * n));
    };
    s.caloric = [a, n, r](double t, double v) { return 1.5 * n * r * t - a * n * n / v; };
    return s;
}

Matrix ideal_gas_metric(double kb, double n_particles, double t, double v) {
    Matrix g(2, 2);
    g(0, 0) = -1.5 * kb / (t * t);
    g(1, 1) = -kb * n_particles / (v * v);
    return g;
}

Matrix vdw_metric(double t, double v, double a, double b, double n, double r) {
    if (!(v > b * n) || !(t > 0.0)) throw OutsideDomain("vdw_metric: need V > b n, T > 0");
    Matrix g(2, 2);
    g(0, 0) = -1.5 * n * r / (t * t);
    const double w = v - b * n;
    g(1, 1) = -n * (r * t * v * v * v - 2.0 * a * n * w * w) / (t * v * v * v * w * w);
    return g;
}

Matrix vdw_zweibein(double t, double v, double a, double b, double n, double r) {
    const Matrix g = vdw_metric(t, v, a, b, n, r);
    Matrix e(2, 2);
    e(0, 0) = std::sqrt(-g(0, 0));
    e(1, 1) = std::sqrt(-g(1, 1));
    return e;
}

VdwCritical vdw_critical(double a, double b, double n, double r) {
    return {3.0 * b * n, 8.0 * a / (27.0 * b * r), a / (27.0 * b * b)};
}

double vdw_singular_denominator(double tr, double vr) {
    return -4.0 * tr * vr * vr * vr + 9.0 * vr * vr - 6.0 * vr + 1.0;
}

double vdw_dimensionless_curvature(double tr, double vr) {
    const double den = vdw_singular_denominator(tr, vr);
    const double one_minus = 1.0 - 3.0 * vr;
    return -(one_minus * one_minus *
             (8.0 * tr * vr * vr * vr - 9.0 * vr * vr + 6.0 * vr - 1.0)) /
           (den * den);
}

VdwThermo vdw_thermo(double t, double v, double a, double b, double n, double r) {
    VdwThermo out;
    out.metric = vdw_metric(t, v, a, b, n, r);
    const double w = v - b * n;
    const double q = r * t * v * v * v - 2.0 * a * n * w * w;
    out.closed_curvature =
        2.0 * a * w * w * (a * n * w * w - r * t * v * v * v) / (3.0 * r * q * q);

    auto metric_real = [a, b, n, r](const Vec& x) {
        return vdw_metric(x[0], x[1], a, b, n, r);
    };
    auto metric_cplx = [a, b, n, r](const std::vector<std::complex<double>>& x) {
        using C = std::complex<double>;
        const C tt = x[0], vv = x[1];
        num::MatrixC g(2, 2);
        g(0, 0) = C(-1.5 * n * r) / (tt * tt);
        const C ww = vv - C(b * n);
        g(1, 1) = C(-n) * (C(r) * tt * vv * vv * vv - C(2.0 * a * n) * ww * ww) /
                  (tt * vv * vv * vv * ww * ww);
        return g;
    };
    Matrix eta(2, 2);
    eta(0, 0) = eta(1, 1) = -1.0;
    const FrameCurvature fc = frame_curvature(
        metric_field(metric_real, metric_cplx),
        [a, b, n, r](const Vec& x) { return vdw_zweibein(x[0], x[1], a, b, n, r); }, eta,
        {t, v});
    out.frame_curvature = fc.component(0, 1, 0, 1);

    const VdwCritical crit = vdw_critical(a, b, n, r);
    out.dimensionless_curvature = vdw_dimensionless_curvature(t / crit.t_c, v / crit.v_c);
    return out;
}

}  // namespace geotherm::thermo
