#include "geotherm/thermo/curvature.hpp"

#include <cmath>

namespace geotherm::thermo {

namespace {

using C = std::complex<double>;

std::vector<Matrix> metric_partials(const MetricField& g, const Vec& x, double step) {
    const std::size_t d = x.size();
    std::vector<Matrix> dg(d);
    if (g.has_complex()) {
        // complex step: exact first derivatives
        const double h = 1e-100;
        for (std::size_t a = 0; a < d; ++a) {
            std::vector<C> z(x.begin(), x.end());
            z[a] += C(0.0, h);
            const MatrixC gz = g.complex(z);
            Matrix out(gz.rows(), gz.cols());
            for (std::size_t i = 0; i < gz.rows(); ++i)
                for (std::size_t j = 0; j < gz.cols(); ++j) out(i, j) = gz(i, j).imag() / h;
            dg[a] = out;
        }
        return dg;
    }
    for (std::size_t a = 0; a < d; ++a) {
        const double h = step > 0 ? step : 1e-5 * std::max(1.0, std::abs(x[a]));
        Vec p = x;
        auto eval = [&](double off) {
            p[a] = x[a] + off;
            return g.real(p);
        };
        dg[a] = (8.0 * (eval(h) - eval(-h)) - (eval(2 * h) - eval(-2 * h))) *
                (1.0 / (12.0 * h));
    }
    return dg;
}

}  // namespace

MetricField metric_field(std::function<Matrix(const Vec&)> real) {
    MetricField f;
    f.real = std::move(real);
    return f;
}

MetricField metric_field(std::function<Matrix(const Vec&)> real,
                         std::function<MatrixC(const std::vector<C>&)> cplx) {
    MetricField f;
    f.real = std::move(real);
    f.complex = std::move(cplx);
    return f;
}

std::vector<Matrix> christoffel(const MetricField& g, const Vec& x, double step) {
    const std::size_t d = x.size();
    const Matrix gm = g.real(x);
    Matrix gi;
    try {
        gi = num::inverse(gm);
    } catch (const std::runtime_error&) {
        throw SingularMetric("christoffel: metric not invertible at the point");
    }
    const std::vector<Matrix> dg = metric_partials(g, x, step);
    std::vector<Matrix> gamma(d, Matrix(d, d));
    for (std::size_t al = 0; al < d; ++al)
        for (std::size_t be = 0; be < d; ++be)
            for (std::size_t ga = 0; ga < d; ++ga) {
                double s = 0.0;
                for (std::size_t m = 0; m < d; ++m)
                    s += gi(al, m) * (dg[be](ga, m) + dg[ga](be, m) - dg[m](be, ga));
                gamma[al](be, ga) = 0.5 * s;
            }
    return gamma;
}

CurvatureResult curvature_from_metric(const MetricField& g, const Vec& x, double step) {
    const std::size_t d = x.size();
    // derivative of Christoffels: 4th-order central FD of the (possibly
    // complex-step-backed) Christoffel field
    std::vector<std::vector<Matrix>> dgamma(d);
    for (std::size_t a = 0; a < d; ++a) {
        const double h = step > 0 ? step
                                  : (g.has_complex() ? 3e-3 : 1e-3) *
                                        std::max(1.0, std::abs(x[a]));
        Vec p = x;
        auto eval = [&](double off) {
            p[a] = x[a] + off;
            return christoffel(g, p);
        };
        const auto gp = eval(h), gm = eval(-h), gp2 = eval(2 * h), gm2 = eval(-2 * h);
        dgamma[a].resize(d);
        for (std::size_t m = 0; m < d; ++m)
            dgamma[a][m] = (8.0 * (gp[m] - gm[m]) - (gp2[m] - gm2[m])) * (1.0 / (12.0 * h));
    }
    const auto gamma = christoffel(g, x);
    CurvatureResult res;
    res.riemann_up.assign(d, std::vector<Matrix>(d, Matrix(d, d)));
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n)
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) {
                    double s = dgamma[a][m](n, b) - dgamma[b][m](n, a);
                    for (std::size_t q = 0; q < d; ++q)
                        s += gamma[m](q, a) * gamma[q](n, b) -
                             gamma[m](q, b) * gamma[q](n, a);
                    res.riemann_up[m][n](a, b) = s;
                }
    res.ricci = Matrix(d, d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            double s = 0.0;
            for (std::size_t m = 0; m < d; ++m) s += res.riemann_up[m][a](m, b);
            res.ricci(a, b) = s;
        }
    const Matrix gi = num::inverse(g.real(x));
    res.scalar = 0.0;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) res.scalar += gi(a, b) * res.ricci(a, b);
    // symmetry checks: lower the first index
    const Matrix gm = g.real(x);
    double worst = 0.0;
    auto lowered = [&](std::size_t a, std::size_t n, std::size_t c, std::size_t e) {
        double s = 0.0;
        for (std::size_t m = 0; m < d; ++m) s += gm(a, m) * res.riemann_up[m][n](c, e);
        return s;
    };
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t e = 0; e < d; ++e) {
                    worst = std::max(worst, std::abs(lowered(a, b, c, e) + lowered(a, b, e, c)));
                    const double bianchi = lowered(a, b, c, e) + lowered(a, c, e, b) +
                                           lowered(a, e, b, c);
                    worst = std::max(worst, std::abs(bianchi));
                }
    res.symmetry_residual = worst;
    return res;
}

FrameCurvature frame_curvature(const MetricField& g,
                               const std::function<Matrix(const Vec&)>& frame,
                               const Matrix& eta, const Vec& x, double step) {
    const std::size_t d = x.size();
    const CurvatureResult cur = curvature_from_metric(g, x, step);
    const Matrix gm = g.real(x);
    const Matrix einv = num::inverse(frame(x));  // columns are frame vectors
    const Matrix etai = num::inverse(eta);
    // lower first index, project all four, raise the first two with eta
    FrameCurvature out;
    out.n = d;
    out.data.assign(d * d * d * d, 0.0);
    // R_{ance}
    std::vector<double> low(d * d * d * d, 0.0);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t n = 0; n < d; ++n)
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t e = 0; e < d; ++e) {
                    double s = 0.0;
                    for (std::size_t m = 0; m < d; ++m)
                        s += gm(a, m) * cur.riemann_up[m][n](c, e);
                    low[((a * d + n) * d + c) * d + e] = s;
                }
    auto proj = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        double s = 0.0;
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                for (std::size_t c = 0; c < d; ++c)
                    for (std::size_t e = 0; e < d; ++e)
                        s += low[((a * d + b) * d + c) * d + e] * einv(a, i) * einv(b, j) *
                             einv(c, k) * einv(e, l);
        return s;
    };
    std::vector<double> frm(d * d * d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l)
                    frm[((i * d + j) * d + k) * d + l] = proj(i, j, k, l);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l) {
                    double s = 0.0;
                    for (std::size_t m = 0; m < d; ++m)
                        for (std::size_t n = 0; n < d; ++n)
                            s += etai(i, m) * etai(j, n) * frm[((m * d + n) * d + k) * d + l];
                    out.data[((i * d + j) * d + k) * d + l] = s;
                }
    return out;
}

}  // namespace geotherm::thermo
