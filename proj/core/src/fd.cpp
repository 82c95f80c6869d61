#include "geotherm/numkit/fd.hpp"

namespace geotherm::num {

double fd_derivative(const std::function<double(const Vec&)>& f, const Vec& point,
                     std::size_t direction, double step) {
    const double h = step > 0 ? step : fd_step(point[direction]);
    Vec p = point;
    auto eval = [&](double offset) {
        p[direction] = point[direction] + offset;
        return f(p);
    };
    return (8.0 * (eval(h) - eval(-h)) - (eval(2 * h) - eval(-2 * h))) / (12.0 * h);
}

double fd_directional(const std::function<double(const Vec&)>& f, const Vec& point,
                      const Vec& dir, double step) {
    auto eval = [&](double t) {
        Vec p = point;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += t * dir[i];
        return f(p);
    };
    return (8.0 * (eval(step) - eval(-step)) - (eval(2 * step) - eval(-2 * step))) /
           (12.0 * step);
}

Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& point) {
    Vec g(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) g[i] = fd_derivative(f, point, i);
    return g;
}

Matrix fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& point,
                   double step) {
    const Vec f0 = f(point);
    Matrix jac(f0.size(), point.size());
    for (std::size_t j = 0; j < point.size(); ++j) {
        const double h = step > 0 ? step : fd_step(point[j]);
        Vec p = point;
        auto eval = [&](double offset) {
            p[j] = point[j] + offset;
            return f(p);
        };
        const Vec fp = eval(h), fm = eval(-h), fp2 = eval(2 * h), fm2 = eval(-2 * h);
        for (std::size_t i = 0; i < f0.size(); ++i)
            jac(i, j) = (8.0 * (fp[i] - fm[i]) - (fp2[i] - fm2[i])) / (12.0 * h);
    }
    return jac;
}

Matrix fd_hessian(const std::function<double(const Vec&)>& f, const Vec& point) {
    const std::size_t n = point.size();
    Matrix h(n, n);
    auto grad_i = [&](const Vec& p, std::size_t i) {
        const double hi = fd_step2(point[i]);
        Vec q = p;
        auto eval = [&](double offset) {
            q[i] = p[i] + offset;
            return f(q);
        };
        return (8.0 * (eval(hi) - eval(-hi)) - (eval(2 * hi) - eval(-2 * hi))) /
               (12.0 * hi);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double hj = fd_step2(point[j]);
            Vec p = point;
            auto eval = [&](double offset) {
                p[j] = point[j] + offset;
                return grad_i(p, i);
            };
            const double v =
                (8.0 * (eval(hj) - eval(-hj)) - (eval(2 * hj) - eval(-2 * hj))) /
                (12.0 * hj);
            h(i, j) = h(j, i) = v;
        }
    return h;
}

Matrix fd_exterior_derivative(const std::function<Vec(const Vec&)>& one_form,
                              const Vec& point) {
    const Matrix jac = fd_jacobian(one_form, point);  // jac(b,a) = d_a omega_b
    const std::size_t n = point.size();
    Matrix d(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) d(a, b) = jac(b, a) - jac(a, b);
    return d;
}

double fd_exterior_derivative_2form(const std::function<Matrix(const Vec&)>& two_form,
                                    const Vec& point) {
    const std::size_t n = point.size();
    std::vector<Matrix> dw(n);
    for (std::size_t a = 0; a < n; ++a) {
        const double h = fd_step(point[a]);
        Vec p = point;
        auto eval = [&](double offset) {
            p[a] = point[a] + offset;
            return two_form(p);
        };
        const Matrix wp = eval(h), wm = eval(-h), wp2 = eval(2 * h), wm2 = eval(-2 * h);
        dw[a] = (8.0 * (wp - wm) - (wp2 - wm2)) * (1.0 / (12.0 * h));
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c)
                worst = std::max(worst, std::abs(dw[a](b, c) + dw[b](c, a) + dw[c](a, b)));
    return worst;
}

}  // namespace geotherm::num
