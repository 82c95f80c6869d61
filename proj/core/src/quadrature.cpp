#include "geotherm/numkit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace geotherm::num {

namespace {

// Gauss-Kronrod 7-15 nodes and weights (positive half).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Segment {
    double a, b, integral, error;
};

void gk15(const std::function<double(double)>& f, double a, double b,
          double* integral, double* error, long* evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * kXgk[i];
        double fv;
        if (i == 7) {
            fv = f(c);
            resk += kWgk[7] * fv;
            resg += kWg[3] * fv;
            *evals += 1;
        } else {
            const double f1 = f(c - dx);
            const double f2 = f(c + dx);
            resk += kWgk[i] * (f1 + f2);
            if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
            *evals += 2;
        }
    }
    *integral = resk * h;
    const double diff = std::abs(resk - resg) * std::abs(h);
    *error = diff == 0.0 ? 0.0 : diff * std::min(1.0, std::pow(200.0 * diff / std::max(std::abs(*integral), 1e-300), 0.5));
    *error = std::max(*error, std::abs(*integral) * 1e-15);
}

QuadratureResult adapt_finite(const std::function<double(double)>& f, double a,
                              double b, double tol, int max_intervals) {
    QuadratureResult res;
    std::vector<Segment> segs;
    Segment s{a, b, 0, 0};
    gk15(f, a, b, &s.integral, &s.error, &res.evaluations);
    segs.push_back(s);
    while (static_cast<int>(segs.size()) < max_intervals) {
        double total = 0, err = 0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].integral;
            err += segs[i].error;
            if (segs[i].error > segs[worst].error) worst = i;
        }
        if (err <= tol * std::max(1.0, std::abs(total)) || segs[worst].error == 0.0) {
            res.value = total;
            res.error_estimate = err;
            return res;
        }
        Segment old = segs[worst];
        const double mid = 0.5 * (old.a + old.b);
        Segment left{old.a, mid, 0, 0}, right{mid, old.b, 0, 0};
        gk15(f, left.a, left.b, &left.integral, &left.error, &res.evaluations);
        gk15(f, right.a, right.b, &right.integral, &right.error, &res.evaluations);
        segs[worst] = left;
        segs.push_back(right);
    }
    double total = 0, err = 0;
    for (const auto& g : segs) {
        total += g.integral;
        err += g.error;
    }
    if (err > 1e-3 * std::max(1.0, std::abs(total)))
        throw NoConvergence("integrate_adaptive: interval budget exhausted");
    res.value = total;
    res.error_estimate = err;
    return res;
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double tol, int max_intervals) {
    const bool inf_a = std::isinf(a);
    const bool inf_b = std::isinf(b);
    if (!inf_a && !inf_b) return adapt_finite(f, a, b, tol, max_intervals);

    if (inf_a && inf_b) {
        // x = t/(1-t^2), dx = (1+t^2)/(1-t^2)^2 dt, t in (-1,1)
        auto g = [&f](double t) {
            const double u = 1.0 - t * t;
            const double x = t / u;
            if (std::abs(x) > 1e300) return 0.0;
            return f(x) * (1.0 + t * t) / (u * u);
        };
        return adapt_finite(g, -1.0, 1.0, tol, max_intervals);
    }
    if (!inf_a && inf_b) {
        // x = a + t/(1-t), dx = dt/(1-t)^2, t in (0,1)
        auto g = [&f, a](double t) {
            const double u = 1.0 - t;
            const double x = a + t / u;
            if (x > 1e300) return 0.0;
            return f(x) / (u * u);
        };
        return adapt_finite(g, 0.0, 1.0, tol, max_intervals);
    }
    // (-inf, b]: mirror
    auto g = [&f, b](double x) { return f(b - x); };
    return integrate_adaptive(g, 0.0, std::numeric_limits<double>::infinity(), tol,
                              max_intervals);
}

QuadratureResult integrate_adaptive_2d(const std::function<double(double, double)>& f,
                                       double ax, double bx, double ay, double by,
                                       double tol, int max_intervals) {
    QuadratureResult res;
    long inner_evals = 0;
    double inner_err = 0.0;
    auto outer = [&](double x) {
        auto inner = [&f, x](double y) { return f(x, y); };
        QuadratureResult r = integrate_adaptive(inner, ay, by, tol * 0.1, max_intervals);
        inner_evals += r.evaluations;
        inner_err = std::max(inner_err, r.error_estimate);
        return r.value;
    };
    QuadratureResult r = integrate_adaptive(outer, ax, bx, tol, max_intervals);
    res.value = r.value;
    res.error_estimate = r.error_estimate + inner_err;
    res.evaluations = inner_evals;
    return res;
}

}  // namespace geotherm::num
