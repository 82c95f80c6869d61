#pragma once

#include <functional>
#include <stdexcept>

namespace geotherm::num {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One-dimensional adaptive Gauss-Kronrod (7-15) quadrature.
///
/// Unbounded endpoints are accepted: pass -inf/+inf and the integral is mapped
/// to a finite interval with the rational substitution x = t/(1-t^2) (whole
/// line) or x = a + t/(1-t) (half line). Subdivision stops when the local
/// Kronrod error estimate is below tol (absolute + relative mix) or the
/// interval budget is exhausted, in which case NoConvergence is thrown.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double tol = 1e-10,
                                    int max_intervals = 4000);

/// Iterated 2D integral over [ax,bx] x [ay,by] (endpoints may be infinite).
/// The inner integral runs at a tighter tolerance than the outer one.
QuadratureResult integrate_adaptive_2d(const std::function<double(double, double)>& f,
                                       double ax, double bx, double ay, double by,
                                       double tol = 1e-9, int max_intervals = 2000);

}  // namespace geotherm::num
