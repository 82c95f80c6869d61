#pragma once

#include <functional>

#include "geotherm/numkit/matrix.hpp"

namespace geotherm::num {

/// Step for first derivatives, scaled with the coordinate magnitude.
inline double fd_step(double coord) { return 1e-4 * std::max(1.0, std::abs(coord)); }
/// Step for second derivatives / Hessians.
inline double fd_step2(double coord) { return 5e-4 * std::max(1.0, std::abs(coord)); }

/// 4th-order central difference of f along the given coordinate direction.
double fd_derivative(const std::function<double(const Vec&)>& f, const Vec& point,
                     std::size_t direction, double step = 0.0);

/// Directional derivative d/dt f(point + t*dir) at t=0, 4th-order central.
double fd_directional(const std::function<double(const Vec&)>& f, const Vec& point,
                      const Vec& dir, double step = 1e-4);

Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& point);

/// Jacobian of a vector-valued map, J(i,j) = d f_i / d x_j.
Matrix fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& point,
                   double step = 0.0);

/// Symmetric 4th-order Hessian (gradient-of-gradient with central stencils).
Matrix fd_hessian(const std::function<double(const Vec&)>& f, const Vec& point);

/// Exterior derivative of a one-form field omega_alpha(x), returned as the
/// antisymmetric evaluation matrix (d omega)(e_a, e_b) = d_a omega_b - d_b omega_a.
Matrix fd_exterior_derivative(const std::function<Vec(const Vec&)>& one_form,
                              const Vec& point);

/// Exterior derivative of a two-form given by its evaluation matrix field
/// w(x)(e_a,e_b); returns max |d_a w_bc + d_b w_ca + d_c w_ab| over index triples.
double fd_exterior_derivative_2form(const std::function<Matrix(const Vec&)>& two_form,
                                    const Vec& point);

}  // namespace geotherm::num
