#pragma once

#include <array>

#include "geotherm/thermo/curvature.hpp"
#include "geotherm/thermo/stochastic.hpp"

namespace geotherm::thermo {

/// Frame curvature components of the hyperbolic-plane temperature space in
/// the polar parameterization (delta, mu): the rational-surd closed forms.
/// Requires 0 < mu < delta.
std::array<double, 4> h2_curvature_components(double delta, double mu);

/// The same four components read off the finite-difference frame curvature of
/// the closed thermo metric at angle theta:
///   F = R^{12}_{12}, G = R^{12}_{23}, Q = R^{13}_{13}, P = R^{23}_{23}.
std::array<double, 4> h2_curvature_components_fd(double delta, double mu, double theta);

}  // namespace geotherm::thermo
