#pragma once

#include <functional>

#include "geotherm/geometry/coset.hpp"
#include "geotherm/models/model_spec.hpp"

namespace geotherm::moment {

using models::ModelSpec;
using num::Matrix;
using num::Vec;

/// Moment map of the full-basis generator J_Lambda at y:
///   P_Lambda(y) = 1/2 Tr(X_c L^{-1} J_Lambda L).
double moment_map(const ModelSpec& spec, std::size_t lambda, const Vec& y);

/// All full-basis moment maps at once (shares the L / L^{-1} factorization).
Vec moment_vector(const ModelSpec& spec, const Vec& y);

/// || s K(k_Lambda, .) - dP_Lambda ||_inf with the global scale s = 1/2
/// relating the Kahler evaluation matrix to the moment differentials.
/// flip_center negates the center generator inside P (negative control).
double hamiltonian_residual(const ModelSpec& spec, std::size_t lambda, const Vec& y,
                            bool flip_center = false);

/// Global scale in the hamiltonian identity (fixed on H2, applied uniformly).
inline constexpr double kMomentScale = 0.5;

/// Poisson brackets of the moment maps against the full structure constants:
/// max over pairs of |{P_A,P_B} - f_AB^C P_C| at y, with the bracket taken
/// through the inverse Kahler form, {f,g} = -grad f . (K/2)^{-1} grad g.
double moment_poisson_residual(const ModelSpec& spec, const Vec& y);

/// Poisson bracket of two scalar functions through the Kahler structure.
double kahler_poisson_bracket(const ModelSpec& spec,
                              const std::function<double(const Vec&)>& f,
                              const std::function<double(const Vec&)>& g, const Vec& y);

}  // namespace geotherm::moment
